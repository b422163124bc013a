#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "esamp/classify.hpp"
#include "esamp/empirical_io.hpp"
#include "esamp/kernel.hpp"
#include "esamp/kernel_io.hpp"
#include "esamp/resample.hpp"
#include "esamp/sequence.hpp"
#include "esamp/verify.hpp"

namespace {

using esamp::DomainStatus;
using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in.good()) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out.good()) throw std::invalid_argument("cannot open output file: " + out_path);
  out << text;
  if (text.empty() || text.back() != '\n') out << "\n";
}

template <typename T>
std::vector<T> parse_list(const std::string& csv) {
  std::vector<T> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    if constexpr (std::is_same_v<T, double>)
      out.push_back(std::stod(tok));
    else
      out.push_back(static_cast<T>(std::stoll(tok)));
  }
  return out;
}

struct SequenceInput {
  std::string named;
  std::string file;
  std::string kind = "real";
  int alphabet = 2;
  std::string gen;  // path to a generator spec JSON
  size_t n = 100000;

  esamp::SequencePrefix load() const {
    int sources = (!named.empty()) + (!file.empty()) + (!gen.empty());
    if (sources != 1)
      throw std::invalid_argument(
          "exactly one of --named, --file, --gen must be given");
    if (!named.empty()) return esamp::named_sequence(named, n);
    if (!gen.empty()) return esamp::generate_from_json(json::parse(slurp(gen)));
    if (file == "-") {
      return esamp::load_csv(std::cin, esamp::parse_kind(kind), alphabet);
    }
    return esamp::load_csv_file(file, esamp::parse_kind(kind), alphabet);
  }
};

void add_sequence_options(CLI::App* cmd, SequenceInput& in) {
  cmd->add_option("--named", in.named,
                  "built-in sequence: osc_log2 | naturals | one_over_i | "
                  "neg_one_over_i | power2_spikes");
  cmd->add_option("--file", in.file, "CSV file of values, one per line ('-' = stdin)");
  cmd->add_option("--kind", in.kind, "value kind for --file: finite | nat | real");
  cmd->add_option("--alphabet", in.alphabet, "alphabet size for --kind finite");
  cmd->add_option("--gen", in.gen,
                  "JSON generator spec file {dist, params, seed, n} ('-' = stdin)");
  cmd->add_option("--n", in.n, "prefix length for --named / default horizon");
}

esamp::HorizonSchedule make_horizon(const esamp::SequencePrefix& x, double epsilon,
                                    const std::string& checkpoints) {
  esamp::HorizonSchedule h = esamp::HorizonSchedule::defaults(x.size());
  if (!checkpoints.empty()) {
    h.checkpoints = parse_list<size_t>(checkpoints);
    if (h.checkpoints.empty())
      throw std::invalid_argument("--checkpoints: no values parsed");
    h.guard = h.checkpoints.front();
  }
  if (epsilon > 0) h.epsilon = epsilon;
  h.validate(x.size());
  return h;
}

esamp::EmpiricalVerdict run_classifier(const esamp::SequencePrefix& x,
                                       const esamp::HorizonSchedule& h,
                                       const std::string& classifier,
                                       const std::vector<double>& grid) {
  if (classifier == "auto") return esamp::classify_auto(x, h);
  if (classifier == "finite") return esamp::classify_finite(x, h);
  if (classifier == "countable") return esamp::classify_countable(x, h);
  if (classifier == "real")
    return esamp::classify_real(x.kind == esamp::ValueKind::Real ? x : x.as_real(),
                                h, grid);
  if (classifier == "real_avg") return esamp::classify_real_avg(x, h);
  throw std::invalid_argument("unknown classifier: " + classifier);
}

std::string verdict_text(const esamp::EmpiricalVerdict& v) {
  std::ostringstream os;
  os << "classifier: " << v.classifier << "\n";
  os << "status:     " << esamp::to_string(v.status) << "\n";
  os << "samples:    " << v.n << " (epsilon " << v.horizon.epsilon << ")\n";
  for (const auto& c : v.criteria) {
    os << "  [" << (c.pass ? "ok" : "!!") << "] " << c.name << " = " << c.value
       << " vs " << c.threshold << (c.gating ? "" : " (informational)") << "\n";
  }
  if (!v.witness.empty()) os << "witness: " << v.witness << "\n";
  return os.str();
}

int status_exit(DomainStatus s) {
  switch (s) {
    case DomainStatus::In: return kExitOk;
    case DomainStatus::Out: return kExitFail;
    default: return kExitInconclusive;
  }
}

esamp::PartialKernel load_kernel(const std::string& path) {
  return esamp::kernel_from_json(json::parse(slurp(path)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "esamp: exact finite stochastic kernels, empirical-sequence "
      "classification, and Monte Carlo verification"};
  app.require_subcommand(1);

  // ---- classify ----
  SequenceInput cls_in;
  std::string cls_classifier = "auto";
  double cls_eps = 0;
  std::string cls_checkpoints, cls_grid, cls_out;
  bool cls_json = false;
  CLI::App* cls = app.add_subcommand(
      "classify", "decide whether a sequence has a stable empirical law");
  add_sequence_options(cls, cls_in);
  cls->add_option("--classifier", cls_classifier,
                  "auto | finite | countable | real | real_avg");
  cls->add_option("--epsilon", cls_eps, "stability tolerance (default max(0.01, 4/sqrt(n)))");
  cls->add_option("--checkpoints", cls_checkpoints, "comma list, e.g. 12500,25000,50000,100000");
  cls->add_option("--grid", cls_grid, "comma list of CDF report points (real classifier)");
  cls->add_flag("--json", cls_json, "emit the verdict as JSON");
  cls->add_option("--out", cls_out, "write output to this file instead of stdout");

  // ---- measure ----
  SequenceInput mea_in;
  std::string mea_classifier = "auto";
  double mea_eps = 0;
  std::string mea_checkpoints, mea_out;
  bool mea_json = false;
  CLI::App* mea = app.add_subcommand(
      "measure", "classify, then report the empirical measure exactly");
  add_sequence_options(mea, mea_in);
  mea->add_option("--classifier", mea_classifier, "auto | finite | countable | real");
  mea->add_option("--epsilon", mea_eps, "stability tolerance");
  mea->add_option("--checkpoints", mea_checkpoints, "comma list of checkpoints");
  mea->add_flag("--json", mea_json, "emit the measure as JSON");
  mea->add_option("--out", mea_out, "write output to this file instead of stdout");

  // ---- resample ----
  std::string rs_prefix, rs_counts, rs_mode = "truncated", rs_out;
  int rs_m = 2, rs_alphabet = 0;
  bool rs_tv = false, rs_json = false;
  CLI::App* rs = app.add_subcommand(
      "resample", "exact finite resampling of a sample prefix");
  rs->add_option("--prefix", rs_prefix, "comma list of symbols, e.g. 0,1,1,0");
  rs->add_option("--counts", rs_counts, "symbol counts, e.g. 3,2 (alternative to --prefix)");
  rs->add_option("--alphabet", rs_alphabet, "alphabet size (default: inferred)");
  rs->add_option("--m", rs_m, "output word length")->required();
  rs->add_option("--mode", rs_mode, "truncated | independent");
  rs->add_flag("--tv", rs_tv, "also report the exact TV gap between the two modes");
  rs->add_flag("--json", rs_json, "emit the cylinder state as JSON");
  rs->add_option("--out", rs_out, "write output to this file instead of stdout");

  // ---- kernel ----
  CLI::App* ker = app.add_subcommand("kernel", "exact partial-kernel algebra");
  ker->require_subcommand(1);
  std::string kc_lhs, kc_rhs, kc_out;
  CLI::App* kcomp = ker->add_subcommand("compose", "sequential composite (lhs then rhs)");
  kcomp->add_option("--lhs", kc_lhs, "kernel JSON file ('-' = stdin)")->required();
  kcomp->add_option("--rhs", kc_rhs, "kernel JSON file")->required();
  kcomp->add_option("--out", kc_out, "write output to this file instead of stdout");
  std::string kt_lhs, kt_rhs, kt_out;
  CLI::App* ktens = ker->add_subcommand("tensor", "parallel composite");
  ktens->add_option("--lhs", kt_lhs, "kernel JSON file ('-' = stdin)")->required();
  ktens->add_option("--rhs", kt_rhs, "kernel JSON file")->required();
  ktens->add_option("--out", kt_out, "write output to this file instead of stdout");
  size_t kl_instances = 1000;
  uint64_t kl_seed = 2026;
  bool kl_json = false;
  std::string kl_out;
  CLI::App* klaws = ker->add_subcommand("laws", "randomized category-law check");
  klaws->add_option("--instances", kl_instances, "random instances (default 1000)");
  klaws->add_option("--seed", kl_seed, "RNG seed");
  klaws->add_flag("--json", kl_json, "emit the report as JSON");
  klaws->add_option("--out", kl_out, "write output to this file instead of stdout");

  // ---- verify ----
  std::string vf_suite;
  esamp::TrialPlan vf_plan;
  size_t vf_instances = 1000;
  bool vf_json = false;
  std::string vf_out;
  CLI::App* vf = app.add_subcommand("verify", "run a Monte Carlo verification suite");
  vf->add_option("suite", vf_suite,
                 "category | cumulants | sequences | gc | slln | adequacy | "
                 "ergodic | concentration | permutation | idempotence | all")
      ->required();
  vf->add_option("--trials", vf_plan.trials, "Monte Carlo trials per case");
  vf->add_option("--seed", vf_plan.seed, "base RNG seed");
  vf->add_option("--slack", vf_plan.slack, "tolerance in standard errors");
  vf->add_option("--instances", vf_instances, "instances for the category suite");
  vf->add_flag("--json", vf_json, "emit reports as JSON");
  vf->add_option("--out", vf_out, "write output to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cls->parsed()) {
      esamp::SequencePrefix x = cls_in.load();
      esamp::HorizonSchedule h = make_horizon(x, cls_eps, cls_checkpoints);
      std::vector<double> grid =
          cls_grid.empty() ? std::vector<double>{} : parse_list<double>(cls_grid);
      esamp::EmpiricalVerdict v = run_classifier(x, h, cls_classifier, grid);
      emit(cls_json ? esamp::verdict_to_json(v).dump(2) : verdict_text(v), cls_out);
      return status_exit(v.status);
    }

    if (mea->parsed()) {
      esamp::SequencePrefix x = mea_in.load();
      esamp::HorizonSchedule h = make_horizon(x, mea_eps, mea_checkpoints);
      esamp::EmpiricalVerdict v = run_classifier(x, h, mea_classifier, {});
      if (v.status != DomainStatus::In) {
        std::cerr << "not in the classifier domain (status "
                  << esamp::to_string(v.status) << ")";
        if (!v.witness.empty()) std::cerr << ": " << v.witness;
        std::cerr << "\n";
        return status_exit(v.status);
      }
      esamp::EmpiricalMeasure m = esamp::empirical_measure(x, v);
      if (mea_json) {
        emit(esamp::measure_to_json(m).dump(2), mea_out);
      } else {
        std::ostringstream os;
        os << "empirical measure at n=" << m.n << " (exact)\n";
        ordered_json j = esamp::measure_to_json(m);
        os << j.dump(2) << "\n";
        emit(os.str(), mea_out);
      }
      return kExitOk;
    }

    if (rs->parsed()) {
      std::vector<int> prefix;
      if (!rs_prefix.empty() && !rs_counts.empty())
        throw std::invalid_argument("give --prefix or --counts, not both");
      if (!rs_prefix.empty()) {
        prefix = parse_list<int>(rs_prefix);
      } else if (!rs_counts.empty()) {
        std::vector<int> counts = parse_list<int>(rs_counts);
        for (size_t a = 0; a < counts.size(); ++a)
          for (int i = 0; i < counts[a]; ++i) prefix.push_back(static_cast<int>(a));
        if (rs_alphabet == 0) rs_alphabet = static_cast<int>(counts.size());
      } else {
        throw std::invalid_argument("one of --prefix or --counts is required");
      }
      if (prefix.empty()) throw std::invalid_argument("empty sample");
      if (rs_alphabet == 0)
        rs_alphabet = *std::max_element(prefix.begin(), prefix.end()) + 1;
      esamp::FiniteSpace A("A", rs_alphabet);
      int n = static_cast<int>(prefix.size());
      esamp::CylinderState trunc = esamp::resample_truncated(prefix, A, rs_m, n);
      esamp::CylinderState indep = esamp::resample_independent(prefix, A, rs_m, n);
      const esamp::CylinderState& chosen =
          (rs_mode == "independent") ? indep : trunc;
      if (rs_mode != "truncated" && rs_mode != "independent")
        throw std::invalid_argument("unknown mode: " + rs_mode);
      ordered_json j = esamp::cylinder_to_json(chosen);
      if (rs_tv) j["tv_gap"] = esamp::to_string(esamp::total_variation(trunc, indep));
      if (rs_json) {
        emit(j.dump(2), rs_out);
      } else {
        std::ostringstream os;
        os << "resample mode=" << rs_mode << " m=" << rs_m << " n=" << n << "\n";
        os << j.dump(2) << "\n";
        emit(os.str(), rs_out);
      }
      return kExitOk;
    }

    if (kcomp->parsed() || ktens->parsed()) {
      bool comp = kcomp->parsed();
      esamp::PartialKernel lhs = load_kernel(comp ? kc_lhs : kt_lhs);
      esamp::PartialKernel rhs = load_kernel(comp ? kc_rhs : kt_rhs);
      esamp::PartialKernel result =
          comp ? esamp::compose(lhs, rhs) : esamp::tensor(lhs, rhs);
      emit(esamp::kernel_to_json(result).dump(2), comp ? kc_out : kt_out);
      return kExitOk;
    }

    if (klaws->parsed()) {
      esamp::VerificationReport rep = esamp::verify_category_laws(kl_instances, kl_seed);
      emit(kl_json ? rep.to_json().dump(2) : rep.to_table(), kl_out);
      return rep.all_pass() ? kExitOk : kExitFail;
    }

    if (vf->parsed()) {
      std::vector<esamp::VerificationReport> reps;
      auto want = [&](const std::string& s) {
        return vf_suite == "all" || vf_suite == s;
      };
      bool known = false;
      if (want("category")) {
        reps.push_back(esamp::verify_category_laws(vf_instances, vf_plan.seed));
        known = true;
      }
      if (want("cumulants")) {
        reps.push_back(esamp::verify_cumulant_oracle());
        known = true;
      }
      if (want("sequences")) {
        reps.push_back(esamp::verify_sequences());
        known = true;
      }
      if (want("gc")) {
        esamp::TrialPlan p = vf_plan;
        if (!vf->count("--trials")) p.trials = 100;
        reps.push_back(esamp::verify_glivenko_cantelli(p));
        known = true;
      }
      if (want("slln")) {
        esamp::TrialPlan p = vf_plan;
        if (!vf->count("--trials")) p.trials = 100;
        reps.push_back(esamp::verify_slln(p));
        known = true;
      }
      if (want("adequacy")) {
        reps.push_back(esamp::verify_empirical_adequacy(vf_plan));
        known = true;
      }
      if (want("ergodic")) {
        esamp::TrialPlan p = vf_plan;
        if (!vf->count("--trials")) p.trials = 10000;
        reps.push_back(esamp::verify_maximal_ergodic(p));
        known = true;
      }
      if (want("concentration")) {
        esamp::TrialPlan p = vf_plan;
        if (!vf->count("--trials")) p.trials = 10000;
        reps.push_back(esamp::verify_concentration(p));
        known = true;
      }
      if (want("permutation")) {
        reps.push_back(esamp::verify_permutation_invariance(0, 9));
        known = true;
      }
      if (want("idempotence")) {
        reps.push_back(esamp::verify_resampling_idempotence());
        known = true;
      }
      if (!known) throw std::invalid_argument("unknown suite: " + vf_suite);

      bool all = true;
      std::ostringstream os;
      if (vf_json) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : reps) {
          arr.push_back(r.to_json());
          all = all && r.all_pass();
        }
        ordered_json top;
        top["schema_version"] = 1;
        top["type"] = "report_bundle";
        top["all_pass"] = all;
        top["reports"] = std::move(arr);
        os << top.dump(2);
      } else {
        for (const auto& r : reps) {
          os << r.to_table() << "\n";
          all = all && r.all_pass();
        }
        os << (all ? "VERIFY: ALL SUITES PASS" : "VERIFY: FAILURES PRESENT") << "\n";
      }
      emit(os.str(), vf_out);
      return all ? kExitOk : kExitFail;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    // Malformed input files are usage errors, not verdicts.
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
