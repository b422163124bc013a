#include "esamp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "esamp/classify.hpp"
#include "esamp/distributions.hpp"
#include "esamp/kernel.hpp"
#include "esamp/resample.hpp"
#include "esamp/rng.hpp"
#include "esamp/sequence.hpp"

namespace esamp {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

BigInt ipow(BigInt base, unsigned e) {
  BigInt r(1);
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct MeanVar {
  double sum = 0, sumsq = 0;
  size_t n = 0;
  void add(double x) {
    sum += x;
    sumsq += x * x;
    ++n;
  }
  double mean() const { return sum / static_cast<double>(n); }
  double stderr_est() const {
    double m = mean();
    double var = std::max(0.0, sumsq / static_cast<double>(n) - m * m);
    return std::sqrt(var / static_cast<double>(n));
  }
};

}  // namespace

void TrialPlan::validate() const {
  if (trials < 100)
    throw std::invalid_argument(
        "trial plan: probabilistic assertions need at least 100 trials");
  if (!(slack > 0)) throw std::invalid_argument("trial plan: slack must be positive");
}

bool VerificationReport::all_pass() const {
  for (const auto& c : cases)
    if (!c.pass) return false;
  return true;
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["type"] = "report";
  j["suite"] = suite;
  j["all_pass"] = all_pass();
  nlohmann::ordered_json cs = nlohmann::ordered_json::array();
  for (const auto& c : cases) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["observed"] = c.observed;
    cj["expected"] = c.expected;
    cj["stderr"] = c.stderr_est;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    cs.push_back(std::move(cj));
  }
  j["cases"] = std::move(cs);
  return j;
}

std::string VerificationReport::to_table() const {
  std::ostringstream os;
  os << "suite: " << suite << "\n";
  for (const auto& c : cases) {
    os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name
       << "  observed=" << fmt(c.observed) << " expected=" << fmt(c.expected);
    if (c.stderr_est > 0) os << " stderr=" << fmt(c.stderr_est);
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  os << (all_pass() ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Exact cumulant machinery

void FiniteLaw::validate() const {
  if (values.empty() || values.size() != probs.size())
    throw std::invalid_argument("law: values/probs must match and be nonempty");
  Rational s(0);
  for (const auto& p : probs) {
    if (p < 0) throw std::invalid_argument("law: negative probability");
    s += p;
  }
  if (s != Rational(1)) throw std::invalid_argument("law: probabilities must sum to 1");
}

FiniteLaw FiniteLaw::bernoulli(const Rational& p) {
  FiniteLaw l;
  l.values = {Rational(0), Rational(1)};
  l.probs = {Rational(1) - p, p};
  l.validate();
  return l;
}

std::vector<Rational> raw_moments(const FiniteLaw& law, int upto) {
  law.validate();
  std::vector<Rational> m;
  for (int j = 1; j <= upto; ++j) {
    Rational s(0);
    for (size_t i = 0; i < law.values.size(); ++i) {
      Rational v(1);
      for (int t = 0; t < j; ++t) v *= law.values[i];
      s += law.probs[i] * v;
    }
    m.push_back(s);
  }
  return m;
}

std::vector<Rational> uniform01_moments(int upto) {
  std::vector<Rational> m;
  for (int j = 1; j <= upto; ++j) m.push_back(Rational(1, j + 1));
  return m;
}

std::vector<Rational> moments_to_cumulants(const std::vector<Rational>& m) {
  std::vector<Rational> k;
  for (size_t j = 1; j <= m.size(); ++j) {
    Rational kj = m[j - 1];
    for (size_t t = 1; t < j; ++t)
      kj -= Rational(binom(static_cast<int>(j) - 1, static_cast<int>(t) - 1)) *
            k[t - 1] * m[j - t - 1];
    k.push_back(kj);
  }
  return k;
}

Rational sixth_moment_cumulant(const std::vector<Rational>& raw, size_t n, size_t m) {
  if (raw.size() < 6) throw std::invalid_argument("need raw moments up to order 6");
  if (!(n >= 1 && m > n)) throw std::invalid_argument("need 1 <= n < m");
  std::vector<Rational> kz = moments_to_cumulants(raw);
  auto factor = [&](unsigned j) {
    BigInt a = ipow(BigInt(static_cast<long long>(m - n)), j) *
               BigInt(static_cast<long long>(n));
    BigInt b = ipow(BigInt(-static_cast<long long>(n)), j) *
               BigInt(static_cast<long long>(m - n));
    return Rational(a + b);
  };
  Rational k2 = factor(2) * kz[1];
  Rational k3 = factor(3) * kz[2];
  Rational k4 = factor(4) * kz[3];
  Rational k6 = factor(6) * kz[5];
  return k6 + Rational(15) * k4 * k2 + Rational(10) * k3 * k3 +
         Rational(15) * k2 * k2 * k2;
}

Rational sixth_moment_bruteforce(const FiniteLaw& law, size_t n, size_t m) {
  law.validate();
  if (!(n >= 1 && m > n)) throw std::invalid_argument("need 1 <= n < m");
  double states = std::pow(static_cast<double>(law.values.size()),
                           static_cast<double>(m));
  if (states > 1e7)
    throw std::invalid_argument("bruteforce: state space too large (support^m > 1e7)");

  struct Rec {
    const FiniteLaw& law;
    size_t n, m;
    Rational acc{0};
    void go(size_t pos, const Rational& s1, const Rational& s2, const Rational& p) {
      if (pos == m) {
        Rational d = Rational(static_cast<long long>(m - n)) * s1 -
                     Rational(static_cast<long long>(n)) * s2;
        Rational d2 = d * d;
        acc += p * d2 * d2 * d2;
        return;
      }
      for (size_t i = 0; i < law.values.size(); ++i) {
        if (law.probs[i] == 0) continue;
        if (pos < n)
          go(pos + 1, s1 + law.values[i], s2, p * law.probs[i]);
        else
          go(pos + 1, s1, s2 + law.values[i], p * law.probs[i]);
      }
    }
  } rec{law, n, m};
  rec.go(0, Rational(0), Rational(0), Rational(1));
  return rec.acc;
}

VerificationReport verify_cumulant_oracle() {
  VerificationReport rep;
  rep.suite = "cumulant_oracle";

  std::vector<std::pair<std::string, FiniteLaw>> laws;
  laws.emplace_back("bernoulli_1/2", FiniteLaw::bernoulli(Rational(1, 2)));
  laws.emplace_back("bernoulli_1/3", FiniteLaw::bernoulli(Rational(1, 3)));
  laws.emplace_back("bernoulli_1/4", FiniteLaw::bernoulli(Rational(1, 4)));
  {
    FiniteLaw l;
    l.values = {Rational(0), Rational(1, 2), Rational(1)};
    l.probs = {Rational(1, 3), Rational(1, 3), Rational(1, 3)};
    laws.emplace_back("threepoint_uniform", l);
  }
  {
    FiniteLaw l;
    l.values = {Rational(0), Rational(1, 2), Rational(1)};
    l.probs = {Rational(1, 2), Rational(1, 4), Rational(1, 4)};
    laws.emplace_back("threepoint_skew", l);
  }
  {
    FiniteLaw l;
    l.values = {Rational(0), Rational(1, 3), Rational(2, 3), Rational(1)};
    l.probs = {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)};
    laws.emplace_back("fourpoint_uniform", l);
  }
  {
    FiniteLaw l;
    l.values = {Rational(-1), Rational(2)};
    l.probs = {Rational(2, 3), Rational(1, 3)};
    laws.emplace_back("twopoint_wide", l);
  }

  const std::vector<std::pair<size_t, size_t>> nm = {{1, 2}, {2, 3}, {3, 5}};
  for (const auto& [lname, law] : laws) {
    for (const auto& [n, m] : nm) {
      Rational bf = sixth_moment_bruteforce(law, n, m);
      Rational cf = sixth_moment_cumulant(raw_moments(law, 6), n, m);
      CaseResult c;
      c.name = lname + "_n" + std::to_string(n) + "_m" + std::to_string(m);
      c.pass = (bf == cf);
      c.observed = to_double(bf);
      c.expected = to_double(cf);
      c.detail = "exact " + to_string(bf) + " vs " + to_string(cf);
      rep.cases.push_back(std::move(c));
    }
  }

  // Pinned closed-form check: the simplest balanced case evaluates to 1/2.
  {
    Rational bf = sixth_moment_bruteforce(FiniteLaw::bernoulli(Rational(1, 2)), 1, 2);
    CaseResult c;
    c.name = "bernoulli_1/2_n1_m2_equals_1/2";
    c.pass = (bf == Rational(1, 2));
    c.observed = to_double(bf);
    c.expected = 0.5;
    c.detail = "exact value " + to_string(bf);
    rep.cases.push_back(std::move(c));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Randomized category-law suite

namespace {

PartialKernel random_kernel(const FiniteSpace& a, const FiniteSpace& b,
                            CounterRng& rng, bool total = false,
                            bool deterministic = false) {
  PartialKernel::Rows rows;
  for (int x = 0; x < a.size(); ++x) {
    if (!total && rng.next_below(4) == 0) continue;
    PartialKernel::Row row(static_cast<size_t>(b.size()), Rational(0));
    if (deterministic) {
      row[rng.next_below(static_cast<uint64_t>(b.size()))] = Rational(1);
    } else {
      long long s = 0;
      std::vector<long long> w(static_cast<size_t>(b.size()));
      for (auto& wi : w) {
        wi = static_cast<long long>(rng.next_below(4));
        s += wi;
      }
      if (s == 0) {
        w[rng.next_below(static_cast<uint64_t>(b.size()))] = 1;
        s = 1;
      }
      for (size_t y = 0; y < w.size(); ++y) row[y] = Rational(w[y], s);
    }
    rows[x] = std::move(row);
  }
  return PartialKernel(a, b, std::move(rows));
}

PartialKernel drop_random_row(const PartialKernel& f, CounterRng& rng) {
  auto rows = f.rows();
  if (!rows.empty()) {
    auto it = rows.begin();
    std::advance(it, static_cast<long>(rng.next_below(rows.size())));
    rows.erase(it);
  }
  return PartialKernel(f.source(), f.target(), std::move(rows));
}

}  // namespace

VerificationReport verify_category_laws(size_t instances, uint64_t seed) {
  VerificationReport rep;
  rep.suite = "category_laws";
  struct Tally {
    std::string name;
    size_t checked = 0;
    size_t failed = 0;
  };
  std::vector<Tally> tallies = {
      {"composition_associative", 0, 0}, {"identity_laws", 0, 0},
      {"tensor_functorial", 0, 0},       {"tensor_of_identities", 0, 0},
      {"swap_natural", 0, 0},            {"comonoid_laws", 0, 0},
      {"domain_idempotents", 0, 0},      {"meet_is_composition", 0, 0},
      {"extension_monotone", 0, 0},      {"copyable_composition", 0, 0},
      {"positivity_instances", 0, 0}};
  auto tally = [&](size_t idx, bool ok) {
    ++tallies[idx].checked;
    if (!ok) ++tallies[idx].failed;
  };

  for (size_t inst = 0; inst < instances; ++inst) {
    CounterRng rng(seed, inst);
    auto sz = [&]() { return static_cast<int>(rng.next_below(4)) + 1; };
    FiniteSpace A("A", sz()), B("B", sz()), C("C", sz()), D("D", sz());
    FiniteSpace E("E", sz()), F("F", sz());
    PartialKernel f = random_kernel(A, B, rng);
    PartialKernel g = random_kernel(B, C, rng);
    PartialKernel h = random_kernel(C, D, rng);
    PartialKernel r = random_kernel(D, E, rng);
    PartialKernel s = random_kernel(E, F, rng);

    tally(0, compose(compose(f, g), h) == compose(f, compose(g, h)));
    tally(1, compose(identity_kernel(A), f) == f &&
                 compose(f, identity_kernel(B)) == f);
    tally(2, compose(tensor(f, r), tensor(g, s)) ==
                 tensor(compose(f, g), compose(r, s)));
    tally(3, tensor(identity_kernel(A), identity_kernel(B)) ==
                 identity_kernel(product(A, B)));
    tally(4, compose(tensor(f, r), swap_kernel(B, E)) ==
                 compose(swap_kernel(A, D), tensor(r, f)));
    {
      PartialKernel cp = copy_kernel(A);
      PartialKernel idA = identity_kernel(A);
      bool coassoc = compose(cp, tensor(cp, idA)) == compose(cp, tensor(idA, cp));
      bool counitL = compose(cp, tensor(delete_kernel(A), idA)) == idA;
      bool counitR = compose(cp, tensor(idA, delete_kernel(A))) == idA;
      bool sym = compose(cp, swap_kernel(A, A)) == cp;
      tally(5, coassoc && counitL && counitR && sym);
    }
    {
      PartialKernel d = domain_of(f).kernel();
      tally(6, compose(d, d) == d && compose(d, f) == f);
    }
    {
      PartialKernel f2 = random_kernel(A, B, rng);
      tally(7, meet_domains(f, f2).kernel() ==
                   compose(domain_of(f).kernel(), domain_of(f2).kernel()));
    }
    {
      PartialKernel fr = drop_random_row(f, rng);
      PartialKernel gr = drop_random_row(g, rng);
      tally(8, extends(f, fr) && extends(compose(f, g), compose(fr, g)) &&
                   extends(compose(f, g), compose(fr, gr)));
    }
    {
      PartialKernel df = random_kernel(A, B, rng, false, true);
      PartialKernel dg = random_kernel(B, C, rng, false, true);
      bool ok = is_copyable(df) && is_copyable(dg) && is_copyable(compose(df, dg));
      if (B.size() >= 2) {
        PartialKernel::Rows rows;
        PartialKernel::Row row(static_cast<size_t>(B.size()), Rational(0));
        row[0] = Rational(1, 2);
        row[1] = Rational(1, 2);
        rows[0] = row;
        ok = ok && !is_copyable(PartialKernel(A, B, std::move(rows)));
      }
      tally(9, ok);
    }
    {
      PartialKernel df = random_kernel(A, B, rng, false, true);
      PartialKernel dg = random_kernel(B, C, rng, false, true);
      tally(10, check_positivity_instance(f, g) &&
                    check_positivity_instance(df, dg));
    }
  }

  for (const auto& t : tallies) {
    CaseResult c;
    c.name = t.name;
    c.pass = (t.failed == 0);
    c.observed = static_cast<double>(t.checked - t.failed);
    c.expected = static_cast<double>(t.checked);
    c.detail = std::to_string(t.checked) + " random instances";
    rep.cases.push_back(std::move(c));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Named-sequence classification suite

VerificationReport verify_sequences() {
  VerificationReport rep;
  rep.suite = "sequences";
  const size_t N = 100000;
  HorizonSchedule h = HorizonSchedule::defaults(N);
  h.epsilon = 0.01;

  auto expect = [&](const std::string& name, const EmpiricalVerdict& v,
                    DomainStatus want, double observed) {
    CaseResult c;
    c.name = name;
    c.pass = (v.status == want);
    c.observed = observed;
    c.expected = h.epsilon;
    c.detail = "status " + to_string(v.status) + ", want " + to_string(want) +
               (v.witness.empty() ? "" : "; " + v.witness);
    rep.cases.push_back(std::move(c));
  };

  {
    SequencePrefix x = named_sequence("osc_log2", N);
    EmpiricalVerdict v = classify_finite(x, h);
    expect("osc_log2_out_of_finite_domain", v, DomainStatus::Out,
           v.find("freq_stability[0]")->value);
    EmpiricalVerdict vr = classify_real(x.as_real(), h);
    expect("osc_log2_out_of_real_domain_too", vr, DomainStatus::Out,
           vr.find("cdf_upward_drift")->value);
  }
  {
    SequencePrefix x = named_sequence("naturals", N);
    EmpiricalVerdict v = classify_countable(x, h);
    expect("naturals_out_of_countable_domain", v, DomainStatus::Out,
           v.find("tightness")->value);
    EmpiricalVerdict vr = classify_real(x.as_real(), h);
    expect("naturals_out_of_real_domain_too", vr, DomainStatus::Out,
           vr.find("escape_mass")->value);
  }
  {
    SequencePrefix x = named_sequence("one_over_i", N);
    EmpiricalVerdict v = classify_real(x, h);
    expect("one_over_i_out_of_real_domain", v, DomainStatus::Out,
           v.find("cdf_upward_drift")->value);
  }
  {
    SequencePrefix x = named_sequence("neg_one_over_i", N);
    EmpiricalVerdict v = classify_real(x, h);
    expect("neg_one_over_i_in_real_domain", v, DomainStatus::In,
           v.find("cdf_upward_drift")->value);
    if (v.status == DomainStatus::In) {
      EmpiricalMeasure m = empirical_measure(x, v);
      Rational near0 = m.mass_closed(-h.epsilon, h.epsilon);
      CaseResult c;
      c.name = "neg_one_over_i_measure_is_point_mass_at_0";
      c.pass = near0 >= Rational(99, 100);
      c.observed = to_double(near0);
      c.expected = 0.99;
      c.detail = "mass within epsilon of 0 is exactly " + to_string(near0);
      rep.cases.push_back(std::move(c));
    }
  }
  {
    SequencePrefix x = named_sequence("power2_spikes", N);
    EmpiricalVerdict v = classify_countable(x, h);
    expect("power2_spikes_in_countable_domain", v, DomainStatus::In,
           v.find("tightness")->value);
    if (v.status == DomainStatus::In) {
      EmpiricalMeasure m = empirical_measure(x, v);
      Rational at1 = m.mass_point(1.0);
      CaseResult c;
      c.name = "power2_spikes_measure_is_point_mass_at_1";
      c.pass = at1 >= Rational(99, 100);
      c.observed = to_double(at1);
      c.expected = 0.99;
      c.detail = "mass at 1 is exactly " + to_string(at1);
      rep.cases.push_back(std::move(c));
    }
    EmpiricalVerdict va = classify_real_avg(x, h);
    expect("power2_spikes_out_of_averaging_domain", va, DomainStatus::Out,
           va.find("mean_oscillation")->value);
    EmpiricalVerdict vr = classify_real(x.as_real(), h);
    expect("power2_spikes_in_real_domain_too", vr, DomainStatus::In,
           vr.find("escape_mass")->value);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Glivenko-Cantelli suite

namespace {

double ks_statistic(std::vector<double>& v, const DistSpec& dist) {
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double d = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    double F = dist.cdf(v[i]);
    d = std::max(d, F - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - F);
  }
  return d;
}

double median(std::vector<double> v) {
  size_t k = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<long>(k), v.end());
  double hi = v[k];
  if (v.size() % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + static_cast<long>(k - 1), v.end());
  return 0.5 * (hi + v[k - 1]);
}

}  // namespace

VerificationReport verify_glivenko_cantelli(const TrialPlan& plan) {
  plan.validate();
  VerificationReport rep;
  rep.suite = "glivenko_cantelli";
  const std::vector<size_t> Ns = {1000, 10000, 100000};
  const double tol = 0.01;
  const std::vector<std::pair<std::string, DistSpec>> dists = {
      {"uniform01", DistSpec::uniform01()}, {"cauchy", DistSpec::cauchy(0, 1)}};

  for (size_t di = 0; di < dists.size(); ++di) {
    const auto& [dname, dist] = dists[di];
    std::vector<std::vector<double>> sups(Ns.size());
    for (size_t ni = 0; ni < Ns.size(); ++ni) {
      for (size_t t = 0; t < plan.trials; ++t) {
        CounterRng rng(plan.seed, (di * 8 + ni) * 1000000 + t);
        std::vector<double> v(Ns[ni]);
        for (auto& x : v) x = dist.sample(rng);
        sups[ni].push_back(ks_statistic(v, dist));
      }
    }
    {
      double worst = *std::max_element(sups.back().begin(), sups.back().end());
      CaseResult c;
      c.name = dname + "_sup_below_tol_at_n100000";
      c.pass = worst < tol;
      c.observed = worst;
      c.expected = tol;
      c.detail = "worst KS statistic over " + std::to_string(plan.trials) + " trials";
      rep.cases.push_back(std::move(c));
    }
    {
      double m0 = median(sups[0]), m1 = median(sups[1]), m2 = median(sups[2]);
      CaseResult c;
      c.name = dname + "_median_sup_decreasing";
      c.pass = m0 > m1 && m1 > m2;
      c.observed = m2;
      c.expected = m1;
      c.detail = "medians " + fmt(m0) + " > " + fmt(m1) + " > " + fmt(m2);
      rep.cases.push_back(std::move(c));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Strong-law suite

VerificationReport verify_slln(const TrialPlan& plan) {
  plan.validate();
  VerificationReport rep;
  rep.suite = "slln";
  const size_t N = 1000000;

  {
    DistSpec exp1 = DistSpec::exponential(1.0);
    size_t good = 0;
    for (size_t t = 0; t < plan.trials; ++t) {
      CounterRng rng(plan.seed, (1u << 24) + t);
      double sum = 0, comp = 0;
      for (size_t i = 0; i < N; ++i) {
        double y = exp1.sample(rng) - comp;
        double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
      }
      if (std::fabs(sum / static_cast<double>(N) - 1.0) < 0.01) ++good;
    }
    CaseResult c;
    c.name = "exponential_mean_converges";
    size_t need = plan.trials - plan.trials / 100;
    c.pass = good >= need;
    c.observed = static_cast<double>(good);
    c.expected = static_cast<double>(need);
    c.detail = "trials with |mean - 1| < 0.01 at n=1000000";
    rep.cases.push_back(std::move(c));
  }
  {
    DistSpec cau = DistSpec::cauchy(0, 1);
    HorizonSchedule h = HorizonSchedule::defaults(N);
    size_t diverged = 0;
    for (size_t t = 0; t < plan.trials; ++t) {
      SequencePrefix x = generate(cau, plan.seed, N, (2u << 24) + t);
      if (classify_real_avg(x, h).status == DomainStatus::Out) ++diverged;
    }
    CaseResult c;
    c.name = "cauchy_mean_witnessed_divergent";
    size_t need = plan.trials - plan.trials / 10;
    c.pass = diverged >= need;
    c.observed = static_cast<double>(diverged);
    c.expected = static_cast<double>(need);
    c.detail = "trials where the averaging classifier returns a divergence witness";
    rep.cases.push_back(std::move(c));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Adequacy of the product-of-frequencies estimator

VerificationReport verify_empirical_adequacy(const TrialPlan& plan) {
  plan.validate();
  VerificationReport rep;
  rep.suite = "empirical_adequacy";

  // Exact path: for mixtures of point masses the estimator reproduces the
  // cylinder probabilities with zero error, as exact rationals.
  {
    FiniteSpace A("A", 3);
    MixtureModel model(
        A, {Rational(1, 2), Rational(1, 3), Rational(1, 6)},
        {{Rational(1), Rational(0), Rational(0)},
         {Rational(0), Rational(1), Rational(0)},
         {Rational(0), Rational(0), Rational(1)}});
    bool ok = true;
    for (int m = 1; m <= 3; ++m) {
      CylinderState mix = mixture_state(model, m);
      CylinderState::Pmf acc;
      for (int k = 0; k < 3; ++k) {
        std::vector<int> prefix(10, k);
        CylinderState est = resample_independent(prefix, A, m, 10);
        for (const auto& [w, p] : est.pmf()) acc[w] += model.weights[static_cast<size_t>(k)] * p;
      }
      ok = ok && (CylinderState(A, m, std::move(acc)) == mix);
    }
    CaseResult c;
    c.name = "point_mass_mixture_exact";
    c.pass = ok;
    c.observed = ok ? 1.0 : 0.0;
    c.expected = 1.0;
    c.detail = "estimator equals the mixture cylinder law exactly (word lengths 1..3)";
    rep.cases.push_back(std::move(c));
  }

  // Monte Carlo path: iid Bernoulli sampling. The resampled marginal
  // (falling-factorial frequency products) is an exactly unbiased estimator
  // of the iid cylinder law, so its trial mean must sit within slack
  // standard errors of the truth for every word. The with-replacement
  // product estimator is biased at order m(m-1)/N (the documented TV gap),
  // so it gets that explicit allowance on top.
  {
    const double p1 = 1.0 / 3.0;
    DistSpec bern = DistSpec::bernoulli(p1);
    const size_t N = 10000;
    for (int m = 1; m <= 3; ++m) {
      size_t words = size_t{1} << m;
      std::vector<MeanVar> trunc_stats(words), indep_stats(words);
      for (size_t t = 0; t < plan.trials; ++t) {
        CounterRng rng(plan.seed, (3u << 24) + 4096 * static_cast<size_t>(m) + t);
        double c1 = 0;
        for (size_t i = 0; i < N; ++i) c1 += bern.sample_letter(rng);
        double c0 = static_cast<double>(N) - c1;
        for (size_t w = 0; w < words; ++w) {
          int k1 = 0;
          for (int j = 0; j < m; ++j) k1 += static_cast<int>((w >> j) & 1);
          int k0 = m - k1;
          double tnum = 1, inum = 1, tden = 1, iden = 1;
          for (int j = 0; j < k1; ++j) tnum *= c1 - j, inum *= c1;
          for (int j = 0; j < k0; ++j) tnum *= c0 - j, inum *= c0;
          for (int j = 0; j < m; ++j) {
            tden *= static_cast<double>(N - static_cast<size_t>(j));
            iden *= static_cast<double>(N);
          }
          trunc_stats[w].add(tnum / tden);
          indep_stats[w].add(inum / iden);
        }
      }
      double worst_z = 0, worst_gap = 0, gap_allowance = 0;
      double worst_margin = -std::numeric_limits<double>::infinity();
      for (size_t w = 0; w < words; ++w) {
        int k1 = 0;
        for (int j = 0; j < m; ++j) k1 += static_cast<int>((w >> j) & 1);
        double truth = std::pow(p1, k1) * std::pow(1 - p1, m - k1);
        double z = std::fabs(trunc_stats[w].mean() - truth) /
                   std::max(trunc_stats[w].stderr_est(), 1e-300);
        worst_z = std::max(worst_z, z);
        double allow = static_cast<double>(m) * (m - 1) / static_cast<double>(N) +
                       plan.slack * indep_stats[w].stderr_est();
        double gap = std::fabs(indep_stats[w].mean() - truth);
        if (gap - allow > worst_margin) {
          worst_margin = gap - allow;
          worst_gap = gap;
          gap_allowance = allow;
        }
      }
      CaseResult c;
      c.name = "bernoulli_resampled_marginal_m" + std::to_string(m);
      c.pass = worst_z <= plan.slack;
      c.observed = worst_z;
      c.expected = plan.slack;
      c.detail = "worst standardized deviation of the unbiased estimator over "
                 "all words of length " + std::to_string(m);
      rep.cases.push_back(std::move(c));

      CaseResult b;
      b.name = "bernoulli_product_bias_bounded_m" + std::to_string(m);
      b.pass = worst_gap <= gap_allowance;
      b.observed = worst_gap;
      b.expected = gap_allowance;
      b.detail = "with-replacement product estimator within its m(m-1)/N bias "
                 "allowance plus sampling slack";
      rep.cases.push_back(std::move(b));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Maximal-inequality suite

VerificationReport verify_maximal_ergodic(const TrialPlan& plan) {
  plan.validate();
  VerificationReport rep;
  rep.suite = "maximal_ergodic";
  const size_t N = 10000;
  const double r = 2.0;
  DistSpec exp1 = DistSpec::exponential(1.0);

  size_t hits = 0;
  for (size_t t = 0; t < plan.trials; ++t) {
    CounterRng rng(plan.seed, (4u << 24) + t);
    double sum = 0;
    bool hit = false;
    for (size_t i = 0; i < N; ++i) {
      sum += exp1.sample(rng);
      if (sum > r * static_cast<double>(i + 1)) {
        hit = true;
        break;
      }
    }
    if (hit) ++hits;
  }
  double phat = static_cast<double>(hits) / static_cast<double>(plan.trials);
  double se = std::sqrt(phat * (1 - phat) / static_cast<double>(plan.trials));
  double bound = 1.0 / r;  // E[Y] / r with E[Y] = 1

  CaseResult c;
  c.name = "running_mean_exceedance_bounded";
  c.pass = phat <= bound + plan.slack * se;
  c.observed = phat;
  c.expected = bound;
  c.stderr_est = se;
  c.detail = "P(sup of running means over n<=10000 exceeds 2) vs mean/threshold bound";
  rep.cases.push_back(std::move(c));
  return rep;
}

// ---------------------------------------------------------------------------
// Sixth-moment concentration envelopes

VerificationReport verify_concentration(const TrialPlan& plan) {
  plan.validate();
  VerificationReport rep;
  rep.suite = "concentration";

  const std::vector<std::pair<size_t, size_t>> grid = {
      {10, 20}, {50, 100}, {5, 50}, {100, 200}};
  auto envelope = [](size_t n, size_t m) {
    return Rational(BigInt(kD6Envelope) * ipow(BigInt(static_cast<long long>(n)), 3) *
                    ipow(BigInt(static_cast<long long>(m)), 6));
  };

  // Exact: formula value under the envelope across the grid.
  {
    std::vector<std::pair<std::string, std::vector<Rational>>> laws = {
        {"bernoulli_1/2", raw_moments(FiniteLaw::bernoulli(Rational(1, 2)), 6)},
        {"uniform01", uniform01_moments(6)}};
    for (const auto& [name, raw] : laws) {
      double worst = 0;
      bool ok = true;
      for (const auto& [n, m] : grid) {
        Rational e6 = sixth_moment_cumulant(raw, n, m);
        Rational bound = envelope(n, m);
        ok = ok && (e6 >= 0) && (e6 <= bound);
        worst = std::max(worst, to_double(e6 / bound));
      }
      CaseResult c;
      c.name = name + "_exact_under_envelope";
      c.pass = ok;
      c.observed = worst;
      c.expected = 1.0;
      c.detail = "largest exact-to-envelope ratio across the (n, m) grid";
      rep.cases.push_back(std::move(c));
    }
  }

  // Monte Carlo: sampled sixth moment matches the exact formula and sits
  // under the envelope.
  {
    const size_t n = 10, m = 20;
    struct McLaw {
      std::string name;
      DistSpec dist;
      Rational exact;
      uint64_t stream;
    };
    std::vector<McLaw> laws = {
        {"bernoulli_1/2",
         DistSpec::bernoulli(0.5),
         sixth_moment_cumulant(raw_moments(FiniteLaw::bernoulli(Rational(1, 2)), 6), n, m),
         5u << 24},
        {"uniform01", DistSpec::uniform01(),
         sixth_moment_cumulant(uniform01_moments(6), n, m), 6u << 24}};
    for (const auto& lw : laws) {
      MeanVar mv;
      for (size_t t = 0; t < plan.trials; ++t) {
        CounterRng rng(plan.seed, lw.stream + t);
        double s1 = 0, s2 = 0;
        for (size_t i = 0; i < m; ++i) {
          double z = lw.dist.sample(rng);
          (i < n ? s1 : s2) += z;
        }
        double d = static_cast<double>(m - n) * s1 - static_cast<double>(n) * s2;
        double d2 = d * d;
        mv.add(d2 * d2 * d2);
      }
      double exact = to_double(lw.exact);
      double z = std::fabs(mv.mean() - exact) / std::max(mv.stderr_est(), 1e-300);
      CaseResult c;
      c.name = lw.name + "_sampled_matches_exact";
      c.pass = z <= plan.slack && mv.mean() <= to_double(envelope(n, m));
      c.observed = mv.mean();
      c.expected = exact;
      c.stderr_est = mv.stderr_est();
      c.detail = "sampled E[D^6] at n=10, m=20; standardized deviation " + fmt(z);
      rep.cases.push_back(std::move(c));
    }
  }

  // Empirical-CDF discrepancy tail probabilities scale down at least like
  // 1/n^2 when m = 2n.
  {
    const double eps = 0.1;
    const std::vector<size_t> ns = {100, 200, 400};
    const size_t T = std::max<size_t>(plan.trials, 10000);
    std::vector<double> stat(ns.size()), se(ns.size());
    for (size_t k = 0; k < ns.size(); ++k) {
      size_t n = ns[k], m = 2 * n;
      size_t hits = 0;
      for (size_t t = 0; t < T; ++t) {
        CounterRng rng(plan.seed, ((7u << 24) + (k << 20)) + t);
        long long s1 = 0, s2 = 0;
        for (size_t i = 0; i < m; ++i) {
          long long z = rng.next_unit() < 0.5 ? 0 : 1;
          (i < n ? s1 : s2) += z;
        }
        double d = static_cast<double>(m - n) * static_cast<double>(s1) -
                   static_cast<double>(n) * static_cast<double>(s2);
        if (std::fabs(d) > eps * static_cast<double>(n) * static_cast<double>(m))
          ++hits;
      }
      double phat = static_cast<double>(hits) / static_cast<double>(T);
      double scale = std::pow(eps, 6) * static_cast<double>(n) * static_cast<double>(n);
      stat[k] = phat * scale;
      se[k] = scale * std::sqrt(phat * (1 - phat) / static_cast<double>(T));
    }
    bool ok = true;
    for (size_t k = 0; k + 1 < ns.size(); ++k) {
      double allow = plan.slack * std::sqrt(se[k] * se[k] + se[k + 1] * se[k + 1]);
      ok = ok && (stat[k + 1] <= stat[k] + allow);
    }
    CaseResult c;
    c.name = "ecdf_tail_scaling_nonincreasing";
    c.pass = ok;
    c.observed = stat.back();
    c.expected = stat.front();
    c.detail = "p(n) * eps^6 * n^2 at n=100,200,400 (m=2n): " + fmt(stat[0]) +
               ", " + fmt(stat[1]) + ", " + fmt(stat[2]);
    rep.cases.push_back(std::move(c));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Permutation invariance of resampling

VerificationReport verify_permutation_invariance(uint64_t seed_lo, uint64_t seed_hi) {
  VerificationReport rep;
  rep.suite = "permutation_invariance";
  for (uint64_t seed = seed_lo; seed <= seed_hi; ++seed) {
    CounterRng rng(seed, 0);
    int k = 2 + static_cast<int>(rng.next_below(3));
    int n = 4 + static_cast<int>(rng.next_below(6));
    int m = 2 + static_cast<int>(rng.next_below(2));
    FiniteSpace A("A", k);
    std::vector<int> prefix(static_cast<size_t>(n));
    for (auto& x : prefix) x = static_cast<int>(rng.next_below(static_cast<uint64_t>(k)));

    CylinderState t = resample_truncated(prefix, A, m, n);
    CylinderState q = resample_independent(prefix, A, m, n);

    bool ok = is_exchangeable(t) && is_exchangeable(q);
    FinitePermutation sigma = FinitePermutation::random(m, rng);
    ok = ok && (permute(t, sigma) == t) && (permute(q, sigma) == q);

    // Relabeling the alphabet commutes with resampling.
    FinitePermutation pi = FinitePermutation::random(k, rng);
    std::vector<int> relabeled(prefix.size());
    for (size_t i = 0; i < prefix.size(); ++i) relabeled[i] = pi(prefix[i]);
    CylinderState t2 = resample_truncated(relabeled, A, m, n);
    for (const auto& [w, p] : t.pmf()) {
      Word w2(w.size());
      for (size_t j = 0; j < w.size(); ++j) w2[j] = pi(w[j]);
      ok = ok && (t2.mass(w2) == p);
    }

    CaseResult c;
    c.name = "seed_" + std::to_string(seed);
    c.pass = ok;
    c.observed = ok ? 1.0 : 0.0;
    c.expected = 1.0;
    std::string fp;
    if (!t.pmf().empty())
      fp = to_string(t.pmf().begin()->second);
    c.detail = "alphabet " + std::to_string(k) + ", n=" + std::to_string(n) +
               ", m=" + std::to_string(m) + ", first mass " + fp;
    rep.cases.push_back(std::move(c));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Resampling idempotence

namespace {

CylinderState two_stage_truncated(const std::vector<int>& prefix,
                                  const FiniteSpace& a, int k, int m, int n) {
  CylinderState first = resample_truncated(prefix, a, k, n);
  CylinderState::Pmf acc;
  for (const auto& [v, p] : first.pmf()) {
    CylinderState inner = resample_truncated(v, a, m, k);
    for (const auto& [w, q] : inner.pmf()) acc[w] += p * q;
  }
  return CylinderState(a, m, std::move(acc));
}

}  // namespace

VerificationReport verify_resampling_idempotence() {
  VerificationReport rep;
  rep.suite = "resampling_idempotence";

  // Two-stage subsampling through any intermediate length collapses exactly
  // to one-stage subsampling.
  {
    struct Case {
      std::vector<int> prefix;
      int alphabet, k, m;
    };
    std::vector<Case> cases = {
        {{0, 0, 0, 1, 1}, 2, 3, 2},
        {{0, 0, 0, 1, 1}, 2, 4, 2},
        {{0, 0, 1, 1, 2}, 3, 3, 2},
        {{0, 1, 2, 2, 1, 0}, 3, 4, 3},
    };
    bool ok = true;
    for (const auto& cs : cases) {
      FiniteSpace A("A", cs.alphabet);
      int n = static_cast<int>(cs.prefix.size());
      ok = ok && (two_stage_truncated(cs.prefix, A, cs.k, cs.m, n) ==
                  resample_truncated(cs.prefix, A, cs.m, n));
    }
    CaseResult c;
    c.name = "two_stage_collapse_exact";
    c.pass = ok;
    c.observed = ok ? 1.0 : 0.0;
    c.expected = 1.0;
    c.detail = "subsample(n->k) then subsample(k->m) equals subsample(n->m), exactly";
    rep.cases.push_back(std::move(c));
  }

  // The independent resampler is exactly iid from the empirical measure.
  {
    std::vector<int> prefix = {0, 1, 1, 2, 2, 2};
    FiniteSpace A("A", 3);
    std::vector<Rational> emp = {Rational(1, 6), Rational(2, 6), Rational(3, 6)};
    bool ok = resample_independent(prefix, A, 3, 6) == iid_truncation(A, emp, 3);
    CaseResult c;
    c.name = "independent_resampler_is_iid_empirical";
    c.pass = ok;
    c.observed = ok ? 1.0 : 0.0;
    c.expected = 1.0;
    rep.cases.push_back(std::move(c));
  }

  // Exact total-variation gap between the two resamplers for a balanced
  // two-letter sample, strictly shrinking in n.
  {
    bool ok = true;
    std::vector<Rational> tvs;
    for (size_t n : {100, 1000, 10000}) {
      std::vector<int> prefix(n);
      for (size_t i = n / 2; i < n; ++i) prefix[i] = 1;
      FiniteSpace A("A", 2);
      Rational tv = total_variation(
          resample_truncated(prefix, A, 2, static_cast<int>(n)),
          resample_independent(prefix, A, 2, static_cast<int>(n)));
      ok = ok && (tv == Rational(1, 2 * (static_cast<long long>(n) - 1)));
      if (!tvs.empty()) ok = ok && (tv < tvs.back());
      tvs.push_back(tv);
    }
    CaseResult c;
    c.name = "tv_gap_exact_and_decreasing";
    c.pass = ok;
    c.observed = to_double(tvs.back());
    c.expected = to_double(tvs.front());
    std::string s;
    for (const auto& tv : tvs) s += to_string(tv) + " ";
    c.detail = "exact TV gaps (m=2): " + s;
    rep.cases.push_back(std::move(c));

    // Unbalanced sanity value: counts (7, 3) at m=2 give exactly 7/150.
    std::vector<int> p73(10, 0);
    for (size_t i = 7; i < 10; ++i) p73[i] = 1;
    FiniteSpace A("A", 2);
    Rational tv73 = total_variation(resample_truncated(p73, A, 2, 10),
                                    resample_independent(p73, A, 2, 10));
    CaseResult c2;
    c2.name = "tv_gap_unbalanced_closed_form";
    c2.pass = (tv73 == Rational(7, 150));
    c2.observed = to_double(tv73);
    c2.expected = to_double(Rational(7, 150));
    c2.detail = "exact value " + to_string(tv73);
    rep.cases.push_back(std::move(c2));
  }
  return rep;
}

}  // namespace esamp
