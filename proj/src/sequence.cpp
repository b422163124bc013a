#include "esamp/sequence.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace esamp {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

double SequencePrefix::real_at(size_t i) const {
  if (kind == ValueKind::Real) return reals[i];
  return static_cast<double>(ints[i]);
}

SequencePrefix SequencePrefix::as_real() const {
  if (kind == ValueKind::Real) return *this;
  SequencePrefix out;
  out.kind = ValueKind::Real;
  out.reals.reserve(ints.size());
  for (long long v : ints) out.reals.push_back(static_cast<double>(v));
  out.provenance = provenance + ":as_real";
  return out;
}

ValueKind parse_kind(const std::string& s) {
  if (s == "finite") return ValueKind::Finite;
  if (s == "nat") return ValueKind::Nat;
  if (s == "real") return ValueKind::Real;
  throw std::invalid_argument("unknown value kind: " + s);
}

SequencePrefix load_csv(std::istream& in, ValueKind kind, int alphabet_size) {
  SequencePrefix out;
  out.kind = kind;
  out.alphabet_size = alphabet_size;
  out.provenance = "csv";
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    size_t e = line.find_last_not_of(" \t\r");
    std::string tok = line.substr(b, e - b + 1);
    try {
      if (kind == ValueKind::Real) {
        size_t pos = 0;
        double v = std::stod(tok, &pos);
        require(pos == tok.size(), "trailing characters");
        out.reals.push_back(v);
      } else {
        size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        require(pos == tok.size(), "trailing characters");
        if (kind == ValueKind::Finite)
          require(v >= 0 && v < alphabet_size, "symbol outside alphabet");
        else
          require(v >= 1, "naturals start at 1");
        out.ints.push_back(v);
      }
    } catch (const std::exception& ex) {
      throw std::invalid_argument("csv line " + std::to_string(lineno) + ": '" +
                                  tok + "': " + ex.what());
    }
  }
  require(out.size() > 0, "csv: no values");
  return out;
}

SequencePrefix load_csv_file(const std::string& path, ValueKind kind,
                             int alphabet_size) {
  std::ifstream in(path);
  require(in.good(), "cannot open file: " + path);
  SequencePrefix out = load_csv(in, kind, alphabet_size);
  out.provenance = "csv:" + path;
  return out;
}

SequencePrefix generate(const DistSpec& dist, uint64_t seed, size_t n,
                        uint64_t stream) {
  CounterRng rng(seed, stream);
  SequencePrefix out;
  std::ostringstream prov;
  prov << dist.describe() << ":seed=" << seed << ":stream=" << stream
       << ":n=" << n;
  out.provenance = prov.str();
  if (dist.finite_alphabet()) {
    out.kind = ValueKind::Finite;
    out.alphabet_size = dist.alphabet_size();
    out.ints.reserve(n);
    for (size_t i = 0; i < n; ++i) out.ints.push_back(dist.sample_letter(rng));
  } else if (dist.nat_valued()) {
    out.kind = ValueKind::Nat;
    out.ints.reserve(n);
    for (size_t i = 0; i < n; ++i) out.ints.push_back(dist.sample_nat(rng));
  } else {
    out.kind = ValueKind::Real;
    out.reals.reserve(n);
    for (size_t i = 0; i < n; ++i) out.reals.push_back(dist.sample(rng));
  }
  return out;
}

SequencePrefix generate_from_json(const nlohmann::json& spec) {
  DistSpec dist = DistSpec::from_json(spec);
  uint64_t seed = spec.at("seed").get<uint64_t>();
  size_t n = spec.at("n").get<size_t>();
  require(n >= 1, "generator: n >= 1 required");
  return generate(dist, seed, n);
}

SequencePrefix positive_part(const SequencePrefix& x) {
  require(x.kind == ValueKind::Real, "positive_part: real-valued input required");
  SequencePrefix out;
  out.kind = ValueKind::Real;
  out.reals.reserve(x.reals.size());
  for (double v : x.reals) out.reals.push_back(v > 0 ? v : 0.0);
  out.provenance = x.provenance + ":positive_part";
  return out;
}

SequencePrefix named_sequence(const std::string& name, size_t n) {
  SequencePrefix out;
  out.provenance = "named:" + name;
  if (name == "osc_log2") {
    out.kind = ValueKind::Finite;
    out.alphabet_size = 2;
    for (size_t i = 1; i <= n; ++i) {
      // ceil(log2 i): 0 for i=1, k for i in (2^(k-1), 2^k]
      unsigned k = 0;
      while ((size_t{1} << k) < i) ++k;
      out.ints.push_back(k % 2 == 0 ? 0 : 1);
    }
    return out;
  }
  if (name == "naturals") {
    out.kind = ValueKind::Nat;
    for (size_t i = 1; i <= n; ++i) out.ints.push_back(static_cast<long long>(i));
    return out;
  }
  if (name == "one_over_i") {
    out.kind = ValueKind::Real;
    for (size_t i = 1; i <= n; ++i) out.reals.push_back(1.0 / static_cast<double>(i));
    return out;
  }
  if (name == "neg_one_over_i") {
    out.kind = ValueKind::Real;
    for (size_t i = 1; i <= n; ++i) out.reals.push_back(-1.0 / static_cast<double>(i));
    return out;
  }
  if (name == "power2_spikes") {
    out.kind = ValueKind::Nat;
    for (size_t i = 1; i <= n; ++i) {
      bool pow2 = (i & (i - 1)) == 0;  // 1, 2, 4, 8, ...
      out.ints.push_back(pow2 ? static_cast<long long>(i) + 1 : 1);
    }
    return out;
  }
  throw std::invalid_argument("unknown named sequence: " + name);
}

}  // namespace esamp
