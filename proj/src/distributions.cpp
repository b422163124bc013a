#include "esamp/distributions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace esamp {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double param_number(const nlohmann::json& j) {
  if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
  return j.get<double>();
}

}  // namespace

DistSpec DistSpec::constant(double c) { return {DistKind::Constant, c, 0, {}, {}}; }

DistSpec DistSpec::bernoulli(double p) {
  require(p >= 0 && p <= 1, "bernoulli: p in [0,1] required");
  return {DistKind::Bernoulli, p, 0, {}, {}};
}

DistSpec DistSpec::uniform01() { return {DistKind::Uniform01, 0, 1, {}, {}}; }

DistSpec DistSpec::geometric(double p) {
  require(p > 0 && p <= 1, "geometric: p in (0,1] required");
  return {DistKind::Geometric, p, 0, {}, {}};
}

DistSpec DistSpec::exponential(double lambda) {
  require(lambda > 0, "exponential: lambda > 0 required");
  return {DistKind::Exponential, lambda, 0, {}, {}};
}

DistSpec DistSpec::normal(double mu, double sigma) {
  require(sigma > 0, "normal: sigma > 0 required");
  return {DistKind::Normal, mu, sigma, {}, {}};
}

DistSpec DistSpec::cauchy(double x0, double gamma) {
  require(gamma > 0, "cauchy: gamma > 0 required");
  return {DistKind::Cauchy, x0, gamma, {}, {}};
}

DistSpec DistSpec::finite_pmf(std::vector<Rational> pmf) {
  Rational sum = 0;
  for (const Rational& p : pmf) {
    require(p >= 0, "finite_pmf: negative mass");
    sum += p;
  }
  require(sum == 1, "finite_pmf: masses must sum to 1");
  DistSpec d{DistKind::FinitePmf, 0, 0, std::move(pmf), {}};
  double acc = 0;
  for (const Rational& p : d.pmf) {
    acc += to_double(p);
    d.cum.push_back(acc);
  }
  if (!d.cum.empty()) d.cum.back() = 1.0;
  return d;
}

DistSpec DistSpec::from_json(const nlohmann::json& j) {
  std::string name = j.at("dist").get<std::string>();
  nlohmann::json params = j.value("params", nlohmann::json::object());
  if (name == "constant") return constant(param_number(params.at("c")));
  if (name == "bernoulli") return bernoulli(param_number(params.at("p")));
  if (name == "uniform01") return uniform01();
  if (name == "geometric") return geometric(param_number(params.at("p")));
  if (name == "exponential") return exponential(param_number(params.at("lambda")));
  if (name == "normal")
    return normal(param_number(params.at("mu")), param_number(params.at("sigma")));
  if (name == "cauchy")
    return cauchy(param_number(params.at("x0")), param_number(params.at("gamma")));
  if (name == "finite") {
    std::vector<Rational> pmf;
    for (const auto& v : params.at("pmf"))
      pmf.push_back(v.is_string() ? parse_rational(v.get<std::string>())
                                  : Rational());
    for (size_t i = 0; i < pmf.size(); ++i)
      if (!params.at("pmf")[i].is_string())
        throw std::invalid_argument("finite: pmf entries must be \"p/q\" strings");
    return finite_pmf(std::move(pmf));
  }
  throw std::invalid_argument("unknown distribution: " + name);
}

std::string DistSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case DistKind::Constant: os << "constant(" << a << ")"; break;
    case DistKind::Bernoulli: os << "bernoulli(" << a << ")"; break;
    case DistKind::Uniform01: os << "uniform01"; break;
    case DistKind::Geometric: os << "geometric(" << a << ")"; break;
    case DistKind::Exponential: os << "exponential(" << a << ")"; break;
    case DistKind::Normal: os << "normal(" << a << "," << b << ")"; break;
    case DistKind::Cauchy: os << "cauchy(" << a << "," << b << ")"; break;
    case DistKind::FinitePmf: {
      os << "finite(";
      for (size_t i = 0; i < pmf.size(); ++i)
        os << (i ? "," : "") << to_string(pmf[i]);
      os << ")";
      break;
    }
  }
  return os.str();
}

double DistSpec::sample(CounterRng& rng) const {
  switch (kind) {
    case DistKind::Constant:
      return a;
    case DistKind::Bernoulli:
      return rng.next_unit() < a ? 1.0 : 0.0;
    case DistKind::Uniform01:
      return rng.next_unit();
    case DistKind::Geometric:
      return static_cast<double>(sample_nat(rng));
    case DistKind::Exponential: {
      double u = rng.next_unit();
      return -std::log1p(-u) / a;  // inverse CDF; u < 1 always
    }
    case DistKind::Normal: {
      // Box-Muller, spelled out for reproducibility.
      double u1 = rng.next_unit();
      double u2 = rng.next_unit();
      if (u1 <= 0) u1 = 0x1.0p-53;
      double r = std::sqrt(-2.0 * std::log(u1));
      return a + b * (r * std::cos(2.0 * kPi * u2));
    }
    case DistKind::Cauchy: {
      double u = rng.next_unit();
      return a + b * std::tan(kPi * (u - 0.5));
    }
    case DistKind::FinitePmf:
      return static_cast<double>(sample_letter(rng));
  }
  throw std::logic_error("sample: unknown kind");
}

long long DistSpec::sample_nat(CounterRng& rng) const {
  switch (kind) {
    case DistKind::Geometric: {
      if (a >= 1.0) return 1;
      double u = rng.next_unit();
      double k = std::floor(std::log1p(-u) / std::log1p(-a)) + 1.0;
      if (k < 1) k = 1;
      return static_cast<long long>(k);
    }
    case DistKind::Constant:
      return static_cast<long long>(a);
    default:
      throw std::invalid_argument("sample_nat: distribution is not countable");
  }
}

int DistSpec::sample_letter(CounterRng& rng) const {
  switch (kind) {
    case DistKind::Bernoulli:
      return rng.next_unit() < a ? 1 : 0;
    case DistKind::FinitePmf: {
      double u = rng.next_unit();
      for (size_t i = 0; i < cum.size(); ++i)
        if (u < cum[i]) return static_cast<int>(i);
      return static_cast<int>(cum.size()) - 1;
    }
    default:
      throw std::invalid_argument("sample_letter: not a finite-alphabet distribution");
  }
}

double DistSpec::cdf(double t) const {
  switch (kind) {
    case DistKind::Constant:
      return t >= a ? 1.0 : 0.0;
    case DistKind::Bernoulli:
      if (t < 0) return 0.0;
      if (t < 1) return 1.0 - a;
      return 1.0;
    case DistKind::Uniform01:
      if (t < 0) return 0.0;
      if (t > 1) return 1.0;
      return t;
    case DistKind::Geometric: {
      if (t < 1) return 0.0;
      double k = std::floor(t);
      return 1.0 - std::pow(1.0 - a, k);
    }
    case DistKind::Exponential:
      return t <= 0 ? 0.0 : 1.0 - std::exp(-a * t);
    case DistKind::Normal:
      return 0.5 * (1.0 + std::erf((t - a) / (b * std::sqrt(2.0))));
    case DistKind::Cauchy:
      return 0.5 + std::atan((t - a) / b) / kPi;
    case DistKind::FinitePmf: {
      if (t < 0) return 0.0;
      size_t k = static_cast<size_t>(std::floor(t));
      if (k >= cum.size()) return 1.0;
      return cum[k];
    }
  }
  throw std::logic_error("cdf: unknown kind");
}

bool DistSpec::has_finite_mean() const { return kind != DistKind::Cauchy; }

double DistSpec::mean() const {
  switch (kind) {
    case DistKind::Constant: return a;
    case DistKind::Bernoulli: return a;
    case DistKind::Uniform01: return 0.5;
    case DistKind::Geometric: return 1.0 / a;
    case DistKind::Exponential: return 1.0 / a;
    case DistKind::Normal: return a;
    case DistKind::Cauchy:
      throw std::invalid_argument("mean: undefined for cauchy");
    case DistKind::FinitePmf: {
      double m = 0;
      for (size_t i = 0; i < pmf.size(); ++i)
        m += static_cast<double>(i) * to_double(pmf[i]);
      return m;
    }
  }
  throw std::logic_error("mean: unknown kind");
}

int DistSpec::alphabet_size() const {
  if (kind == DistKind::Bernoulli) return 2;
  if (kind == DistKind::FinitePmf) return static_cast<int>(pmf.size());
  throw std::invalid_argument("alphabet_size: not a finite-alphabet distribution");
}

}  // namespace esamp
