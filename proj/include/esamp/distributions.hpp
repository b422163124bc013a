#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "esamp/rational.hpp"
#include "esamp/rng.hpp"

namespace esamp {

// The sampling catalogue. Every distribution has a hand-coded variate
// transform (inverse CDF or Box-Muller) so that a given (seed, stream,
// counter) always yields the same value. Naturals start at 1.
enum class DistKind {
  Constant,     // constant(c)
  Bernoulli,    // bernoulli(p), values {0,1}
  Uniform01,    // uniform on [0,1)
  Geometric,    // geometric(p) on {1,2,...}
  Exponential,  // exponential(lambda)
  Normal,       // normal(mu, sigma)
  Cauchy,       // cauchy(x0, gamma)
  FinitePmf,    // finite pmf over {0..k-1}
};

struct DistSpec {
  DistKind kind = DistKind::Uniform01;
  double a = 0, b = 1;             // meaning depends on kind
  std::vector<Rational> pmf;       // FinitePmf only
  std::vector<double> cum;         // cached cumulative for FinitePmf

  static DistSpec constant(double c);
  static DistSpec bernoulli(double p);
  static DistSpec uniform01();
  static DistSpec geometric(double p);
  static DistSpec exponential(double lambda);
  static DistSpec normal(double mu, double sigma);
  static DistSpec cauchy(double x0, double gamma);
  static DistSpec finite_pmf(std::vector<Rational> pmf);

  // {"dist": "bernoulli", "params": {"p": "1/3"}} etc. Parameter values may
  // be numbers or exact "p/q" strings.
  static DistSpec from_json(const nlohmann::json& j);

  std::string describe() const;

  double sample(CounterRng& rng) const;
  long long sample_nat(CounterRng& rng) const;  // Geometric / Constant only
  int sample_letter(CounterRng& rng) const;     // Bernoulli / FinitePmf only

  double cdf(double t) const;
  bool has_finite_mean() const;
  double mean() const;

  bool finite_alphabet() const {
    return kind == DistKind::Bernoulli || kind == DistKind::FinitePmf;
  }
  int alphabet_size() const;
  bool nat_valued() const {
    return kind == DistKind::Geometric ||
           (kind == DistKind::Constant && a >= 1 && a == static_cast<long long>(a));
  }
};

}  // namespace esamp
