#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "esamp/rational.hpp"

namespace esamp {

// Monte Carlo budget for a verification suite.  Every probabilistic
// assertion is made with an explicit standard-error slack; `trials` below
// 100 is rejected because the normal-approximation slack would be
// meaningless.
struct TrialPlan {
  size_t trials = 1000;
  double slack = 4.0;  // tolerance in estimated standard errors
  uint64_t seed = 2026;

  void validate() const;
};

struct CaseResult {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double expected = 0.0;    // target value or bound, depending on the case
  double stderr_est = 0.0;  // 0 for exact (non-sampling) checks
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  std::vector<CaseResult> cases;

  bool all_pass() const;
  nlohmann::ordered_json to_json() const;
  std::string to_table() const;
};

// A finitely supported law with exact rational atoms and weights.
struct FiniteLaw {
  std::vector<Rational> values;
  std::vector<Rational> probs;

  void validate() const;
  static FiniteLaw bernoulli(const Rational& p);
};

// Raw moments E[Z^j], j = 1..upto.
std::vector<Rational> raw_moments(const FiniteLaw& law, int upto);
// Raw moments 1/(j+1) of the uniform law on [0,1].
std::vector<Rational> uniform01_moments(int upto);
// kappa_j from raw moments via the standard recursion.
std::vector<Rational> moments_to_cumulants(const std::vector<Rational>& m);

// For iid Z_1..Z_m and n < m, the centered comparison statistic
//   D = (m-n) * sum_{i<=n} Z_i  -  n * sum_{n<i<=m} Z_i.
// Block independence gives kappa_j(D) = ((m-n)^j n + (-n)^j (m-n)) kappa_j(Z),
// and E[D^6] = k6 + 15 k4 k2 + 10 k3^2 + 15 k2^3 (kappa_1(D) = 0).
Rational sixth_moment_cumulant(const std::vector<Rational>& raw, size_t n, size_t m);
// Independent oracle: exhaustive enumeration of support^m (guarded).
Rational sixth_moment_bruteforce(const FiniteLaw& law, size_t n, size_t m);

// Envelope constant: for any law supported in [0,1], E[D^6] <= kD6Envelope * n^3 * m^6
// whenever n <= m.  Derived from |kappa_j| <= (1, 2, 6, 26, 150, 1082) for
// laws in [0,1] (moment recursion with |E[Z^j]| <= 1) and the block formula.
inline constexpr long long kD6Envelope = 7684;

// Suites. Each returns a report; all randomness flows through CounterRng
// substreams keyed by (plan.seed, case/trial index), so reports are
// reproducible byte-for-byte.
VerificationReport verify_category_laws(size_t instances, uint64_t seed);
VerificationReport verify_cumulant_oracle();
VerificationReport verify_sequences();
VerificationReport verify_glivenko_cantelli(const TrialPlan& plan);
VerificationReport verify_slln(const TrialPlan& plan);
VerificationReport verify_empirical_adequacy(const TrialPlan& plan);
VerificationReport verify_maximal_ergodic(const TrialPlan& plan);
VerificationReport verify_concentration(const TrialPlan& plan);
VerificationReport verify_permutation_invariance(uint64_t seed_lo, uint64_t seed_hi);
VerificationReport verify_resampling_idempotence();

}  // namespace esamp
