#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "esamp/horizon.hpp"
#include "esamp/rational.hpp"
#include "esamp/sequence.hpp"

namespace esamp {

enum class DomainStatus { In, Out, Inconclusive };

std::string to_string(DomainStatus s);

// One named check inside a classification: the statistic observed, the
// threshold it was compared against, and whether it passed.
struct CriterionDiag {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  bool gating = true;  // false => reported for information only
  std::string note;
};

struct EmpiricalVerdict {
  DomainStatus status = DomainStatus::Inconclusive;
  ValueKind kind = ValueKind::Real;
  std::string classifier;  // "finite" | "countable" | "real_cdf" | "real_avg"
  size_t n = 0;            // samples examined (== last checkpoint)
  HorizonSchedule horizon;
  std::vector<CriterionDiag> criteria;
  std::string witness;  // non-empty iff status == Out

  const CriterionDiag* find(const std::string& name) const;
};

// A stabilized empirical distribution, reported exactly.
struct EmpiricalMeasure {
  enum class Kind { FinitePmf, CountablePmf, StepCdf };
  Kind kind = Kind::StepCdf;
  size_t n = 0;  // sample size the measure was read off from

  // FinitePmf: pmf[a] for a in [0, alphabet)
  int alphabet_size = 0;
  std::vector<Rational> pmf;

  // CountablePmf: exact frequency of every observed integer value
  std::map<long long, Rational> npmf;
  Rational tail_mass = Rational(0);

  // StepCdf: atoms at strictly increasing locations with exact weights
  std::vector<double> xs;
  std::vector<Rational> weights;

  Rational total_mass() const;
  // Mass of the closed interval [a, b] (atom locations compared as doubles;
  // integer-valued kinds use their numeric values).
  Rational mass_closed(double a, double b) const;
  Rational mass_point(double x) const;
  double cdf_at(double t) const;
};

// Exact empirical CDF (atoms + weights) of the first n values.
EmpiricalMeasure empirical_cdf(const SequencePrefix& x, size_t n);

// A measurable set for relative-frequency queries: either an explicit list
// of integer values/symbols or a closed real interval [a, b].
struct SetSpec {
  enum class Kind { Values, Interval };
  Kind kind = Kind::Interval;
  std::vector<long long> values;
  double a = 0.0, b = 0.0;

  static SetSpec of_values(std::vector<long long> vs);
  static SetSpec interval(double a, double b);
  bool contains_int(long long v) const;
  bool contains_real(double v) const;
};

// Exact relative frequency of `set` among the first n values.
Rational relative_frequency(const SequencePrefix& x, const SetSpec& set, size_t n);

// Classifiers: decide whether the sequence prefix behaves like one that has
// a limiting empirical distribution (resp. a limiting average).  `In` means
// every stability criterion passed at tolerance epsilon; `Out` means a
// witnessed violation above 2*epsilon; anything else is `Inconclusive`.
EmpiricalVerdict classify_finite(const SequencePrefix& x, const HorizonSchedule& h);
EmpiricalVerdict classify_countable(const SequencePrefix& x, const HorizonSchedule& h);
EmpiricalVerdict classify_real(const SequencePrefix& x, const HorizonSchedule& h,
                               const std::vector<double>& report_grid = {});
EmpiricalVerdict classify_real_avg(const SequencePrefix& x, const HorizonSchedule& h);

// Dispatch on the prefix's value kind (real sequences use the CDF classifier).
EmpiricalVerdict classify_auto(const SequencePrefix& x, const HorizonSchedule& h);

// Read off the empirical measure at the verdict's final horizon.  Throws
// std::logic_error unless verdict.status == In and the verdict came from a
// distribution classifier (finite / countable / real_cdf).
EmpiricalMeasure empirical_measure(const SequencePrefix& x,
                                   const EmpiricalVerdict& verdict);

// Continuous piecewise-linear test function given by breakpoints; outside
// the breakpoint range it extends linearly with the terminal slopes.
struct PiecewiseFn {
  std::vector<double> bx;  // strictly increasing, >= 2 entries
  std::vector<double> by;

  void validate() const;
  double operator()(double x) const;
  static PiecewiseFn relu(double span = 1.0);  // max(x, 0) on [-span, span]
};

struct ExpectationResult {
  double via_average = 0.0;   // (1/n) sum f(x_i)
  double via_measure = 0.0;   // sum_atoms f(x) * weight
  double discrepancy = 0.0;   // |difference|, a pure self-consistency check
};

// Expectation of f under the empirical measure at horizon n, computed two
// independent ways (direct average, and integral against the atom list).
ExpectationResult empirical_expectation(const SequencePrefix& x,
                                        const PiecewiseFn& f, size_t n);

}  // namespace esamp
