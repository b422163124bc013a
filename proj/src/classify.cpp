#include "esamp/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace esamp {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// For each checkpoint, a sorted copy of the first-c values.
template <typename T>
std::vector<std::vector<T>> sorted_prefixes(const std::vector<T>& xs,
                                            const std::vector<size_t>& cps) {
  std::vector<std::vector<T>> out;
  out.reserve(cps.size());
  for (size_t c : cps) {
    std::vector<T> s(xs.begin(), xs.begin() + static_cast<long>(c));
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
  }
  return out;
}

template <typename T>
struct CdfDrift {
  double up = 0.0;        // max over checkpoint pairs i<j of F_cj - F_ci
  double two_sided = 0.0; // same with |.|
  size_t up_i = 0, up_j = 0;
  T up_t{};
};

// Sup over all real t of the pairwise CDF discrepancies.  Both step
// functions only change at observed values, so evaluating at every observed
// value and at its left limit covers the supremum exactly.
template <typename T>
CdfDrift<T> cdf_drift(const std::vector<std::vector<T>>& sp,
                      const std::vector<size_t>& cps,
                      const std::vector<T>& evalpts) {
  CdfDrift<T> d;
  const size_t k = cps.size();
  std::vector<double> at(k), left(k);
  for (const T& t : evalpts) {
    for (size_t i = 0; i < k; ++i) {
      const auto& s = sp[i];
      double c = static_cast<double>(cps[i]);
      at[i] = static_cast<double>(std::upper_bound(s.begin(), s.end(), t) - s.begin()) / c;
      left[i] = static_cast<double>(std::lower_bound(s.begin(), s.end(), t) - s.begin()) / c;
    }
    for (size_t i = 0; i < k; ++i) {
      for (size_t j = i + 1; j < k; ++j) {
        for (double diff : {at[j] - at[i], left[j] - left[i]}) {
          if (diff > d.up) {
            d.up = diff;
            d.up_i = i;
            d.up_j = j;
            d.up_t = t;
          }
          double a = std::fabs(diff);
          if (a > d.two_sided) d.two_sided = a;
        }
      }
    }
  }
  return d;
}

template <typename T>
std::vector<T> distinct_sorted(const std::vector<T>& xs, size_t n) {
  std::vector<T> e(xs.begin(), xs.begin() + static_cast<long>(n));
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

}  // namespace

std::string to_string(DomainStatus s) {
  switch (s) {
    case DomainStatus::In: return "in";
    case DomainStatus::Out: return "out";
    default: return "inconclusive";
  }
}

const CriterionDiag* EmpiricalVerdict::find(const std::string& name) const {
  for (const auto& c : criteria)
    if (c.name == name) return &c;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Measures

Rational EmpiricalMeasure::total_mass() const {
  Rational s(0);
  if (kind == Kind::FinitePmf)
    for (const auto& p : pmf) s += p;
  else if (kind == Kind::CountablePmf) {
    for (const auto& [v, p] : npmf) s += p;
    s += tail_mass;
  } else
    for (const auto& w : weights) s += w;
  return s;
}

Rational EmpiricalMeasure::mass_closed(double a, double b) const {
  Rational s(0);
  if (a > b) return s;
  if (kind == Kind::FinitePmf) {
    for (int v = 0; v < alphabet_size; ++v)
      if (v >= a && v <= b) s += pmf[static_cast<size_t>(v)];
  } else if (kind == Kind::CountablePmf) {
    for (const auto& [v, p] : npmf) {
      double dv = static_cast<double>(v);
      if (dv >= a && dv <= b) s += p;
    }
  } else {
    auto lo = std::lower_bound(xs.begin(), xs.end(), a);
    for (auto it = lo; it != xs.end() && *it <= b; ++it)
      s += weights[static_cast<size_t>(it - xs.begin())];
  }
  return s;
}

Rational EmpiricalMeasure::mass_point(double x) const { return mass_closed(x, x); }

double EmpiricalMeasure::cdf_at(double t) const {
  Rational s(0);
  if (kind == Kind::FinitePmf) {
    for (int v = 0; v < alphabet_size; ++v)
      if (v <= t) s += pmf[static_cast<size_t>(v)];
  } else if (kind == Kind::CountablePmf) {
    for (const auto& [v, p] : npmf)
      if (static_cast<double>(v) <= t) s += p;
  } else {
    for (size_t i = 0; i < xs.size() && xs[i] <= t; ++i) s += weights[i];
  }
  return to_double(s);
}

EmpiricalMeasure empirical_cdf(const SequencePrefix& x, size_t n) {
  require(n >= 1 && n <= x.size(), "empirical_cdf: bad horizon");
  EmpiricalMeasure m;
  m.kind = EmpiricalMeasure::Kind::StepCdf;
  m.n = n;
  std::vector<double> v;
  v.reserve(n);
  for (size_t i = 0; i < n; ++i) v.push_back(x.real_at(i));
  std::sort(v.begin(), v.end());
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j < n && v[j] == v[i]) ++j;
    m.xs.push_back(v[i]);
    m.weights.push_back(Rational(static_cast<long long>(j - i),
                                 static_cast<long long>(n)));
    i = j;
  }
  return m;
}

SetSpec SetSpec::of_values(std::vector<long long> vs) {
  SetSpec s;
  s.kind = Kind::Values;
  s.values = std::move(vs);
  return s;
}

SetSpec SetSpec::interval(double a, double b) {
  SetSpec s;
  s.kind = Kind::Interval;
  s.a = a;
  s.b = b;
  return s;
}

bool SetSpec::contains_int(long long v) const {
  if (kind == Kind::Values)
    return std::find(values.begin(), values.end(), v) != values.end();
  double d = static_cast<double>(v);
  return d >= a && d <= b;
}

bool SetSpec::contains_real(double v) const {
  if (kind == Kind::Interval) return v >= a && v <= b;
  for (long long w : values)
    if (static_cast<double>(w) == v) return true;
  return false;
}

Rational relative_frequency(const SequencePrefix& x, const SetSpec& set, size_t n) {
  require(n >= 1 && n <= x.size(), "relative_frequency: bad horizon");
  long long hits = 0;
  if (x.kind == ValueKind::Real) {
    for (size_t i = 0; i < n; ++i)
      if (set.contains_real(x.reals[i])) ++hits;
  } else {
    for (size_t i = 0; i < n; ++i)
      if (set.contains_int(x.ints[i])) ++hits;
  }
  return Rational(hits, static_cast<long long>(n));
}

// ---------------------------------------------------------------------------
// Finite-alphabet classifier: every symbol's relative frequency must agree
// across checkpoints.

EmpiricalVerdict classify_finite(const SequencePrefix& x, const HorizonSchedule& h) {
  require(x.kind == ValueKind::Finite, "classify_finite: finite-alphabet input required");
  h.validate(x.size());
  const auto& cps = h.checkpoints;
  const int k = x.alphabet_size;

  std::vector<std::vector<double>> freq(static_cast<size_t>(k),
                                        std::vector<double>(cps.size()));
  std::vector<long long> counts(static_cast<size_t>(k), 0);
  size_t ci = 0;
  for (size_t i = 0; i < cps.back(); ++i) {
    ++counts[static_cast<size_t>(x.ints[i])];
    while (ci < cps.size() && i + 1 == cps[ci]) {
      for (int a = 0; a < k; ++a)
        freq[static_cast<size_t>(a)][ci] =
            static_cast<double>(counts[static_cast<size_t>(a)]) /
            static_cast<double>(cps[ci]);
      ++ci;
    }
  }

  EmpiricalVerdict v;
  v.kind = ValueKind::Finite;
  v.classifier = "finite";
  v.n = cps.back();
  v.horizon = h;

  double worst = 0.0;
  int worst_sym = 0;
  for (int a = 0; a < k; ++a) {
    const auto& f = freq[static_cast<size_t>(a)];
    double mx = *std::max_element(f.begin(), f.end());
    double mn = *std::min_element(f.begin(), f.end());
    double disc = mx - mn;
    if (disc > worst) {
      worst = disc;
      worst_sym = a;
    }
    CriterionDiag d;
    d.name = "freq_stability[" + std::to_string(a) + "]";
    d.value = disc;
    d.threshold = h.epsilon;
    d.pass = disc < h.epsilon;
    d.note = "final frequency " + fmt(f.back());
    v.criteria.push_back(std::move(d));
  }

  if (worst < h.epsilon) {
    v.status = DomainStatus::In;
  } else if (worst > 2 * h.epsilon) {
    v.status = DomainStatus::Out;
    v.witness = "symbol " + std::to_string(worst_sym) +
                " frequency varies by " + fmt(worst) + " across checkpoints";
  } else {
    v.status = DomainStatus::Inconclusive;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Countable (integer-valued) classifier: tightness + uniform CDF stability +
// normalization of the early-observed support.

EmpiricalVerdict classify_countable(const SequencePrefix& x, const HorizonSchedule& h) {
  require(x.kind != ValueKind::Real, "classify_countable: integer-valued input required");
  h.validate(x.size());
  const auto& cps = h.checkpoints;
  const size_t N = cps.back();
  const double eps = h.epsilon;

  EmpiricalVerdict v;
  v.kind = ValueKind::Nat;
  v.classifier = "countable";
  v.n = N;
  v.horizon = h;

  // Tightness: values must not keep escaping past the guard prefix's range.
  long long tstar =
      *std::max_element(x.ints.begin(), x.ints.begin() + static_cast<long>(h.guard)) + 1;
  double tail_worst = 0.0;
  {
    long long above = 0;
    size_t ci = 0;
    for (size_t i = 0; i < N; ++i) {
      if (x.ints[i] > tstar) ++above;
      while (ci < cps.size() && i + 1 == cps[ci]) {
        double t = static_cast<double>(above) / static_cast<double>(cps[ci]);
        tail_worst = std::max(tail_worst, t);
        ++ci;
      }
    }
  }
  bool pass_tight = tail_worst < eps;

  // Uniform CDF stability across checkpoints, two-sided.
  auto sp = sorted_prefixes(x.ints, cps);
  auto evalpts = distinct_sorted(x.ints, N);
  auto drift = cdf_drift(sp, cps, evalpts);
  bool pass_cdf = drift.two_sided < eps;

  // Normalization: the support seen early must carry almost all final mass.
  std::unordered_set<long long> early(x.ints.begin(),
                                      x.ints.begin() + static_cast<long>(h.guard));
  long long infinal = 0;
  for (size_t i = 0; i < N; ++i)
    if (early.count(x.ints[i])) ++infinal;
  double deficit = 1.0 - static_cast<double>(infinal) / static_cast<double>(N);
  bool pass_norm = deficit < eps;

  v.criteria.push_back({"tightness", tail_worst, eps, pass_tight, true,
                        "mass above guard-prefix maximum " + std::to_string(tstar - 1)});
  v.criteria.push_back({"cdf_uniform", drift.two_sided, eps, pass_cdf, true,
                        "sup over checkpoint pairs and integer thresholds"});
  v.criteria.push_back({"normalization", deficit, eps, pass_norm, true,
                        "final mass outside guard-prefix support"});

  if (pass_tight && pass_cdf && pass_norm) {
    v.status = DomainStatus::In;
  } else if (tail_worst > 2 * eps && drift.two_sided > 2 * eps && deficit > 2 * eps) {
    v.status = DomainStatus::Out;
    v.witness = "mass keeps escaping: tail " + fmt(tail_worst) + ", cdf drift " +
                fmt(drift.two_sided) + ", new-support mass " + fmt(deficit);
  } else {
    v.status = DomainStatus::Inconclusive;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Real-valued distribution classifier.
//
// Gate 1 (upward CDF drift): between any earlier and later checkpoint, the
// empirical CDF may only move down or stay put (mass drifting right is the
// one escape hatch right-continuity forgives in the limit); any upward move
// above epsilon blocks, above 2*epsilon witnesses divergence.  Gate 2
// (escape/confinement): mass leaving the guard prefix's value window must
// either stay below epsilon, or the running extremes must settle down to
// within epsilon of the overall value range.

EmpiricalVerdict classify_real(const SequencePrefix& x, const HorizonSchedule& h,
                               const std::vector<double>& report_grid) {
  require(x.kind == ValueKind::Real, "classify_real: real-valued input required");
  h.validate(x.size());
  const auto& cps = h.checkpoints;
  const size_t N = cps.back();
  const double eps = h.epsilon;

  EmpiricalVerdict v;
  v.kind = ValueKind::Real;
  v.classifier = "real_cdf";
  v.n = N;
  v.horizon = h;

  auto sp = sorted_prefixes(x.reals, cps);
  auto evalpts = distinct_sorted(x.reals, N);
  auto drift = cdf_drift(sp, cps, evalpts);
  bool pass_up = drift.up < eps;

  // Escape mass and running extremes at each checkpoint.
  double lo_g = x.reals[0], hi_g = x.reals[0];
  for (size_t i = 0; i < h.guard; ++i) {
    lo_g = std::min(lo_g, x.reals[i]);
    hi_g = std::max(hi_g, x.reals[i]);
  }
  double escape = 0.0;
  std::vector<double> lo_c, hi_c;
  {
    long long out = 0;
    double lo = x.reals[0], hi = x.reals[0];
    size_t ci = 0;
    for (size_t i = 0; i < N; ++i) {
      double xi = x.reals[i];
      if (xi < lo_g || xi > hi_g) ++out;
      lo = std::min(lo, xi);
      hi = std::max(hi, xi);
      while (ci < cps.size() && i + 1 == cps[ci]) {
        escape = std::max(escape,
                          static_cast<double>(out) / static_cast<double>(cps[ci]));
        lo_c.push_back(lo);
        hi_c.push_back(hi);
        ++ci;
      }
    }
  }
  double range = hi_c.back() - lo_c.back();
  double tau_loc = eps * range;
  double spread_hi = hi_c.back() - hi_c.front();
  double spread_lo = lo_c.front() - lo_c.back();
  double spread = std::max(spread_hi, spread_lo);
  bool escape_ok = escape < eps;
  bool confined = spread <= tau_loc;

  v.criteria.push_back({"cdf_upward_drift", drift.up, eps, pass_up, true,
                        "largest upward CDF move between checkpoints " +
                            std::to_string(cps[drift.up_i]) + " and " +
                            std::to_string(cps[drift.up_j]) + " near t=" +
                            fmt(drift.up_t)});
  v.criteria.push_back({"cdf_two_sided_sup", drift.two_sided, eps,
                        drift.two_sided < eps, false, "diagnostic only"});
  v.criteria.push_back({"escape_mass", escape, eps, escape_ok, true,
                        "mass outside guard window [" + fmt(lo_g) + ", " +
                            fmt(hi_g) + "]"});
  v.criteria.push_back({"extreme_confinement", spread, tau_loc, confined, true,
                        "running min/max spread across checkpoints vs eps * range"});
  for (double t : report_grid) {
    double F = static_cast<double>(std::upper_bound(sp.back().begin(), sp.back().end(), t) -
                                   sp.back().begin()) /
               static_cast<double>(N);
    v.criteria.push_back({"cdf_at[" + fmt(t) + "]", F, 1.0, true, false,
                          "final-horizon empirical CDF value"});
  }

  if (pass_up && (escape_ok || confined)) {
    v.status = DomainStatus::In;
  } else if (drift.up > 2 * eps) {
    v.status = DomainStatus::Out;
    v.witness = "empirical CDF moved up by " + fmt(drift.up) + " between checkpoints " +
                std::to_string(cps[drift.up_i]) + " and " +
                std::to_string(cps[drift.up_j]);
  } else if (escape > 2 * eps && spread > 2 * tau_loc) {
    v.status = DomainStatus::Out;
    v.witness = "mass " + fmt(escape) + " escapes the guard window and running extremes keep moving (spread " +
                fmt(spread) + " > " + fmt(2 * tau_loc) + ")";
  } else {
    v.status = DomainStatus::Inconclusive;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Real-valued averaging classifier: the running mean, watched over the whole
// path beyond the first checkpoint, must stop moving.  A genuine oscillation
// (a large rise AND a large fall) witnesses divergence; one-directional
// drift stays inconclusive.

EmpiricalVerdict classify_real_avg(const SequencePrefix& x, const HorizonSchedule& h) {
  require(x.kind == ValueKind::Real || x.kind == ValueKind::Nat,
          "classify_real_avg: numeric input required");
  h.validate(x.size());
  const auto& cps = h.checkpoints;
  const size_t N = cps.back();
  const double eps = h.epsilon;

  EmpiricalVerdict v;
  v.kind = ValueKind::Real;
  v.classifier = "real_avg";
  v.n = N;
  v.horizon = h;

  double sum = 0.0, comp = 0.0;  // Kahan-compensated running sum
  double mn = std::numeric_limits<double>::infinity();
  double mx = -mn;
  double run_min = mn, run_max = -mn;
  double max_rise = 0.0, max_fall = 0.0;
  double mean = 0.0;
  for (size_t i = 0; i < N; ++i) {
    double y = x.real_at(i) - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (i + 1 < h.guard) continue;
    mean = sum / static_cast<double>(i + 1);
    mn = std::min(mn, mean);
    mx = std::max(mx, mean);
    if (run_min < mean) max_rise = std::max(max_rise, mean - run_min);
    if (run_max > mean) max_fall = std::max(max_fall, run_max - mean);
    run_min = std::min(run_min, mean);
    run_max = std::max(run_max, mean);
  }
  double osc = mx - mn;

  v.criteria.push_back({"mean_oscillation", osc, eps, osc < eps, true,
                        "sup minus inf of running mean beyond first checkpoint"});
  v.criteria.push_back({"max_rise", max_rise, 2 * eps, max_rise <= 2 * eps, false,
                        "largest later-minus-earlier increase of the running mean"});
  v.criteria.push_back({"max_fall", max_fall, 2 * eps, max_fall <= 2 * eps, false,
                        "largest later-minus-earlier decrease of the running mean"});
  v.criteria.push_back({"final_mean", mean, 0.0, true, false,
                        "running mean at the final horizon"});

  if (osc < eps) {
    v.status = DomainStatus::In;
  } else if (max_rise > 2 * eps && max_fall > 2 * eps) {
    v.status = DomainStatus::Out;
    v.witness = "running mean oscillates: rise " + fmt(max_rise) + " and fall " +
                fmt(max_fall) + " both exceed " + fmt(2 * eps);
  } else {
    v.status = DomainStatus::Inconclusive;
  }
  return v;
}

EmpiricalVerdict classify_auto(const SequencePrefix& x, const HorizonSchedule& h) {
  switch (x.kind) {
    case ValueKind::Finite: return classify_finite(x, h);
    case ValueKind::Nat: return classify_countable(x, h);
    default: return classify_real(x, h);
  }
}

EmpiricalMeasure empirical_measure(const SequencePrefix& x,
                                   const EmpiricalVerdict& verdict) {
  if (verdict.status != DomainStatus::In)
    throw std::logic_error(
        "empirical measure undefined: sequence not classified in-domain");
  if (verdict.classifier == "real_avg")
    throw std::logic_error(
        "averaging verdicts do not induce a distribution; read the final_mean diagnostic");
  const size_t N = verdict.n;
  require(N <= x.size(), "empirical_measure: verdict horizon exceeds data");

  EmpiricalMeasure m;
  m.n = N;
  if (verdict.classifier == "finite") {
    m.kind = EmpiricalMeasure::Kind::FinitePmf;
    m.alphabet_size = x.alphabet_size;
    std::vector<long long> counts(static_cast<size_t>(x.alphabet_size), 0);
    for (size_t i = 0; i < N; ++i) ++counts[static_cast<size_t>(x.ints[i])];
    for (long long c : counts)
      m.pmf.push_back(Rational(c, static_cast<long long>(N)));
    return m;
  }
  if (verdict.classifier == "countable") {
    m.kind = EmpiricalMeasure::Kind::CountablePmf;
    std::map<long long, long long> counts;
    for (size_t i = 0; i < N; ++i) ++counts[x.ints[i]];
    for (const auto& [val, c] : counts)
      m.npmf[val] = Rational(c, static_cast<long long>(N));
    m.tail_mass = Rational(0);
    return m;
  }
  return empirical_cdf(x, N);
}

// ---------------------------------------------------------------------------
// Piecewise-linear test functions and expectations.

void PiecewiseFn::validate() const {
  if (bx.size() < 2 || bx.size() != by.size())
    throw std::invalid_argument("piecewise: need >= 2 matched breakpoints");
  for (size_t i = 1; i < bx.size(); ++i)
    if (!(bx[i] > bx[i - 1]))
      throw std::invalid_argument("piecewise: breakpoints must strictly increase");
}

double PiecewiseFn::operator()(double x) const {
  size_t k = bx.size();
  size_t j;
  if (x <= bx[0])
    j = 0;
  else if (x >= bx[k - 1])
    j = k - 2;
  else
    j = static_cast<size_t>(std::upper_bound(bx.begin(), bx.end(), x) - bx.begin()) - 1;
  double slope = (by[j + 1] - by[j]) / (bx[j + 1] - bx[j]);
  return by[j] + slope * (x - bx[j]);
}

PiecewiseFn PiecewiseFn::relu(double span) {
  PiecewiseFn f;
  f.bx = {-span, 0.0, span};
  f.by = {0.0, 0.0, span};
  f.validate();
  return f;
}

ExpectationResult empirical_expectation(const SequencePrefix& x,
                                        const PiecewiseFn& f, size_t n) {
  f.validate();
  require(n >= 1 && n <= x.size(), "empirical_expectation: bad horizon");
  ExpectationResult r;
  double sum = 0.0, comp = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double y = f(x.real_at(i)) - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  r.via_average = sum / static_cast<double>(n);
  EmpiricalMeasure m = empirical_cdf(x, n);
  double acc = 0.0;
  for (size_t i = 0; i < m.xs.size(); ++i)
    acc += f(m.xs[i]) * to_double(m.weights[i]);
  r.via_measure = acc;
  r.discrepancy = std::fabs(r.via_average - r.via_measure);
  return r;
}

}  // namespace esamp
