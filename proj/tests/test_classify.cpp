#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "esamp/classify.hpp"
#include "esamp/sequence.hpp"

using namespace esamp;
using doctest::Approx;
using R = Rational;

namespace {

HorizonSchedule sched(size_t n, double eps) {
  HorizonSchedule h = HorizonSchedule::defaults(n);
  h.epsilon = eps;
  return h;
}

}  // namespace

TEST_CASE("default horizon schedules") {
  HorizonSchedule h = HorizonSchedule::defaults(100000);
  CHECK(h.checkpoints == std::vector<size_t>{12500, 25000, 50000, 100000});
  CHECK(h.guard == 12500);
  CHECK(h.epsilon == Approx(4.0 / std::sqrt(100000.0)));  // binds above 0.01
  HorizonSchedule small = HorizonSchedule::defaults(64);
  CHECK(small.checkpoints == std::vector<size_t>{8, 16, 32, 64});
  CHECK(small.epsilon == Approx(0.5));
  CHECK_THROWS_AS(HorizonSchedule::defaults(7), std::invalid_argument);
}

TEST_CASE("horizon validation") {
  HorizonSchedule h = HorizonSchedule::defaults(1000);
  CHECK_NOTHROW(h.validate(1000));
  CHECK_THROWS_AS(h.validate(999), std::invalid_argument);  // data too short
  HorizonSchedule bad = h;
  bad.guard = 1;  // guard must be the first checkpoint
  CHECK_THROWS_AS(bad.validate(1000), std::invalid_argument);
  bad = h;
  bad.checkpoints = {500};
  CHECK_THROWS_AS(bad.validate(1000), std::invalid_argument);
  bad = h;
  bad.checkpoints = {500, 500, 1000};
  CHECK_THROWS_AS(bad.validate(1000), std::invalid_argument);
  bad = h;
  bad.epsilon = 0.0;
  CHECK_THROWS_AS(bad.validate(1000), std::invalid_argument);
}

TEST_CASE("relative frequencies are exact rationals") {
  SequencePrefix x = named_sequence("osc_log2", 100000);
  SetSpec zeros = SetSpec::of_values({0});
  // Block-structure closed form, computed independently by summing the
  // even-ceiling dyadic blocks by hand.
  CHECK(relative_frequency(x, zeros, 12500) == R(7039, 12500));
  CHECK(relative_frequency(x, zeros, 25000) == R(10923, 25000));
  CHECK(relative_frequency(x, zeros, 50000) == R(28155, 50000));
  CHECK(relative_frequency(x, zeros, 100000) == R(43691, 100000));
  CHECK_THROWS_AS(relative_frequency(x, zeros, 100001), std::invalid_argument);

  SequencePrefix r = named_sequence("one_over_i", 100);
  // 1/i in [1/10, 1] at i = 1..10.
  CHECK(relative_frequency(r, SetSpec::interval(0.0999, 1.0), 100) == R(10, 100));
}

TEST_CASE("alternating-block frequencies never stabilize (finite classifier)") {
  SequencePrefix x = named_sequence("osc_log2", 100000);
  EmpiricalVerdict v = classify_finite(x, sched(100000, 0.01));
  CHECK(v.status == DomainStatus::Out);
  CHECK(v.classifier == "finite");
  CHECK(!v.witness.empty());
  const CriterionDiag* d = v.find("freq_stability[0]");
  REQUIRE(d != nullptr);
  // 7039/12500 - 43691/100000 exactly
  CHECK(d->value == Approx(0.12621).epsilon(1e-6));
  CHECK(!d->pass);
  // The same data viewed through the real-valued classifier also diverges.
  EmpiricalVerdict vr = classify_real(x.as_real(), sched(100000, 0.01));
  CHECK(vr.status == DomainStatus::Out);
  CHECK(vr.classifier == "real_cdf");
}

TEST_CASE("naturals march off to infinity (countable classifier)") {
  SequencePrefix x = named_sequence("naturals", 100000);
  EmpiricalVerdict v = classify_countable(x, sched(100000, 0.01));
  CHECK(v.status == DomainStatus::Out);
  const CriterionDiag* t = v.find("tightness");
  REQUIRE(t != nullptr);
  CHECK(t->value == Approx(0.87499).epsilon(1e-9));
  const CriterionDiag* nz = v.find("normalization");
  REQUIRE(nz != nullptr);
  CHECK(nz->value == Approx(0.875).epsilon(1e-9));
  const CriterionDiag* c = v.find("cdf_uniform");
  REQUIRE(c != nullptr);
  CHECK(c->value == Approx(0.875).epsilon(1e-4));
  // Also divergent when viewed through the real-valued classifier.
  EmpiricalVerdict vr = classify_real(x.as_real(), sched(100000, 0.01));
  CHECK(vr.status == DomainStatus::Out);
}

TEST_CASE("1/i drifts upward and is rejected by the CDF gate") {
  SequencePrefix x = named_sequence("one_over_i", 100000);
  EmpiricalVerdict v = classify_real(x, sched(100000, 0.01));
  CHECK(v.status == DomainStatus::Out);
  const CriterionDiag* d = v.find("cdf_upward_drift");
  REQUIRE(d != nullptr);
  // F_100000 - F_12500 at t = 1/12501 is exactly 87500/100000.
  CHECK(d->value == Approx(0.875).epsilon(1e-9));
  CHECK(v.witness.find("12500") != std::string::npos);
  CHECK(v.witness.find("100000") != std::string::npos);
}

TEST_CASE("-1/i converges in distribution despite escaping its guard window") {
  SequencePrefix x = named_sequence("neg_one_over_i", 100000);
  EmpiricalVerdict v = classify_real(x, sched(100000, 0.01));
  CHECK(v.status == DomainStatus::In);
  CHECK(v.witness.empty());
  const CriterionDiag* up = v.find("cdf_upward_drift");
  REQUIRE(up != nullptr);
  CHECK(up->value == Approx(0.0).epsilon(1e-12));  // CDF only moves down
  const CriterionDiag* esc = v.find("escape_mass");
  REQUIRE(esc != nullptr);
  CHECK(esc->value == Approx(0.875).epsilon(1e-9));  // escapes, yet...
  CHECK(!esc->pass);
  const CriterionDiag* conf = v.find("extreme_confinement");
  REQUIRE(conf != nullptr);
  CHECK(conf->pass);  // ...the extremes settle: spread 7e-5 within tolerance
  CHECK(conf->value == Approx(1.0 / 12500 - 1.0 / 100000).epsilon(1e-9));

  // Its limiting measure is the point mass at zero.
  EmpiricalMeasure m = empirical_measure(x, v);
  CHECK(m.mass_closed(-0.01, 0.01) == R(99901, 100000));
  CHECK(m.total_mass() == R(1));
}

TEST_CASE("sparse spikes keep a countable law normalized") {
  SequencePrefix x = named_sequence("power2_spikes", 100000);
  EmpiricalVerdict v = classify_countable(x, sched(100000, 0.01));
  CHECK(v.status == DomainStatus::In);
  EmpiricalMeasure m = empirical_measure(x, v);
  CHECK(m.kind == EmpiricalMeasure::Kind::CountablePmf);
  CHECK(m.npmf.at(1) == R(99983, 100000));
  CHECK(m.npmf.size() == 18);  // the value 1 plus spikes 2, 3, 5, ..., 65537
  CHECK(m.mass_point(1.0) >= R(99, 100));
  CHECK(m.total_mass() == R(1));

  // But its running average oscillates between 2 and 3 forever.
  EmpiricalVerdict a = classify_real_avg(x, sched(100000, 0.01));
  CHECK(a.status == DomainStatus::Out);
  const CriterionDiag* rise = a.find("max_rise");
  const CriterionDiag* fall = a.find("max_fall");
  REQUIRE(rise != nullptr);
  REQUIRE(fall != nullptr);
  CHECK(rise->value > 0.9);
  CHECK(fall->value > 0.9);
  const CriterionDiag* fm = a.find("final_mean");
  REQUIRE(fm != nullptr);
  CHECK(fm->value == Approx(2.31071).epsilon(1e-6));

  // Seen as a real-valued sample it still converges in distribution.
  EmpiricalVerdict vr = classify_real(x.as_real(), sched(100000, 0.01));
  CHECK(vr.status == DomainStatus::In);
}

TEST_CASE("iid samples from the catalogue are accepted") {
  EmpiricalVerdict b = classify_finite(
      generate(DistSpec::bernoulli(0.5), 42, 10000), sched(10000, 0.02));
  CHECK(b.status == DomainStatus::In);

  EmpiricalVerdict u = classify_real(
      generate(DistSpec::uniform01(), 7, 10000), sched(10000, 0.02));
  CHECK(u.status == DomainStatus::In);

  EmpiricalVerdict c = classify_real(
      generate(DistSpec::cauchy(0.0, 1.0), 11, 100000), sched(100000, 0.02));
  CHECK(c.status == DomainStatus::In);  // heavy tails, but still iid

  EmpiricalVerdict g = classify_countable(
      generate(DistSpec::geometric(0.5), 5, 10000), sched(10000, 0.05));
  CHECK(g.status == DomainStatus::In);

  EmpiricalVerdict e = classify_real_avg(
      generate(DistSpec::exponential(1.0), 3, 100000), sched(100000, 0.05));
  CHECK(e.status == DomainStatus::In);
  const CriterionDiag* fm = e.find("final_mean");
  REQUIRE(fm != nullptr);
  CHECK(fm->value == Approx(1.0).epsilon(0.05));
}

TEST_CASE("classifier dispatch and input validation") {
  SequencePrefix fin = named_sequence("osc_log2", 1000);
  SequencePrefix nat = named_sequence("power2_spikes", 1000);
  SequencePrefix rl = named_sequence("neg_one_over_i", 1000);
  CHECK(classify_auto(fin, sched(1000, 0.05)).classifier == "finite");
  CHECK(classify_auto(nat, sched(1000, 0.05)).classifier == "countable");
  CHECK(classify_auto(rl, sched(1000, 0.05)).classifier == "real_cdf");
  CHECK_THROWS_AS(classify_finite(rl, sched(1000, 0.05)), std::invalid_argument);
  CHECK_THROWS_AS(classify_real(fin, sched(1000, 0.05)), std::invalid_argument);
  CHECK_THROWS_AS(classify_countable(rl, sched(1000, 0.05)), std::invalid_argument);
  // Finite data embeds into the countable classifier; naturals average fine.
  CHECK_NOTHROW(classify_countable(fin, sched(1000, 0.05)));
  CHECK_NOTHROW(classify_real_avg(nat, sched(1000, 0.05)));
}

TEST_CASE("measures are only read off in-domain distribution verdicts") {
  SequencePrefix bad = named_sequence("one_over_i", 100000);
  EmpiricalVerdict out = classify_real(bad, sched(100000, 0.01));
  CHECK_THROWS_AS(empirical_measure(bad, out), std::logic_error);

  SequencePrefix ok = generate(DistSpec::exponential(1.0), 3, 100000);
  EmpiricalVerdict avg = classify_real_avg(ok, sched(100000, 0.05));
  REQUIRE(avg.status == DomainStatus::In);
  CHECK_THROWS_AS(empirical_measure(ok, avg), std::logic_error);
}

TEST_CASE("positive part turns -1/i into the zero sequence") {
  SequencePrefix x = positive_part(named_sequence("neg_one_over_i", 100000));
  EmpiricalVerdict v = classify_real(x, sched(100000, 0.01));
  CHECK(v.status == DomainStatus::In);
  EmpiricalMeasure m = empirical_measure(x, v);
  CHECK(m.xs.size() == 1);
  CHECK(m.xs[0] == 0.0);
  CHECK(m.weights[0] == R(1));
  // Positive part is only defined for real-valued prefixes.
  CHECK_THROWS_AS(positive_part(named_sequence("naturals", 10)),
                  std::invalid_argument);
}

TEST_CASE("empirical cdf measures support interval queries") {
  SequencePrefix x;
  x.kind = ValueKind::Real;
  x.reals = {0.5, 1.5, 1.5, 2.5};
  EmpiricalMeasure m = empirical_cdf(x, 4);
  CHECK(m.xs == std::vector<double>{0.5, 1.5, 2.5});
  CHECK(m.weights == std::vector<R>{R(1, 4), R(1, 2), R(1, 4)});
  CHECK(m.mass_closed(0.5, 1.5) == R(3, 4));
  CHECK(m.mass_closed(0.6, 1.4) == R(0));
  CHECK(m.mass_point(2.5) == R(1, 4));
  CHECK(m.cdf_at(1.5) == Approx(0.75));
  CHECK(m.cdf_at(1.49) == Approx(0.25));
  CHECK(m.cdf_at(-1.0) == Approx(0.0));
}

TEST_CASE("finite and countable measures answer the same queries") {
  EmpiricalMeasure f;
  f.kind = EmpiricalMeasure::Kind::FinitePmf;
  f.alphabet_size = 3;
  f.pmf = {R(1, 2), R(1, 3), R(1, 6)};
  CHECK(f.mass_closed(1, 2) == R(1, 2));
  CHECK(f.mass_point(1) == R(1, 3));
  CHECK(f.cdf_at(0.0) == Approx(0.5));
  CHECK(f.total_mass() == R(1));

  EmpiricalMeasure c;
  c.kind = EmpiricalMeasure::Kind::CountablePmf;
  c.npmf = {{1, R(1, 2)}, {5, R(1, 2)}};
  CHECK(c.mass_closed(0, 4) == R(1, 2));
  CHECK(c.cdf_at(5.0) == Approx(1.0));
  CHECK(c.total_mass() == R(1));
}

TEST_CASE("piecewise test functions evaluate and extend linearly") {
  PiecewiseFn tent;
  tent.bx = {-1.0, 0.0, 1.0};
  tent.by = {0.0, 1.0, 0.0};
  CHECK_NOTHROW(tent.validate());
  CHECK(tent(0.0) == Approx(1.0));
  CHECK(tent(0.5) == Approx(0.5));
  CHECK(tent(-0.5) == Approx(0.5));
  CHECK(tent(3.0) == Approx(-2.0));   // right extension: last slope -1
  CHECK(tent(-3.0) == Approx(-2.0));  // left extension: first slope +1

  PiecewiseFn r = PiecewiseFn::relu();
  CHECK(r(-5.0) == Approx(0.0));
  CHECK(r(0.25) == Approx(0.25));
  CHECK(r(5.0) == Approx(5.0));  // slope-1 extension keeps it max(x, 0)

  PiecewiseFn bad;
  bad.bx = {0.0};
  bad.by = {1.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.bx = {0.0, 0.0};
  bad.by = {1.0, 2.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("expectations agree whether taken over the path or the measure") {
  SequencePrefix x;
  x.kind = ValueKind::Real;
  x.reals = {-1.0, 2.0, 0.5, -0.25};
  ExpectationResult r = empirical_expectation(x, PiecewiseFn::relu(), 4);
  CHECK(r.via_average == Approx(0.625));
  CHECK(r.via_measure == Approx(0.625));
  CHECK(r.discrepancy < 1e-12);

  SequencePrefix u = generate(DistSpec::uniform01(), 9, 20000);
  ExpectationResult e = empirical_expectation(u, PiecewiseFn::relu(), 20000);
  CHECK(e.discrepancy < 1e-9);           // two routes, same number
  CHECK(e.via_average == Approx(0.5).epsilon(0.02));  // E[max(U,0)] = 1/2
}
