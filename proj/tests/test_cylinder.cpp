#include <doctest.h>

#include <nlohmann/json.hpp>
#include <stdexcept>

#include "esamp/cylinder.hpp"

using namespace esamp;
using R = Rational;

TEST_CASE("cylinder states validate mass, length, and symbols") {
  FiniteSpace A("A", 2);
  CHECK_NOTHROW(CylinderState(A, 2, {{{0, 1}, R(1, 2)}, {{1, 0}, R(1, 2)}}));
  CHECK_THROWS_AS(CylinderState(A, 2, {{{0, 1}, R(1, 2)}}), std::invalid_argument);
  CHECK_THROWS_AS(CylinderState(A, 2, {{{0}, R(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(CylinderState(A, 1, {{{7}, R(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(CylinderState(A, 1, {{{0}, R(3, 2)}, {{1}, R(-1, 2)}}),
                  std::invalid_argument);
  // Zero-mass words are dropped, not stored.
  CylinderState s(A, 1, {{{0}, R(1)}, {{1}, R(0)}});
  CHECK(s.pmf().size() == 1);
  CHECK(s.mass({1}) == R(0));
}

TEST_CASE("marginals form a tower down to the empty word") {
  FiniteSpace A("A", 2);
  CylinderState s(A, 3,
                  {{{0, 0, 1}, R(1, 4)}, {{0, 1, 1}, R(1, 4)}, {{1, 0, 0}, R(1, 2)}});
  CylinderState m2 = marginal(s, 2);
  CHECK(m2.mass({0, 0}) == R(1, 4));
  CHECK(m2.mass({0, 1}) == R(1, 4));
  CHECK(m2.mass({1, 0}) == R(1, 2));
  CHECK(marginal(m2, 1) == marginal(s, 1));  // tower property
  CHECK(marginal(s, 1).mass({0}) == R(1, 2));
  CylinderState m0 = marginal(s, 0);
  CHECK(m0.length() == 0);
  CHECK(m0.mass({}) == R(1));
  CHECK_THROWS_AS(marginal(s, 4), std::invalid_argument);
}

TEST_CASE("permute routes coordinates through sigma") {
  FiniteSpace A("A", 3);
  CylinderState pt = CylinderState::point_mass(A, {0, 1, 2});
  FinitePermutation swap01 = FinitePermutation::adjacent_transposition(3, 0);
  // New word reads old coordinates through sigma: w[j] = v[sigma(j)].
  CHECK(permute(pt, swap01) == CylinderState::point_mass(A, {1, 0, 2}));
  CHECK(permute(permute(pt, swap01), swap01) == pt);
}

TEST_CASE("permutation action is contravariant") {
  FiniteSpace A("A", 3);
  // Deliberately asymmetric state.
  CylinderState s(A, 3,
                  {{{0, 1, 2}, R(1, 2)}, {{2, 2, 0}, R(1, 3)}, {{1, 0, 0}, R(1, 6)}});
  FinitePermutation sigma = FinitePermutation::adjacent_transposition(3, 0);
  FinitePermutation tau = FinitePermutation::adjacent_transposition(3, 1);
  CHECK(permute(permute(s, tau), sigma) == permute(s, tau.after(sigma)));
  CHECK(permute(permute(s, sigma), tau) == permute(s, sigma.after(tau)));
  // The two composites genuinely differ, so the law above is not vacuous.
  CHECK(permute(s, tau.after(sigma)) != permute(s, sigma.after(tau)));
  // Inverse undoes the action.
  CHECK(permute(permute(s, sigma.inverse()), sigma) == s);
}

TEST_CASE("iid truncations multiply letter probabilities") {
  FiniteSpace A("A", 2);
  std::vector<R> p{R(1, 3), R(2, 3)};
  CylinderState s = iid_truncation(A, p, 3);
  CHECK(s.mass({1, 1, 0}) == R(4, 27));
  CHECK(s.mass({0, 0, 0}) == R(1, 27));
  CHECK(s.mass({1, 1, 1}) == R(8, 27));
  CHECK(marginal(s, 2) == iid_truncation(A, p, 2));  // projective family
  CHECK(is_exchangeable(s));
  CHECK_THROWS_AS(iid_truncation(A, {R(1, 2)}, 2), std::invalid_argument);
  CHECK_THROWS_AS(iid_truncation(A, {R(1, 2), R(1, 3)}, 2), std::invalid_argument);
}

TEST_CASE("mixtures of iid laws are exchangeable but not independent") {
  FiniteSpace A("A", 2);
  MixtureModel m(A, {R(1, 4), R(3, 4)},
                 {{R(1, 2), R(1, 2)}, {R(1, 3), R(2, 3)}});
  CylinderState s = mixture_state(m, 2);
  // 1/4 * 1/4 + 3/4 * 2/9 = 11/48, computed by hand.
  CHECK(s.mass({0, 1}) == R(11, 48));
  CHECK(s.mass({1, 0}) == R(11, 48));
  CHECK(is_exchangeable(s));
  // Not a product law: P(0,1) != P(0)P(1).
  CylinderState m1 = marginal(s, 1);
  CHECK(s.mass({0, 1}) != m1.mass({0}) * m1.mass({1}));
  CHECK(!m.all_point_masses());
}

TEST_CASE("point-mass mixtures recover their components exactly") {
  FiniteSpace A("A", 3);
  MixtureModel m(A, {R(1, 2), R(1, 3), R(1, 6)},
                 {{R(1), R(0), R(0)}, {R(0), R(1), R(0)}, {R(0), R(0), R(1)}});
  CHECK(m.all_point_masses());
  CylinderState s = mixture_state(m, 3);
  CHECK(s.mass({0, 0, 0}) == R(1, 2));
  CHECK(s.mass({1, 1, 1}) == R(1, 3));
  CHECK(s.mass({2, 2, 2}) == R(1, 6));
  CHECK(s.pmf().size() == 3);
  CHECK(is_exchangeable(s));
}

TEST_CASE("exchangeability test detects order dependence") {
  FiniteSpace A("A", 2);
  CHECK(!is_exchangeable(CylinderState::point_mass(A, {0, 1})));
  CHECK(is_exchangeable(CylinderState::point_mass(A, {1, 1, 1})));
  CylinderState sym(A, 2, {{{0, 1}, R(1, 2)}, {{1, 0}, R(1, 2)}});
  CHECK(is_exchangeable(sym));
}

TEST_CASE("mixture model JSON round-trips") {
  FiniteSpace A("A", 2);
  MixtureModel m(A, {R(1, 4), R(3, 4)},
                 {{R(1, 2), R(1, 2)}, {R(1, 3), R(2, 3)}});
  MixtureModel back = MixtureModel::from_json(m.to_json());
  CHECK(back.weights == m.weights);
  CHECK(back.components == m.components);
  CHECK(mixture_state(back, 2) == mixture_state(m, 2));
  // Weights that do not sum to 1 are rejected.
  auto j = m.to_json();
  j["weights"] = {"1/4", "1/4"};
  CHECK_THROWS_AS(MixtureModel::from_json(j), std::invalid_argument);
}

TEST_CASE("cylinder JSON uses comma-joined letter names as keys") {
  FiniteSpace A("bit", std::vector<std::string>{"0", "1"});
  CylinderState s(A, 2, {{{0, 1}, R(1, 3)}, {{1, 1}, R(2, 3)}});
  nlohmann::ordered_json j = cylinder_to_json(s);
  CHECK(j["length"] == 2);
  CHECK(j["pmf"].contains("0,1"));
  CHECK(j["pmf"]["0,1"] == "1/3");
  CHECK(j["pmf"]["1,1"] == "2/3");
}
