#include <doctest.h>

#include <numeric>
#include <stdexcept>
#include <vector>

#include "esamp/resample.hpp"

using namespace esamp;
using R = Rational;

namespace {

// Independent oracle: enumerate index tuples directly instead of using
// occupancy formulas. Injective tuples for the without-replacement law,
// all tuples for the with-replacement one.
CylinderState brute_force(const std::vector<int>& x, const FiniteSpace& A,
                          int m, bool injective) {
  int n = static_cast<int>(x.size());
  BigInt denom = 1;
  for (int j = 0; j < m; ++j) denom *= injective ? BigInt(n - j) : BigInt(n);
  CylinderState::Pmf out;
  std::vector<int> idx;
  std::vector<char> used(static_cast<size_t>(n), 0);
  struct Rec {
    const std::vector<int>& x;
    std::vector<int>& idx;
    std::vector<char>& used;
    int n, m;
    bool injective;
    const BigInt& denom;
    CylinderState::Pmf& out;
    void go() {
      if (static_cast<int>(idx.size()) == m) {
        Word w;
        for (int i : idx) w.push_back(x[static_cast<size_t>(i)]);
        out[w] += Rational(1, denom);
        return;
      }
      for (int i = 0; i < n; ++i) {
        if (injective && used[static_cast<size_t>(i)]) continue;
        used[static_cast<size_t>(i)] = 1;
        idx.push_back(i);
        go();
        idx.pop_back();
        used[static_cast<size_t>(i)] = 0;
      }
    }
  } rec{x, idx, used, n, m, injective, denom, out};
  rec.go();
  return CylinderState(A, m, std::move(out));
}

}  // namespace

TEST_CASE("occupancy formulas match tuple enumeration exactly") {
  FiniteSpace A2("A", 2), A3("A", 3);
  struct Case {
    std::vector<int> x;
    const FiniteSpace& A;
    int m;
  };
  std::vector<Case> cases{{{0, 0, 1}, A2, 2},
                          {{0, 1, 2, 2}, A3, 2},
                          {{0, 1, 2, 2}, A3, 3},
                          {{0, 0, 0, 1, 1}, A2, 3},
                          {{1, 1, 1}, A2, 2}};
  for (const auto& c : cases) {
    int n = static_cast<int>(c.x.size());
    CAPTURE(n);
    CAPTURE(c.m);
    CHECK(resample_truncated(c.x, c.A, c.m, n) == brute_force(c.x, c.A, c.m, true));
    CHECK(resample_independent(c.x, c.A, c.m, n) ==
          brute_force(c.x, c.A, c.m, false));
  }
}

TEST_CASE("frozen values for the three-flip prefix") {
  FiniteSpace A("A", 2);
  CylinderState t = resample_truncated({0, 0, 1}, A, 2, 3);
  CHECK(t.mass({0, 0}) == R(1, 3));
  CHECK(t.mass({0, 1}) == R(1, 3));
  CHECK(t.mass({1, 0}) == R(1, 3));
  CHECK(t.mass({1, 1}) == R(0));  // only one 1 available: cannot draw it twice
  CylinderState q = resample_independent({0, 0, 1}, A, 2, 3);
  CHECK(q.mass({1, 1}) == R(1, 9));
  CHECK(q.mass({0, 0}) == R(4, 9));
}

TEST_CASE("resamples are exchangeable and depend only on occupancies") {
  FiniteSpace A("A", 3);
  std::vector<int> x{0, 1, 2, 2, 1, 0};
  CylinderState t = resample_truncated(x, A, 3, 6);
  CylinderState q = resample_independent(x, A, 3, 6);
  CHECK(is_exchangeable(t));
  CHECK(is_exchangeable(q));
  std::vector<int> shuffled{2, 0, 1, 0, 2, 1};  // same letter counts
  CHECK(resample_truncated(shuffled, A, 3, 6) == t);
  CHECK(resample_independent(shuffled, A, 3, 6) == q);
}

TEST_CASE("resamples form a projective family in the word length") {
  FiniteSpace A("A", 3);
  std::vector<int> x{0, 1, 2, 2};
  CHECK(marginal(resample_truncated(x, A, 3, 4), 2) ==
        resample_truncated(x, A, 2, 4));
  CHECK(marginal(resample_independent(x, A, 3, 4), 2) ==
        resample_independent(x, A, 2, 4));
}

TEST_CASE("independent resampling is iid sampling from the empirical measure") {
  FiniteSpace A("A", 3);
  std::vector<int> x{0, 1, 1, 2, 2, 2};
  for (int m : {1, 2, 3}) {
    CHECK(resample_independent(x, A, m, 6) ==
          iid_truncation(A, {R(1, 6), R(2, 6), R(3, 6)}, m));
  }
}

TEST_CASE("total variation between the two laws has exact closed forms") {
  FiniteSpace A("A", 2);
  // Unbalanced coin: seven zeros, three ones, pairs.
  std::vector<int> x(7, 0);
  x.insert(x.end(), 3, 1);
  R tv = total_variation(resample_truncated(x, A, 2, 10),
                         resample_independent(x, A, 2, 10));
  CHECK(tv == R(7, 150));
  CHECK(tv <= R(2 * 1, 2 * 10));  // m(m-1)/(2n) with m=2, n=10

  // Balanced coin: TV = 1/(2(n-1)), strictly decreasing in n.
  R prev = R(1);
  for (int n : {4, 100, 1000}) {
    std::vector<int> fair(static_cast<size_t>(n / 2), 0);
    fair.insert(fair.end(), static_cast<size_t>(n / 2), 1);
    R g = total_variation(resample_truncated(fair, A, 2, n),
                          resample_independent(fair, A, 2, n));
    CHECK(g == R(1, 2 * (n - 1)));
    CHECK(g < prev);
    prev = g;
  }
}

TEST_CASE("the TV bound holds on every enumerated case") {
  FiniteSpace A3("A", 3);
  std::vector<std::pair<std::vector<int>, int>> cases{
      {{0, 1, 2, 2}, 2}, {{0, 1, 2, 2}, 3}, {{0, 0, 1, 1, 2}, 3}};
  for (const auto& [x, m] : cases) {
    int n = static_cast<int>(x.size());
    R tv = total_variation(resample_truncated(x, A3, m, n),
                           resample_independent(x, A3, m, n));
    CHECK(tv <= R(static_cast<long long>(m) * (m - 1), 2LL * n));
  }
}

TEST_CASE("horizon argument uses exactly the first n entries") {
  FiniteSpace A("A", 2);
  std::vector<int> x{0, 1, 1, 1};
  // n = 2 sees one of each letter.
  CylinderState t = resample_truncated(x, A, 2, 2);
  CHECK(t.mass({0, 1}) == R(1, 2));
  CHECK(t.mass({1, 0}) == R(1, 2));
  CHECK_THROWS_AS(resample_truncated(x, A, 2, 5), std::invalid_argument);
  CHECK_THROWS_AS(resample_truncated(x, A, 3, 2), std::invalid_argument);  // m > n
  CHECK_THROWS_AS(resample_truncated({0, 2}, A, 1, 2), std::invalid_argument);
}

TEST_CASE("word enumeration refuses to blow up") {
  int k = 1500;
  FiniteSpace big("A", k);
  std::vector<int> distinct(static_cast<size_t>(k));
  std::iota(distinct.begin(), distinct.end(), 0);
  CHECK_THROWS_AS(resample_truncated(distinct, big, 2, k), std::invalid_argument);
  // The guard counts distinct symbols, not alphabet size: a constant prefix
  // over the same huge alphabet is fine.
  CHECK_NOTHROW(resample_truncated(std::vector<int>(5, 3), big, 2, 5));
}

TEST_CASE("edge cases: empty words and single draws") {
  FiniteSpace A("A", 2);
  CylinderState e = resample_truncated({0, 1}, A, 0, 2);
  CHECK(e.length() == 0);
  CHECK(e.mass({}) == R(1));
  CylinderState one = resample_truncated({0, 0, 1}, A, 1, 3);
  CHECK(one == resample_independent({0, 0, 1}, A, 1, 3));  // m = 1: laws agree
}
