#include "esamp/resample.hpp"

#include <stdexcept>

namespace esamp {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::vector<long long> occupancies(const std::vector<int>& prefix,
                                   const FiniteSpace& alphabet, int n) {
  require(n >= 1 && n <= static_cast<int>(prefix.size()),
          "resample: horizon n must satisfy 1 <= n <= |prefix|");
  std::vector<long long> c(static_cast<size_t>(alphabet.size()), 0);
  for (int i = 0; i < n; ++i) {
    int v = prefix[static_cast<size_t>(i)];
    require(v >= 0 && v < alphabet.size(), "resample: symbol out of range");
    ++c[static_cast<size_t>(v)];
  }
  return c;
}

// Enumerates length-m words over symbols with positive occupancy; per-word
// numerators are products of falling factorials (injective) or plain powers
// (independent). Support size is bounded by (#distinct symbols)^m.
CylinderState enumerate_words(const FiniteSpace& alphabet,
                              const std::vector<long long>& c, int m, int n,
                              bool injective) {
  std::vector<int> symbols;
  for (int a = 0; a < static_cast<int>(c.size()); ++a)
    if (c[static_cast<size_t>(a)] > 0) symbols.push_back(a);
  double words = 1;
  for (int i = 0; i < m; ++i) words *= static_cast<double>(symbols.size());
  require(words <= 2e6, "resample: word enumeration too large (support^m > 2e6)");

  BigInt denom = 1;
  for (int j = 0; j < m; ++j)
    denom *= injective ? BigInt(n - j) : BigInt(n);
  require(denom > 0, "resample: m exceeds n");

  CylinderState::Pmf out;
  Word w;
  std::vector<long long> used(c.size(), 0);
  struct Rec {
    const std::vector<int>& symbols;
    const std::vector<long long>& c;
    std::vector<long long>& used;
    Word& w;
    int m;
    bool injective;
    const BigInt& denom;
    CylinderState::Pmf& out;
    void go(const BigInt& num) {
      if (num == 0) return;
      if (static_cast<int>(w.size()) == m) {
        out.emplace(w, Rational(num, denom));
        return;
      }
      for (int a : symbols) {
        long long avail =
            injective ? c[static_cast<size_t>(a)] - used[static_cast<size_t>(a)]
                      : c[static_cast<size_t>(a)];
        if (avail <= 0) continue;
        w.push_back(a);
        ++used[static_cast<size_t>(a)];
        go(num * avail);
        --used[static_cast<size_t>(a)];
        w.pop_back();
      }
    }
  } rec{symbols, c, used, w, m, injective, denom, out};
  rec.go(BigInt(1));
  return CylinderState(alphabet, m, std::move(out));
}

}  // namespace

CylinderState resample_truncated(const std::vector<int>& prefix,
                                 const FiniteSpace& alphabet, int m, int n) {
  require(m >= 0 && m <= n, "resample_truncated: need 0 <= m <= n");
  auto c = occupancies(prefix, alphabet, n);
  return enumerate_words(alphabet, c, m, n, /*injective=*/true);
}

CylinderState resample_independent(const std::vector<int>& prefix,
                                   const FiniteSpace& alphabet, int m, int n) {
  require(m >= 0, "resample_independent: negative m");
  auto c = occupancies(prefix, alphabet, n);
  return enumerate_words(alphabet, c, m, n, /*injective=*/false);
}

Rational total_variation(const CylinderState& a, const CylinderState& b) {
  if (a.length() != b.length())
    throw std::invalid_argument("total_variation: length mismatch");
  Rational l1 = 0;
  auto ia = a.pmf().begin();
  auto ib = b.pmf().begin();
  while (ia != a.pmf().end() || ib != b.pmf().end()) {
    if (ib == b.pmf().end() || (ia != a.pmf().end() && ia->first < ib->first)) {
      l1 += ia->second;
      ++ia;
    } else if (ia == a.pmf().end() || ib->first < ia->first) {
      l1 += ib->second;
      ++ib;
    } else {
      l1 += abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return l1 / 2;
}

}  // namespace esamp
