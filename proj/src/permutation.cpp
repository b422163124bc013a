#include "esamp/permutation.hpp"

#include <stdexcept>

#include "esamp/rng.hpp"

namespace esamp {

FinitePermutation::FinitePermutation(std::vector<int> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (int v : img_) {
    if (v < 0 || v >= static_cast<int>(img_.size()) || seen[static_cast<size_t>(v)])
      throw std::invalid_argument("FinitePermutation: not a bijection");
    seen[static_cast<size_t>(v)] = true;
  }
}

FinitePermutation FinitePermutation::identity(int n) {
  std::vector<int> img(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = i;
  return FinitePermutation(std::move(img));
}

FinitePermutation FinitePermutation::adjacent_transposition(int n, int i) {
  if (i < 0 || i + 1 >= n)
    throw std::invalid_argument("adjacent_transposition: index out of range");
  FinitePermutation p = identity(n);
  std::swap(p.img_[static_cast<size_t>(i)], p.img_[static_cast<size_t>(i) + 1]);
  return p;
}

FinitePermutation FinitePermutation::random(int n, CounterRng& rng) {
  std::vector<int> img(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(i) + 1));
    std::swap(img[static_cast<size_t>(i)], img[static_cast<size_t>(j)]);
  }
  return FinitePermutation(std::move(img));
}

FinitePermutation FinitePermutation::inverse() const {
  std::vector<int> inv(img_.size());
  for (int i = 0; i < size(); ++i) inv[static_cast<size_t>(img_[static_cast<size_t>(i)])] = i;
  return FinitePermutation(std::move(inv));
}

FinitePermutation FinitePermutation::after(const FinitePermutation& b) const {
  if (size() != b.size())
    throw std::invalid_argument("FinitePermutation::after: size mismatch");
  std::vector<int> img(img_.size());
  for (int i = 0; i < size(); ++i)
    img[static_cast<size_t>(i)] = (*this)(b(i));
  return FinitePermutation(std::move(img));
}

}  // namespace esamp
