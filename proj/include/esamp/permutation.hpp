#pragma once

#include <cstdint>
#include <vector>

namespace esamp {

class CounterRng;

// A permutation of {0, ..., n-1}, stored as the image table img[i] = s(i).
class FinitePermutation {
 public:
  explicit FinitePermutation(std::vector<int> images);
  static FinitePermutation identity(int n);
  // Swaps positions i and i+1.
  static FinitePermutation adjacent_transposition(int n, int i);
  static FinitePermutation random(int n, CounterRng& rng);  // Fisher-Yates

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[static_cast<size_t>(i)]; }
  FinitePermutation inverse() const;
  // Function composition: (a.then_after(b))(i) = a(b(i)), i.e. "a o b".
  FinitePermutation after(const FinitePermutation& b) const;

  friend bool operator==(const FinitePermutation& a, const FinitePermutation& b) {
    return a.img_ == b.img_;
  }

 private:
  std::vector<int> img_;
};

}  // namespace esamp
