#pragma once

#include <string>
#include <vector>

namespace esamp {

// A finite measurable space: a labelled size plus optional element names.
// Structural identity (what composition and equality care about) is the size;
// label and names are presentation metadata carried through operations.
class FiniteSpace {
 public:
  FiniteSpace() = default;
  FiniteSpace(std::string label, int size);
  FiniteSpace(std::string label, std::vector<std::string> names);

  const std::string& label() const { return label_; }
  int size() const { return size_; }
  bool has_names() const { return !names_.empty(); }
  std::string name_of(int i) const;
  // Index of a named element, or -1. Falls back to parsing a decimal index.
  int index_of(const std::string& name) const;

  static FiniteSpace unit();  // the one-point space I

 private:
  std::string label_;
  int size_ = 0;
  std::vector<std::string> names_;
};

bool compatible(const FiniteSpace& a, const FiniteSpace& b);

// Product space A x B, flat row-major indexing: (i, j) -> i*|B| + j.
FiniteSpace product(const FiniteSpace& a, const FiniteSpace& b);
inline int pair_index(const FiniteSpace& /*a*/, const FiniteSpace& b, int i, int j) {
  return i * b.size() + j;
}

}  // namespace esamp
