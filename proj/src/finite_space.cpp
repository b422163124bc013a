#include "esamp/finite_space.hpp"

#include <stdexcept>

namespace esamp {

FiniteSpace::FiniteSpace(std::string label, int size)
    : label_(std::move(label)), size_(size) {
  if (size < 0) throw std::invalid_argument("FiniteSpace: negative size");
}

FiniteSpace::FiniteSpace(std::string label, std::vector<std::string> names)
    : label_(std::move(label)),
      size_(static_cast<int>(names.size())),
      names_(std::move(names)) {}

std::string FiniteSpace::name_of(int i) const {
  if (i < 0 || i >= size_) throw std::out_of_range("FiniteSpace::name_of");
  if (!names_.empty()) return names_[static_cast<size_t>(i)];
  return std::to_string(i);
}

int FiniteSpace::index_of(const std::string& name) const {
  for (int i = 0; i < static_cast<int>(names_.size()); ++i)
    if (names_[static_cast<size_t>(i)] == name) return i;
  try {
    size_t pos = 0;
    int idx = std::stoi(name, &pos);
    if (pos == name.size() && idx >= 0 && idx < size_) return idx;
  } catch (...) {
  }
  return -1;
}

FiniteSpace FiniteSpace::unit() { return FiniteSpace("I", std::vector<std::string>{"()"}); }

bool compatible(const FiniteSpace& a, const FiniteSpace& b) {
  return a.size() == b.size();
}

FiniteSpace product(const FiniteSpace& a, const FiniteSpace& b) {
  std::string label = a.label() + "*" + b.label();
  long long n = static_cast<long long>(a.size()) * b.size();
  // Name products only while small; large spaces keep index names.
  if (n > 0 && n <= 256) {
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(n));
    for (int i = 0; i < a.size(); ++i)
      for (int j = 0; j < b.size(); ++j)
        names.push_back("(" + a.name_of(i) + "," + b.name_of(j) + ")");
    return FiniteSpace(std::move(label), std::move(names));
  }
  return FiniteSpace(std::move(label), static_cast<int>(n));
}

}  // namespace esamp
