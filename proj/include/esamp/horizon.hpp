#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace esamp {

// Checkpoint schedule for empirical-domain classification.  Statistics are
// compared across the checkpoints; `guard` marks the end of the warm-up
// prefix used to pick data-driven reference values (it is always the first
// checkpoint).  `epsilon` is the stability tolerance.
struct HorizonSchedule {
  std::vector<size_t> checkpoints;  // strictly increasing, >= 2 entries
  double epsilon = 0.01;
  size_t guard = 0;  // == checkpoints.front()

  void validate(size_t n) const {
    if (checkpoints.size() < 2)
      throw std::invalid_argument("horizon: need at least 2 checkpoints");
    for (size_t i = 0; i < checkpoints.size(); ++i) {
      if (checkpoints[i] < 1)
        throw std::invalid_argument("horizon: checkpoints must be >= 1");
      if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
        throw std::invalid_argument("horizon: checkpoints must strictly increase");
    }
    if (checkpoints.back() > n)
      throw std::invalid_argument("horizon: last checkpoint exceeds sequence length");
    if (!(epsilon > 0))
      throw std::invalid_argument("horizon: epsilon must be positive");
    if (guard != checkpoints.front())
      throw std::invalid_argument("horizon: guard must equal first checkpoint");
  }

  static HorizonSchedule defaults(size_t n) {
    if (n < 8) throw std::invalid_argument("horizon: need at least 8 samples");
    HorizonSchedule h;
    std::vector<size_t> cs = {n / 8, n / 4, n / 2, n};
    for (size_t c : cs)
      if (h.checkpoints.empty() || c > h.checkpoints.back())
        h.checkpoints.push_back(c);
    h.guard = h.checkpoints.front();
    h.epsilon = std::max(0.01, 4.0 / std::sqrt(static_cast<double>(n)));
    return h;
  }
};

}  // namespace esamp
