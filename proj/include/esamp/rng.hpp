#pragma once

#include <cstdint>

namespace esamp {

// Counter-based generator built on the splitmix64 finalizer:
//   out(i) = mix64(key + i * GAMMA)
//   key    = mix64(mix64(seed) ^ mix64(stream ^ STREAM_SALT))
// Every output is a pure function of (seed, stream, counter), so per-trial
// substreams CounterRng(seed, trial) are independent of evaluation order and
// identical whether trials run serially or in parallel. No library
// distribution objects are used anywhere (their sequences are
// implementation-defined); all variate transforms are spelled out in
// distributions.cpp.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed, uint64_t stream = 0);

  uint64_t next_u64();
  // Uniform in [0, 1): top 53 bits scaled by 2^-53.
  double next_unit();
  // Uniform in {0, ..., bound-1} by rejection (exact, unbiased).
  uint64_t next_below(uint64_t bound);

  static uint64_t mix64(uint64_t z);

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

inline uint64_t CounterRng::mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

inline CounterRng::CounterRng(uint64_t seed, uint64_t stream)
    : key_(mix64(mix64(seed) ^ mix64(stream ^ 0x5851f42d4c957f2dULL))) {}

inline uint64_t CounterRng::next_u64() {
  return mix64(key_ + (counter_++) * 0x9e3779b97f4a7c15ULL);
}

inline double CounterRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

inline uint64_t CounterRng::next_below(uint64_t bound) {
  if (bound == 0) return 0;
  uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % bound;
}

}  // namespace esamp
