#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "esamp/distributions.hpp"

namespace esamp {

enum class ValueKind { Finite, Nat, Real };

// A finite prefix of an observed sequence, tagged with where it came from.
// Finite prefixes carry symbols 0..k-1; Nat prefixes carry naturals >= 1;
// Real prefixes carry doubles.
struct SequencePrefix {
  ValueKind kind = ValueKind::Real;
  int alphabet_size = 0;            // Finite only
  std::vector<long long> ints;      // Finite or Nat
  std::vector<double> reals;        // Real
  std::string provenance;

  size_t size() const {
    return kind == ValueKind::Real ? reals.size() : ints.size();
  }
  double real_at(size_t i) const;  // any kind, viewed in the reals

  // Reinterpret a Finite/Nat prefix as a real-valued one.
  SequencePrefix as_real() const;
};

ValueKind parse_kind(const std::string& s);  // "finite" | "nat" | "real"

// One value per line; blank lines and lines starting with '#' are skipped.
SequencePrefix load_csv(std::istream& in, ValueKind kind, int alphabet_size = 0);
SequencePrefix load_csv_file(const std::string& path, ValueKind kind,
                             int alphabet_size = 0);

// Draws n values from the catalogue distribution using substream `stream` of
// `seed`. The natural value kind is inferred from the distribution unless
// overridden (a finite/nat draw may always be widened to Real).
SequencePrefix generate(const DistSpec& dist, uint64_t seed, size_t n,
                        uint64_t stream = 0);
// {"dist": ..., "params": {...}, "seed": 7, "n": 1000}
SequencePrefix generate_from_json(const nlohmann::json& spec);

// x+ : coordinatewise positive part of a real prefix.
SequencePrefix positive_part(const SequencePrefix& x);

// Deterministic reference sequences used by the test and demo tooling.
//   osc_log2      : finite {0,1}; x_i = 0 iff ceil(log2 i) is even
//   naturals      : nat; 1, 2, 3, ...
//   one_over_i    : real; 1, 1/2, 1/3, ...
//   neg_one_over_i: real; -1, -1/2, -1/3, ...
//   power2_spikes : nat; x_i = i+1 if i is a power of 2, else 1
SequencePrefix named_sequence(const std::string& name, size_t n);

}  // namespace esamp
