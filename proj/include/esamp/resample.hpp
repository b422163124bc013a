#pragma once

#include "esamp/cylinder.hpp"

namespace esamp {

// Finite-horizon resampling of a finite-alphabet prefix x_1..x_n down to
// length-m words.
//
// resample_truncated: the average over all n! reorderings of the first m
// coordinates, computed exactly from symbol occupancies:
//   P(w) = prod_a (c_a)_(k_a) / (n)_m
// where c_a counts symbol a among x_1..x_n, k_a counts it in w, and (.)_j is
// the falling factorial. This equals the average over injective index
// tuples; permutations are never enumerated.
//
// resample_independent: the all-tuples (with repetition) estimator
//   Q(w) = prod_a c_a^(k_a) / n^m,
// i.e. m iid draws from the empirical measure of the prefix. The two differ
// by at most m(m-1)/n in total variation.
CylinderState resample_truncated(const std::vector<int>& prefix,
                                 const FiniteSpace& alphabet, int m, int n);
CylinderState resample_independent(const std::vector<int>& prefix,
                                   const FiniteSpace& alphabet, int m, int n);

// 1/2 the L1 distance between two states of equal length.
Rational total_variation(const CylinderState& a, const CylinderState& b);

}  // namespace esamp
