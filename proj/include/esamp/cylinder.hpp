#pragma once

#include <map>
#include <nlohmann/json.hpp>
#include <vector>

#include "esamp/finite_space.hpp"
#include "esamp/permutation.hpp"
#include "esamp/rational.hpp"

namespace esamp {

using Word = std::vector<int>;

// A sparse exact distribution over length-n words of a finite alphabet:
// the finite truncation of a sequence-space state. Zero-probability words
// are never stored; stored masses sum to exactly 1.
class CylinderState {
 public:
  using Pmf = std::map<Word, Rational>;

  CylinderState(FiniteSpace alphabet, int length, Pmf pmf);
  static CylinderState point_mass(FiniteSpace alphabet, Word w);

  const FiniteSpace& alphabet() const { return alphabet_; }
  int length() const { return length_; }
  const Pmf& pmf() const { return pmf_; }
  Rational mass(const Word& w) const;

  friend bool operator==(const CylinderState& a, const CylinderState& b) {
    return compatible(a.alphabet_, b.alphabet_) && a.length_ == b.length_ &&
           a.pmf_ == b.pmf_;
  }
  friend bool operator!=(const CylinderState& a, const CylinderState& b) {
    return !(a == b);
  }

 private:
  FiniteSpace alphabet_;
  int length_;
  Pmf pmf_;
};

// Keep the first k coordinates, summing out the rest. k == 0 gives the
// empty-word state (the full truncation tower ends at the unit).
CylinderState marginal(const CylinderState& s, int k);

// Pushforward along the coordinate permutation that routes input s(j) to
// output j: result(w) accumulates mass(v) where w[j] = v[s(j)].
// Contravariance: permute(permute(s, tau), sigma) == permute(s, tau o sigma).
CylinderState permute(const CylinderState& s, const FinitePermutation& sigma);

// n independent copies of the single-letter distribution p.
CylinderState iid_truncation(const FiniteSpace& alphabet,
                             const std::vector<Rational>& p, int n);

// A finite mixture of iid laws over a k-letter alphabet.
struct MixtureModel {
  FiniteSpace alphabet;
  std::vector<Rational> weights;                // sum to 1
  std::vector<std::vector<Rational>> components;  // each sums to 1

  MixtureModel(FiniteSpace alphabet_, std::vector<Rational> weights_,
               std::vector<std::vector<Rational>> components_);
  bool all_point_masses() const;

  static MixtureModel from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

CylinderState mixture_state(const MixtureModel& m, int n);

// Invariance under all adjacent transpositions (hence under S_n).
bool is_exchangeable(const CylinderState& s);

nlohmann::ordered_json cylinder_to_json(const CylinderState& s);

}  // namespace esamp
