#pragma once

#include <map>
#include <optional>
#include <vector>

#include "esamp/finite_space.hpp"
#include "esamp/rational.hpp"

namespace esamp {

// A partial Markov kernel between finite spaces: a set of defined inputs
// (the domain) and, for each, an exact probability row over the target.
// Rows sum to exactly 1; inputs outside the domain simply have no row.
// A raw matrix row summing strictly between 0 and 1 is ill-formed and is
// rejected at construction (there is no "sub-stochastic" middle ground:
// a row is either a distribution or absent).
//
// Values are immutable after construction; all operations return new kernels.
class PartialKernel {
 public:
  using Row = std::vector<Rational>;
  using Rows = std::map<int, Row>;  // defined source index -> row

  PartialKernel(FiniteSpace source, FiniteSpace target, Rows rows);

  // Classifies each row of a full matrix: sum==1 -> defined, sum==0 (all
  // zeros) -> undefined (omitted), anything else -> invalid_argument.
  static PartialKernel from_matrix(FiniteSpace source, FiniteSpace target,
                                   const std::vector<Row>& matrix);

  const FiniteSpace& source() const { return src_; }
  const FiniteSpace& target() const { return tgt_; }
  const Rows& rows() const { return rows_; }
  bool is_defined(int x) const { return rows_.count(x) > 0; }
  const Row& row(int x) const;
  Rational entry(int x, int y) const;  // 0 when y out of row support
  std::vector<int> domain() const;
  bool is_total() const { return static_cast<int>(rows_.size()) == src_.size(); }

  // Exact structural equality: compatible spaces, same domain, same rows.
  friend bool operator==(const PartialKernel& a, const PartialKernel& b);
  friend bool operator!=(const PartialKernel& a, const PartialKernel& b) {
    return !(a == b);
  }

 private:
  FiniteSpace src_, tgt_;
  Rows rows_;
};

// A partial identity: source == target, every defined row is the point mass
// at its own input. These are exactly the domain witnesses dom(f).
class DomainIdempotent {
 public:
  explicit DomainIdempotent(PartialKernel k);
  const PartialKernel& kernel() const { return k_; }
  operator const PartialKernel&() const { return k_; }
  std::vector<int> domain() const { return k_.domain(); }

  static bool is_partial_identity(const PartialKernel& k);

 private:
  PartialKernel k_;
};

// compose(f, g) = "f then g" (g o f). Defined inputs are those x in dom(f)
// whose f-row puts mass exactly 1 on dom(g); rows are the Chapman-Kolmogorov
// sums over dom(g).
PartialKernel compose(const PartialKernel& f, const PartialKernel& g);

// tensor(f, g): domain is dom(f) x dom(g), rows are outer products.
PartialKernel tensor(const PartialKernel& f, const PartialKernel& g);

PartialKernel identity_kernel(const FiniteSpace& x);
PartialKernel copy_kernel(const FiniteSpace& x);    // x -> (x, x) point mass
PartialKernel delete_kernel(const FiniteSpace& x);  // total map to the unit space
PartialKernel swap_kernel(const FiniteSpace& a, const FiniteSpace& b);

enum class StructuralKind { Identity, Copy, Delete };
PartialKernel structural(const FiniteSpace& x, StructuralKind which);

DomainIdempotent domain_of(const PartialKernel& f);

// Extension order: f extends g iff dom(f) contains dom(g) and the rows agree
// on dom(g). Every kernel extends its own restrictions.
bool extends(const PartialKernel& f, const PartialKernel& g);

// Greatest lower bound of the two domain idempotents: the partial identity
// on dom(f) & dom(g). Equals compose(domain_of(f), domain_of(g)).
DomainIdempotent meet_domains(const PartialKernel& f, const PartialKernel& g);

// Meet of a descending chain (each element extends the next): the common
// restriction to the intersection of the domains. Throws if the list is not
// a descending chain.
PartialKernel chain_meet(const std::vector<PartialKernel>& chain);

// Deterministic-on-domain test, evaluated by the defining comultiplication
// equation: copy o f == (f (x) f) o copy, as exact partial kernels.
// Equivalent to every defined row being a point mass.
bool is_copyable(const PartialKernel& f);

// f and g agree p-almost-surely: the two "copy then act on one leg"
// composites through p coincide, i.e.
//   (f (x) id) o copy o p == (g (x) id) o copy o p.
bool almost_surely_equal(const PartialKernel& p, const PartialKernel& f,
                         const PartialKernel& g);

// One positivity instance: whenever compose(f, g) is copyable,
//   (g (x) id) o copy o f == ((g o f) (x) f) o copy
// must hold exactly; vacuously true otherwise.
bool check_positivity_instance(const PartialKernel& f, const PartialKernel& g);

}  // namespace esamp
