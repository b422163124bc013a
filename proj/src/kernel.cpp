#include "esamp/kernel.hpp"

#include <algorithm>
#include <stdexcept>

namespace esamp {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

PartialKernel::PartialKernel(FiniteSpace source, FiniteSpace target, Rows rows)
    : src_(std::move(source)), tgt_(std::move(target)), rows_(std::move(rows)) {
  for (const auto& [x, row] : rows_) {
    require(x >= 0 && x < src_.size(), "PartialKernel: row index out of range");
    require(static_cast<int>(row.size()) == tgt_.size(),
            "PartialKernel: row width does not match target");
    Rational sum = 0;
    for (const Rational& p : row) {
      require(p >= 0, "PartialKernel: negative entry");
      sum += p;
    }
    require(sum == 1, "PartialKernel: defined row must sum to exactly 1");
  }
}

PartialKernel PartialKernel::from_matrix(FiniteSpace source, FiniteSpace target,
                                         const std::vector<Row>& matrix) {
  require(static_cast<int>(matrix.size()) == source.size(),
          "from_matrix: one row per source element required");
  Rows rows;
  for (int x = 0; x < static_cast<int>(matrix.size()); ++x) {
    const Row& row = matrix[static_cast<size_t>(x)];
    Rational sum = 0;
    for (const Rational& p : row) {
      require(p >= 0, "from_matrix: negative entry");
      sum += p;
    }
    if (sum == 1) {
      rows.emplace(x, row);
    } else if (sum == 0) {
      // all-zero row: input undefined, no row stored
    } else {
      throw std::invalid_argument(
          "from_matrix: row sums to neither 0 nor 1 (ill-formed row " +
          std::to_string(x) + ")");
    }
  }
  return PartialKernel(std::move(source), std::move(target), std::move(rows));
}

const PartialKernel::Row& PartialKernel::row(int x) const {
  auto it = rows_.find(x);
  if (it == rows_.end())
    throw std::out_of_range("PartialKernel::row: input not in domain");
  return it->second;
}

Rational PartialKernel::entry(int x, int y) const {
  auto it = rows_.find(x);
  if (it == rows_.end()) return Rational(0);
  return it->second[static_cast<size_t>(y)];
}

std::vector<int> PartialKernel::domain() const {
  std::vector<int> d;
  d.reserve(rows_.size());
  for (const auto& [x, _] : rows_) d.push_back(x);
  return d;
}

bool operator==(const PartialKernel& a, const PartialKernel& b) {
  return compatible(a.src_, b.src_) && compatible(a.tgt_, b.tgt_) &&
         a.rows_ == b.rows_;
}

DomainIdempotent::DomainIdempotent(PartialKernel k) : k_(std::move(k)) {
  if (!is_partial_identity(k_))
    throw std::invalid_argument("DomainIdempotent: not a partial identity");
}

bool DomainIdempotent::is_partial_identity(const PartialKernel& k) {
  if (!compatible(k.source(), k.target())) return false;
  for (const auto& [x, row] : k.rows()) {
    for (int y = 0; y < static_cast<int>(row.size()); ++y) {
      if (row[static_cast<size_t>(y)] != Rational(y == x ? 1 : 0)) return false;
    }
  }
  return true;
}

PartialKernel compose(const PartialKernel& f, const PartialKernel& g) {
  require(compatible(f.target(), g.source()),
          "compose: middle spaces do not match");
  PartialKernel::Rows rows;
  for (const auto& [x, frow] : f.rows()) {
    Rational mass_on_dom = 0;
    for (const auto& [y, _] : g.rows()) mass_on_dom += frow[static_cast<size_t>(y)];
    if (mass_on_dom != 1) continue;  // x falls outside the composite domain
    PartialKernel::Row out(static_cast<size_t>(g.target().size()), Rational(0));
    for (const auto& [y, grow] : g.rows()) {
      const Rational& w = frow[static_cast<size_t>(y)];
      if (w == 0) continue;
      for (int z = 0; z < g.target().size(); ++z)
        out[static_cast<size_t>(z)] += w * grow[static_cast<size_t>(z)];
    }
    rows.emplace(x, std::move(out));
  }
  return PartialKernel(f.source(), g.target(), std::move(rows));
}

PartialKernel tensor(const PartialKernel& f, const PartialKernel& g) {
  FiniteSpace src = product(f.source(), g.source());
  FiniteSpace tgt = product(f.target(), g.target());
  PartialKernel::Rows rows;
  for (const auto& [xa, rowa] : f.rows()) {
    for (const auto& [xb, rowb] : g.rows()) {
      PartialKernel::Row out;
      out.reserve(static_cast<size_t>(tgt.size()));
      for (const Rational& pa : rowa)
        for (const Rational& pb : rowb) out.push_back(pa * pb);
      rows.emplace(pair_index(f.source(), g.source(), xa, xb), std::move(out));
    }
  }
  return PartialKernel(std::move(src), std::move(tgt), std::move(rows));
}

PartialKernel identity_kernel(const FiniteSpace& x) {
  PartialKernel::Rows rows;
  for (int i = 0; i < x.size(); ++i) {
    PartialKernel::Row row(static_cast<size_t>(x.size()), Rational(0));
    row[static_cast<size_t>(i)] = 1;
    rows.emplace(i, std::move(row));
  }
  return PartialKernel(x, x, std::move(rows));
}

PartialKernel copy_kernel(const FiniteSpace& x) {
  FiniteSpace tgt = product(x, x);
  PartialKernel::Rows rows;
  for (int i = 0; i < x.size(); ++i) {
    PartialKernel::Row row(static_cast<size_t>(tgt.size()), Rational(0));
    row[static_cast<size_t>(pair_index(x, x, i, i))] = 1;
    rows.emplace(i, std::move(row));
  }
  return PartialKernel(x, std::move(tgt), std::move(rows));
}

PartialKernel delete_kernel(const FiniteSpace& x) {
  PartialKernel::Rows rows;
  for (int i = 0; i < x.size(); ++i)
    rows.emplace(i, PartialKernel::Row{Rational(1)});
  return PartialKernel(x, FiniteSpace::unit(), std::move(rows));
}

PartialKernel swap_kernel(const FiniteSpace& a, const FiniteSpace& b) {
  FiniteSpace src = product(a, b);
  FiniteSpace tgt = product(b, a);
  PartialKernel::Rows rows;
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < b.size(); ++j) {
      PartialKernel::Row row(static_cast<size_t>(tgt.size()), Rational(0));
      row[static_cast<size_t>(pair_index(b, a, j, i))] = 1;
      rows.emplace(pair_index(a, b, i, j), std::move(row));
    }
  }
  return PartialKernel(std::move(src), std::move(tgt), std::move(rows));
}

PartialKernel structural(const FiniteSpace& x, StructuralKind which) {
  switch (which) {
    case StructuralKind::Identity: return identity_kernel(x);
    case StructuralKind::Copy: return copy_kernel(x);
    case StructuralKind::Delete: return delete_kernel(x);
  }
  throw std::invalid_argument("structural: unknown kind");
}

DomainIdempotent domain_of(const PartialKernel& f) {
  PartialKernel::Rows rows;
  for (const auto& [x, _] : f.rows()) {
    PartialKernel::Row row(static_cast<size_t>(f.source().size()), Rational(0));
    row[static_cast<size_t>(x)] = 1;
    rows.emplace(x, std::move(row));
  }
  return DomainIdempotent(
      PartialKernel(f.source(), f.source(), std::move(rows)));
}

bool extends(const PartialKernel& f, const PartialKernel& g) {
  if (!compatible(f.source(), g.source()) || !compatible(f.target(), g.target()))
    return false;
  for (const auto& [x, grow] : g.rows()) {
    if (!f.is_defined(x)) return false;
    if (f.row(x) != grow) return false;
  }
  return true;
}

DomainIdempotent meet_domains(const PartialKernel& f, const PartialKernel& g) {
  require(compatible(f.source(), g.source()),
          "meet_domains: kernels must share a source");
  PartialKernel::Rows rows;
  for (const auto& [x, _] : f.rows()) {
    if (!g.is_defined(x)) continue;
    PartialKernel::Row row(static_cast<size_t>(f.source().size()), Rational(0));
    row[static_cast<size_t>(x)] = 1;
    rows.emplace(x, std::move(row));
  }
  return DomainIdempotent(
      PartialKernel(f.source(), f.source(), std::move(rows)));
}

PartialKernel chain_meet(const std::vector<PartialKernel>& chain) {
  require(!chain.empty(), "chain_meet: empty chain");
  for (size_t i = 0; i + 1 < chain.size(); ++i)
    require(extends(chain[i], chain[i + 1]),
            "chain_meet: not a descending chain");
  // For a descending chain the meet is the common restriction to the
  // intersection of domains; compute it explicitly rather than returning
  // chain.back() so the validation above stays honest.
  PartialKernel::Rows rows;
  for (const auto& [x, row] : chain.front().rows()) {
    bool everywhere = true;
    for (const PartialKernel& k : chain)
      if (!k.is_defined(x)) { everywhere = false; break; }
    if (everywhere) rows.emplace(x, chain.back().row(x));
  }
  return PartialKernel(chain.front().source(), chain.front().target(),
                       std::move(rows));
}

bool is_copyable(const PartialKernel& f) {
  PartialKernel lhs = compose(f, copy_kernel(f.target()));
  PartialKernel rhs = compose(copy_kernel(f.source()), tensor(f, f));
  return lhs == rhs;
}

bool almost_surely_equal(const PartialKernel& p, const PartialKernel& f,
                         const PartialKernel& g) {
  require(compatible(p.target(), f.source()) &&
              compatible(f.source(), g.source()) &&
              compatible(f.target(), g.target()),
          "almost_surely_equal: space mismatch");
  PartialKernel copied = compose(p, copy_kernel(p.target()));
  PartialKernel idx = identity_kernel(p.target());
  return compose(copied, tensor(f, idx)) == compose(copied, tensor(g, idx));
}

bool check_positivity_instance(const PartialKernel& f, const PartialKernel& g) {
  require(compatible(f.target(), g.source()),
          "check_positivity_instance: middle spaces do not match");
  PartialKernel gf = compose(f, g);
  if (!is_copyable(gf)) return true;  // hypothesis not met: vacuously true
  PartialKernel idy = identity_kernel(f.target());
  PartialKernel lhs = compose(compose(f, copy_kernel(f.target())), tensor(g, idy));
  PartialKernel rhs = compose(copy_kernel(f.source()), tensor(gf, f));
  return lhs == rhs;
}

}  // namespace esamp
