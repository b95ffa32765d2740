#pragma once

// gl_n and sl_n as restricted Lie algebras over GF(p), standard Borel and
// parabolic subalgebras, centralizers of functionals and trace duals.
//
// Basis order: negative root vectors E_ij (i > j), then the Cartan part
// (H_i = E_ii - E_{i+1,i+1} for sl_n, E_ii for gl_n), then positive root
// vectors E_ij (i < j). Root vectors are sorted by height, then by row.
// The PBW order of the enveloping algebra is this index order.

#include <memory>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "modlie/error.hpp"
#include "modlie/lie_algebra.hpp"
#include "modlie/matrix.hpp"

namespace modlie {

enum class Family { gl, sl };

inline std::string family_name(Family f) { return f == Family::gl ? "gl" : "sl"; }

enum class BasisKind { negative_root, cartan, positive_root };

/// Matrix realization attached to a classical algebra.
struct ClassicalData {
  Family family;
  unsigned n;
  std::vector<Matrix> basis_matrices;  // over GF(p)
  std::vector<BasisKind> kinds;
  std::vector<std::pair<unsigned, unsigned>> entry;  // (row, col) of E_ij, 0-based; Cartan: (i, i)

  std::size_t rank() const { return family == Family::sl ? n - 1 : n; }

  /// Index of the basis vector E_ij (i != j), 0-based.
  std::size_t root_index(unsigned i, unsigned j) const {
    for (std::size_t k = 0; k < entry.size(); ++k)
      if (kinds[k] != BasisKind::cartan && entry[k] == std::make_pair(i, j)) return k;
    throw DomainError("root_index: no such root vector");
  }

  std::vector<std::size_t> indices(BasisKind kind) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < kinds.size(); ++k)
      if (kinds[k] == kind) out.push_back(k);
    return out;
  }

  /// Coordinates of an n x n matrix (trace zero for sl_n).
  Vec coordinates(const Matrix& m) const {
    if (m.rows() != n || m.cols() != n) throw DimensionError("coordinates: matrix size");
    const Field& f = *m.field();
    Vec c(basis_matrices.size(), 0);
    for (std::size_t k = 0; k < kinds.size(); ++k)
      if (kinds[k] != BasisKind::cartan) c[k] = m(entry[k].first, entry[k].second);
    auto cartan = indices(BasisKind::cartan);
    if (family == Family::gl) {
      for (std::size_t t = 0; t < cartan.size(); ++t) c[cartan[t]] = m(t, t);
    } else {
      if (m.trace() != 0) throw DomainError("coordinates: matrix is not traceless");
      code_t run = 0;
      for (unsigned i = 0; i + 1 < n; ++i) {
        run = f.add(run, m(i, i));
        c[cartan[i]] = run;
      }
    }
    return c;
  }

  /// The matrix sum c_k B_k over the field of c.
  Matrix matrix_of(const FieldPtr& f, std::span<const code_t> c) const {
    Matrix m(f, n, n);
    for (std::size_t k = 0; k < basis_matrices.size(); ++k) {
      if (!c[k]) continue;
      const Matrix& b = basis_matrices[k];
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
          if (b(i, j)) m(i, j) = f->add(m(i, j), f->mul(c[k], b(i, j)));
    }
    return m;
  }
};

/// Matrix over GF(p) regarded over a field of the same characteristic.
inline Matrix retag(const Matrix& m, const FieldPtr& f) {
  if (m.field() == f) return m;
  if (m.field()->p() != f->p()) throw ParentMismatch("retag: characteristic differs");
  Matrix r(f, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m.field()->in_prime_field(m(i, j))) throw DomainError("retag: entry outside GF(p)");
      r(i, j) = m(i, j);
    }
  return r;
}

inline const ClassicalData& classical_data(const LiePtr& g) {
  if (!g->classical()) throw DomainError(g->name() + " has no matrix realization");
  return *g->classical();
}

/// gl_n or sl_n over GF(p) with the matrix p-th power as p-map.
inline LiePtr construct_classical(Family family, unsigned n, unsigned p) {
  if (n < 1 || (family == Family::sl && n < 2)) throw DomainError("construct_classical: n too small");
  const FieldPtr f = Field::make(p, 1);
  auto data = std::make_shared<ClassicalData>();
  data->family = family;
  data->n = n;
  std::vector<std::string> names;
  auto unit = [&](unsigned i, unsigned j) {
    Matrix m(f, n, n);
    m(i, j) = 1;
    return m;
  };
  auto add_root = [&](unsigned i, unsigned j, BasisKind kind) {
    data->basis_matrices.push_back(unit(i, j));
    data->kinds.push_back(kind);
    data->entry.emplace_back(i, j);
    names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
  };
  for (unsigned h = 1; h < n; ++h)
    for (unsigned j = 0; j + h < n; ++j) add_root(j + h, j, BasisKind::negative_root);
  if (family == Family::gl) {
    for (unsigned i = 0; i < n; ++i) {
      data->basis_matrices.push_back(unit(i, i));
      data->kinds.push_back(BasisKind::cartan);
      data->entry.emplace_back(i, i);
      names.push_back("E" + std::to_string(i + 1) + std::to_string(i + 1));
    }
  } else {
    for (unsigned i = 0; i + 1 < n; ++i) {
      Matrix m = unit(i, i);
      m(i + 1, i + 1) = f->neg(1);
      data->basis_matrices.push_back(m);
      data->kinds.push_back(BasisKind::cartan);
      data->entry.emplace_back(i, i);
      names.push_back("H" + std::to_string(i + 1));
    }
  }
  for (unsigned h = 1; h < n; ++h)
    for (unsigned i = 0; i + h < n; ++i) add_root(i, i + h, BasisKind::positive_root);

  const std::size_t N = data->basis_matrices.size();
  std::vector<code_t> sc(N * N * N, 0);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      Vec c = data->coordinates(commutator(data->basis_matrices[i], data->basis_matrices[j]));
      std::copy(c.begin(), c.end(), sc.begin() + (i * N + j) * N);
    }
  std::vector<Vec> pb;
  for (std::size_t i = 0; i < N; ++i) pb.push_back(data->coordinates(data->basis_matrices[i].pow(p)));
  const std::string name = family_name(family) + "_" + std::to_string(n);
  return std::make_shared<RestrictedLieAlgebra>(name, f, N, std::move(sc), std::move(pb), std::move(names),
                                                std::move(data));
}

/// A subalgebra given by a subspace of coordinate space (possibly over an
/// extension field). Bracket- and [p]-closure are verified on construction.
class SubalgebraDatum {
 public:
  SubalgebraDatum(LiePtr parent, Subspace basis) : l_(std::move(parent)), s_(std::move(basis)) {
    check_characteristic(l_, s_.field());
    if (s_.ambient() != l_->dim()) throw DimensionError("SubalgebraDatum: ambient dimension");
    const Field& f = *s_.field();
    for (std::size_t a = 0; a < s_.dim(); ++a) {
      const Vec x = s_.basis_vec(a);
      for (std::size_t b = a + 1; b < s_.dim(); ++b)
        if (!s_.contains(l_->bracket(f, x, s_.basis_vec(b))))
          throw InvariantError("subspace is not closed under the bracket");
      if (!s_.contains(p_power(LieElement(l_, s_.field(), x)).coeffs()))
        throw InvariantError("subspace is not closed under the p-map");
    }
  }

  const LiePtr& parent() const { return l_; }
  const Subspace& subspace() const { return s_; }
  const FieldPtr& field() const { return s_.field(); }
  std::size_t dim() const { return s_.dim(); }

  std::vector<LieElement> basis() const {
    std::vector<LieElement> out;
    for (std::size_t i = 0; i < s_.dim(); ++i) out.emplace_back(l_, s_.field(), s_.basis_vec(i));
    return out;
  }

  bool functional_vanishes(const Functional& chi) const {
    const Functional c = chi.field() == field() ? chi : chi.over(field());
    for (std::size_t i = 0; i < s_.dim(); ++i)
      if (c(s_.basis_vec(i))) return false;
    return true;
  }

  /// Basis indices when the subalgebra is spanned by basis vectors of the
  /// parent; empty optional otherwise.
  std::optional<std::vector<std::size_t>> standard_indices() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s_.dim(); ++i) {
      const auto row = s_.basis().row(i);
      std::size_t nz = 0;
      for (auto c : row)
        if (c) ++nz;
      if (nz != 1) return std::nullopt;
      idx.push_back(s_.pivots()[i]);
    }
    return idx;
  }

  /// The subalgebra as a restricted Lie algebra in its own right, on the
  /// echelon basis (requires GF(p) coordinates).
  LiePtr as_algebra(const std::string& name) const {
    if (!field()->is_prime_field()) throw DomainError("as_algebra: subalgebra not defined over GF(p)");
    const std::size_t d = s_.dim();
    const Field& f = *field();
    std::vector<code_t> sc(d * d * d, 0);
    std::vector<Vec> pb;
    std::vector<std::string> names;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        Vec c = s_.coordinates(l_->bracket(f, s_.basis_vec(a), s_.basis_vec(b)));
        std::copy(c.begin(), c.end(), sc.begin() + (a * d + b) * d);
      }
      pb.push_back(s_.coordinates(p_power(LieElement(l_, field(), s_.basis_vec(a))).coeffs()));
      auto idx = standard_indices();
      names.push_back(idx ? l_->basis_names()[(*idx)[a]] : "b" + std::to_string(a));
    }
    return std::make_shared<RestrictedLieAlgebra>(name, field(), d, std::move(sc), std::move(pb), std::move(names));
  }

 private:
  LiePtr l_;
  Subspace s_;
};

/// Standard parabolic of sl_n containing the upper triangular Borel; its
/// Levi has simple roots S (1-based, alpha_i <-> E_{i,i+1}). S = {} is the
/// Borel itself.
inline SubalgebraDatum borel_and_parabolic(const LiePtr& g, const std::set<unsigned>& simple_roots) {
  const auto& cd = classical_data(g);
  for (auto a : simple_roots)
    if (a < 1 || a >= cd.n) throw DomainError("borel_and_parabolic: invalid simple root " + std::to_string(a));
  std::vector<Vec> vecs;
  for (std::size_t k = 0; k < g->dim(); ++k) {
    bool keep = cd.kinds[k] != BasisKind::negative_root;
    if (!keep) {
      // E_ij with i > j is in the parabolic iff alpha_{j+1}, ..., alpha_i all lie in S.
      auto [i, j] = cd.entry[k];
      keep = true;
      for (unsigned a = j + 1; a <= i; ++a)
        if (!simple_roots.count(a)) keep = false;
    }
    if (keep) {
      Vec v(g->dim(), 0);
      v[k] = 1;
      vecs.push_back(v);
    }
  }
  return SubalgebraDatum(g, Subspace::span(g->base(), g->dim(), vecs));
}

/// C_g(chi) = {y : chi([y, -]) = 0}.
inline SubalgebraDatum centralizer(const Functional& chi) {
  const auto& l = chi.parent();
  const Field& f = *chi.field();
  const std::size_t n = l->dim();
  Matrix a(chi.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec ei(n, 0);
    ei[i] = 1;
    for (std::size_t j = 0; j < n; ++j) a(j, i) = chi(l->bracket_basis(f, ei, j));
  }
  return SubalgebraDatum(l, kernel(a));
}

/// C_g(chi) is contained in ker chi.
inline bool is_nilpotent_functional(const Functional& chi) {
  return centralizer(chi).functional_vanishes(chi);
}

/// chi(y) = tr(e y).
inline Functional trace_dual(const LiePtr& g, const Matrix& e) {
  const auto& cd = classical_data(g);
  if (cd.family == Family::sl && cd.n % g->p() == 0)
    throw DomainError("trace_dual: p divides n, the trace form is degenerate on sl_n");
  if (e.rows() != cd.n || e.cols() != cd.n) throw DimensionError("trace_dual: matrix size");
  check_characteristic(g, e.field());
  Vec v(g->dim());
  for (std::size_t k = 0; k < g->dim(); ++k) v[k] = (e * retag(cd.basis_matrices[k], e.field())).trace();
  return {g, e.field(), v};
}

/// Nilpotent n x n matrix in Jordan form with the given block sizes
/// (ones on the superdiagonal inside each block).
inline Matrix nilpotent_from_partition(const FieldPtr& f, const std::vector<unsigned>& blocks) {
  unsigned n = 0;
  for (auto b : blocks) n += b;
  Matrix m(f, n, n);
  unsigned start = 0;
  for (auto b : blocks) {
    for (unsigned i = 0; i + 1 < b; ++i) m(start + i, start + i + 1) = 1;
    start += b;
  }
  return m;
}

/// All partitions of n in decreasing order.
inline std::vector<std::vector<unsigned>> partitions(unsigned n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  auto rec = [&](auto&& self, unsigned rest, unsigned maxpart) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (unsigned k = std::min(rest, maxpart); k >= 1; --k) {
      cur.push_back(k);
      self(self, rest - k, k);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// On `samples` random pairs over f: (x + y)^[p] = x^[p] + y^[p] + sum s_i(x, y),
/// and for matrix algebras x^[p] equals the matrix p-th power.
inline Report restricted_audit(const LiePtr& g, const FieldPtr& f, int samples, std::uint64_t seed) {
  check_characteristic(g, f);
  Report rep;
  std::mt19937_64 rng(seed);
  const std::size_t n = g->dim();
  auto random_elt = [&] {
    Vec v(n);
    for (auto& c : v) c = static_cast<code_t>(rng() % f->q());
    return LieElement(g, f, std::move(v));
  };
  std::string wj, wm;
  for (int t = 0; t < samples; ++t) {
    const LieElement x = random_elt(), y = random_elt();
    LieElement rhs = p_power(x) + p_power(y);
    for (const auto& s : s_coefficients(x, y)) rhs = rhs + s;
    if (wj.empty() && !(p_power(x + y) == rhs)) wj = "x = " + x.str() + ", y = " + y.str();
    if (wm.empty() && g->classical()) {
      const auto& cd = *g->classical();
      if (!(cd.matrix_of(f, p_power(x).coeffs()) == cd.matrix_of(f, x.coeffs()).pow(g->p())))
        wm = "x = " + x.str();
    }
  }
  rep.add("jacobson_sum", wj.empty(), wj);
  if (g->classical()) rep.add("matrix_p_power", wm.empty(), wm);
  return rep;
}

}  // namespace modlie
