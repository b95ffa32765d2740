#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "modlie/classical.hpp"
#include "modlie/lie_algebra.hpp"
#include "modlie/matrix.hpp"
#include "modlie/module.hpp"

namespace modlie {

/// A Borel subalgebra of sl_n as the stabilizer of the flag of leading
/// column spans of an invertible matrix.
struct BorelDatum {
  LiePtr g;
  Matrix flag;
  SubalgebraDatum sub;

  const FieldPtr& field() const { return flag.field(); }
};

namespace detail {

inline void require_sl(const LiePtr& g, const std::string& who) {
  if (classical_data(g).family != Family::sl) throw DomainError(who + ": sl_n only");
}

}  // namespace detail

/// {y in sl_n : y V_i in V_i}, V_i the span of the first i columns of M.
inline BorelDatum borel_from_flag(const LiePtr& g, const Matrix& m) {
  detail::require_sl(g, "borel_from_flag");
  const auto& cd = classical_data(g);
  const std::size_t n = cd.n;
  if (m.rows() != n || m.cols() != n) throw DimensionError("borel_from_flag: flag matrix size");
  check_characteristic(g, m.field());
  const FieldPtr& F = m.field();
  const auto minv = inverse(m);
  if (!minv) throw DomainError("borel_from_flag: singular flag matrix");
  // (M^-1 B_k M)_{ij} = 0 for i > j
  Matrix cond(F, n * (n - 1) / 2, g->dim());
  for (std::size_t k = 0; k < g->dim(); ++k) {
    const Matrix c = *minv * retag(cd.basis_matrices[k], F) * m;
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) cond(row++, k) = c(i, j);
  }
  Subspace s = kernel(cond);
  if (s.dim() != n * (n + 1) / 2 - 1) throw InvariantError("borel_from_flag: stabilizer has wrong dimension");
  return {g, m, SubalgebraDatum(g, std::move(s))};
}

/// chi vanishes on b.
inline bool in_springer_fiber(const BorelDatum& b, const Functional& chi) {
  if (chi.parent() != b.g) throw ParentMismatch("in_springer_fiber: chi is not on g");
  return b.sub.functional_vanishes(chi);
}

/// Some h in the span of `s` with chi([y, h]) = chi(y) for every y in g.
inline std::optional<LieElement> test3_on(const LiePtr& g, const Subspace& s, const Functional& chi) {
  if (chi.parent() != g) throw ParentMismatch("test3: chi is not on g");
  const FieldPtr F = common_field(s.field(), chi.field());
  // GF(p) codes are unchanged in extensions
  const Subspace sf = s.field() == F ? s : Subspace::span(F, s.ambient(), s.basis_vectors());
  const Functional c = chi.field() == F ? chi : chi.over(F);
  const std::size_t n = g->dim();
  if (c.is_zero()) return LieElement(g, F, Vec(n, 0));
  Matrix a(F, n, sf.dim());
  Vec rhs(n);
  for (std::size_t k = 0; k < n; ++k) {
    Vec yk(n, 0);
    yk[k] = 1;
    for (std::size_t r = 0; r < sf.dim(); ++r) a(k, r) = c(g->bracket(*F, yk, sf.basis_vec(r)));
    rhs[k] = c.on_basis(k);
  }
  const auto sol = solve_linear(a, rhs);
  if (!sol.particular) return std::nullopt;
  Vec h(n, 0);
  for (std::size_t r = 0; r < sf.dim(); ++r)
    if (code_t t = (*sol.particular)[r]) detail::add_into(*F, h, sf.basis_vec(r), t);
  return LieElement(g, F, std::move(h));
}

/// Witness h in b with (ad* h) chi = chi, where ((ad* h) chi)(y) = chi([y, h]).
inline std::optional<LieElement> test3_at(const BorelDatum& b, const Functional& chi) {
  return test3_on(b.g, b.sub.subspace(), chi);
}

/// S is given by lifts to g; its preimage in g is S + b. True iff chi
/// vanishes on the preimage.
inline bool tangency_splitting_check(const BorelDatum& b, const Functional& chi, const Subspace& s) {
  if (!in_springer_fiber(b, chi)) throw DomainError("tangency_splitting_check: b is not in the Springer fiber");
  const FieldPtr F = common_field(s.field(), b.field());
  std::vector<Vec> vecs = s.basis_vectors();
  for (auto& v : b.sub.subspace().basis_vectors()) vecs.push_back(v);
  const Subspace pre = Subspace::span(F, b.g->dim(), vecs);
  const Functional c = chi.field() == F ? chi : chi.over(F);
  for (std::size_t i = 0; i < pre.dim(); ++i)
    if (c(pre.basis_vec(i))) return false;
  return true;
}

/// {y in g : chi([y, b]) = 0}; contains b and every tangent direction of the
/// Springer fiber at b.
inline Subspace fiber_tangent_bound(const BorelDatum& b, const Functional& chi) {
  const FieldPtr F = common_field(chi.field(), b.field());
  const Functional c = chi.field() == F ? chi : chi.over(F);
  const std::size_t n = b.g->dim();
  const Subspace& s = b.sub.subspace();
  Matrix a(F, s.dim(), n);
  for (std::size_t k = 0; k < n; ++k) {
    Vec yk(n, 0);
    yk[k] = 1;
    for (std::size_t r = 0; r < s.dim(); ++r) a(r, k) = c(b.g->bracket(*F, yk, s.basis_vec(r)));
  }
  return kernel(a);
}

/// chi vanishes on the parabolic, so its orbits through fiber points stay
/// inside the fiber.
inline bool parabolic_nice(const LiePtr& g, const SubalgebraDatum& p, const Functional& chi) {
  if (p.parent() != g || chi.parent() != g) throw ParentMismatch("parabolic_nice: data on different algebras");
  return p.functional_vanishes(chi);
}

/// exp(z) = sum_{i<p} z^i / i! for z with z^p = 0.
inline Matrix exp_nilpotent(const Matrix& z) {
  const Field& f = *z.field();
  const unsigned p = f.p();
  if (!z.pow(p).is_zero()) throw DomainError("exp_nilpotent: z^p != 0");
  Matrix r = Matrix::identity(z.field(), z.rows()), term = r;
  for (unsigned i = 1; i < p; ++i) {
    term = (term * z).scaled(f.inv(f.from_int(i)));
    r = r + term;
  }
  return r;
}

inline Matrix permutation_matrix(const FieldPtr& f, const std::vector<unsigned>& w) {
  Matrix m(f, w.size(), w.size());
  for (std::size_t j = 0; j < w.size(); ++j) m(w[j], j) = 1;
  return m;
}

struct FiberProvenance {
  std::string kind;            // "weyl" or "translate"
  std::vector<unsigned> perm;  // Weyl element, for kind == "weyl"
  std::size_t parent = 0;      // translated point, for kind == "translate"
  std::string nilradical;      // "upper" or "lower"
  std::uint64_t draw = 0;      // index of the random draw
  Matrix z;                    // translate exp(z)
};

struct FiberSample {
  Functional chi;
  std::vector<BorelDatum> points;
  std::vector<FiberProvenance> provenance;
  std::uint64_t seed = 0;
  std::size_t weyl_seeds = 0;
  std::size_t draws = 0;
};

namespace detail {

// {z : z e = e z} inside the strictly upper (or lower) triangular matrices.
inline std::vector<Matrix> centralizer_nil(const Matrix& e, bool upper) {
  const FieldPtr& F = e.field();
  const std::size_t n = e.rows();
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (upper ? i < j : i > j) cells.emplace_back(i, j);
  Matrix cond(F, n * n, cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    Matrix u(F, n, n);
    u(cells[c].first, cells[c].second) = 1;
    const Matrix k = commutator(u, e);
    for (std::size_t t = 0; t < n * n; ++t) cond(t, c) = k.data()[t];
  }
  const Subspace ker = kernel(cond);
  std::vector<Matrix> out;
  for (std::size_t b = 0; b < ker.dim(); ++b) {
    Matrix z(F, n, n);
    for (std::size_t c = 0; c < cells.size(); ++c) z(cells[c].first, cells[c].second) = ker.basis()(b, c);
    out.push_back(std::move(z));
  }
  return out;
}

inline std::size_t find_point(const std::vector<BorelDatum>& pts, const Subspace& s) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i].sub.subspace() == s) return i;
  return pts.size();
}

}  // namespace detail

/// Points of the Springer fiber of chi = trace_dual(e) over GF(p^k): the
/// Weyl-translate Borels on which chi vanishes, then up to `count` further
/// points exp(z) . b with z nilpotent in the centralizer of e.
inline FiberSample sample_fiber(const LiePtr& g, const Matrix& e, std::size_t count, unsigned k, std::uint64_t seed) {
  detail::require_sl(g, "sample_fiber");
  const FieldPtr F = Field::make(g->p(), k);
  const Matrix eF = e.field() == F ? e : retag(e, F);
  if (!eF.pow(classical_data(g).n).is_zero()) throw DomainError("sample_fiber: e is not nilpotent");
  FiberSample out{trace_dual(g, eF), {}, {}, seed, 0, 0};
  const std::size_t n = classical_data(g).n;

  std::vector<unsigned> w(n);
  std::iota(w.begin(), w.end(), 0u);
  do {
    BorelDatum b = borel_from_flag(g, permutation_matrix(F, w));
    if (!in_springer_fiber(b, out.chi)) continue;
    if (detail::find_point(out.points, b.sub.subspace()) != out.points.size()) continue;
    out.points.push_back(std::move(b));
    out.provenance.push_back({"weyl", w, 0, "", 0, Matrix(F, 0, 0)});
  } while (std::next_permutation(w.begin(), w.end()));
  out.weyl_seeds = out.points.size();
  if (out.points.empty()) throw DomainError("sample_fiber: chi vanishes on no Weyl-translate Borel; supply a seed point");

  const auto up = detail::centralizer_nil(eF, true), lo = detail::centralizer_nil(eF, false);
  if (up.empty() && lo.empty()) return out;
  std::mt19937_64 rng(seed);
  const std::size_t max_draws = 20 * count + 100;
  std::size_t added = 0;
  for (std::uint64_t draw = 0; added < count && draw < max_draws; ++draw) {
    out.draws = draw + 1;
    const bool upper = lo.empty() || (!up.empty() && rng() % 2 == 0);
    const auto& basis = upper ? up : lo;
    Matrix z(F, n, n);
    for (const auto& bz : basis) z.add_scaled(bz, static_cast<code_t>(rng() % F->q()));
    const std::size_t parent = rng() % out.points.size();
    if (z.is_zero()) continue;
    BorelDatum b = borel_from_flag(g, exp_nilpotent(z) * out.points[parent].flag);
    if (!in_springer_fiber(b, out.chi)) throw InvariantError("sample_fiber: translate left the Springer fiber");
    if (detail::find_point(out.points, b.sub.subspace()) != out.points.size()) continue;
    out.points.push_back(std::move(b));
    out.provenance.push_back({"translate", {}, parent, upper ? "upper" : "lower", draw, z});
    ++added;
  }
  return out;
}

/// Points of the orbit P . b: exp(t z) b for root vectors z in P, each a
/// Borel contained in P.
inline std::vector<BorelDatum> parabolic_orbit_points(const BorelDatum& b, const SubalgebraDatum& P, std::size_t count,
                                                      unsigned k, std::uint64_t seed) {
  const auto& cd = classical_data(b.g);
  const FieldPtr F = Field::make(b.g->p(), k);
  const auto idx = P.standard_indices();
  if (!idx) throw DomainError("parabolic_orbit_points: parabolic must be standard");
  std::vector<std::size_t> roots;
  for (auto i : *idx)
    if (cd.kinds[i] != BasisKind::cartan) roots.push_back(i);
  std::mt19937_64 rng(seed);
  std::vector<BorelDatum> out{b.field() == F ? b : borel_from_flag(b.g, retag(b.flag, F))};
  for (std::size_t t = 0; t < count && !roots.empty(); ++t) {
    Matrix g = Matrix::identity(F, cd.n);
    for (int s = 0; s < 3; ++s) {
      const Matrix z = retag(cd.basis_matrices[roots[rng() % roots.size()]], F).scaled(static_cast<code_t>(rng() % F->q()));
      g = exp_nilpotent(z) * g;
    }
    out.push_back(borel_from_flag(b.g, g * out[rng() % out.size()].flag));
  }
  return out;
}

}  // namespace modlie
