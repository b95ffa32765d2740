#pragma once

#include <string>
#include <utility>
#include <vector>

#include "modlie/classical.hpp"
#include "modlie/lie_algebra.hpp"
#include "modlie/matrix.hpp"
#include "modlie/report.hpp"

namespace modlie {

/// Integer weight; coordinates are the values on the Cartan basis H_i
/// (for sl_n, <lambda, alpha_i^vee>). Reduction mod p happens on use.
struct Weight {
  std::vector<long long> coords;

  std::vector<code_t> reduced(const Field& f) const {
    std::vector<code_t> r;
    for (auto c : coords) r.push_back(f.from_int(c));
    return r;
  }
  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + std::to_string(coords[i]);
    return s + ")";
  }
};

/// Matrix with the same entries regarded over a field with the same prime.
inline Matrix lift_to(const Matrix& m, const FieldPtr& f) {
  if (m.field() == f) return m;
  if (!m.field()->is_prime_field() || m.field()->p() != f->p())
    throw ParentMismatch("lift_to: only GF(p) matrices embed");
  return retag(m, f);
}

/// Field containing both arguments' values when one of them is GF(p).
inline FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return a;
  if (a->p() != b->p()) throw ParentMismatch("fields of different characteristic");
  if (a->is_prime_field()) return b;
  if (b->is_prime_field()) return a;
  throw ParentMismatch("no common field: " + a->describe() + " and " + b->describe());
}

/// A finite-dimensional U_chi(g)-module: one action matrix per basis vector
/// of g, acting on column vectors. Construction checks the bracket
/// relations and rho(x)^p - rho(x^[p]) = chi(x)^p on the generators.
class FdModule {
 public:
  FdModule(LiePtr g, const Functional& chi, std::vector<Matrix> action, std::size_t dim)
      : g_(std::move(g)), chi_(chi), action_(std::move(action)), dim_(dim) {
    if (chi_.parent() != g_) throw ParentMismatch("FdModule: p-character on another algebra");
    if (action_.size() != g_->dim()) throw DimensionError("FdModule: one action matrix per generator");
    for (const auto& m : action_) {
      if (m.rows() != dim_ || m.cols() != dim_) throw DimensionError("FdModule: action matrix shape");
      if (m.field() != chi_.field()) throw ParentMismatch("FdModule: action and p-character over different fields");
    }
    const Report rep = check_invariants();
    if (const Check* c = rep.first_failure()) throw InvariantError("FdModule: " + c->name + " fails: " + c->witness);
  }
  FdModule(LiePtr g, const Functional& chi, std::vector<Matrix> action)
      : FdModule(g, chi, action, action.empty() ? 0 : action.front().rows()) {}

  const LiePtr& algebra() const { return g_; }
  const Functional& chi() const { return chi_; }
  const FieldPtr& field() const { return chi_.field(); }
  std::size_t dim() const { return dim_; }
  const Matrix& action(std::size_t i) const { return action_[i]; }
  const std::vector<Matrix>& actions() const { return action_; }

  /// rho(x) for an element with coordinates over the module's field.
  Matrix act(std::span<const code_t> x) const {
    Matrix r(field(), dim_, dim_);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i]) r.add_scaled(action_[i], x[i]);
    return r;
  }

  Report check_invariants() const {
    Report rep;
    const Field& f = *field();
    const auto& names = g_->basis_names();
    const std::size_t n = g_->dim();
    std::string wb, wp;
    for (std::size_t i = 0; i < n && wb.empty(); ++i) {
      Vec ei(n, 0);
      ei[i] = 1;
      for (std::size_t j = i + 1; j < n && wb.empty(); ++j)
        if (!(commutator(action_[i], action_[j]) == act(g_->bracket_basis(*g_->base(), ei, j))))
          wb = "[rho(" + names[i] + "), rho(" + names[j] + ")]";
    }
    for (std::size_t i = 0; i < n && wp.empty(); ++i) {
      Matrix lhs = action_[i].pow(g_->p()) - act(g_->pbasis()[i]);
      if (!(lhs == Matrix::identity(field(), dim_).scaled(f.frob(chi_.on_basis(i))))) wp = names[i];
    }
    rep.add("bracket_relations", wb.empty(), wb);
    rep.add("p_character", wp.empty(), wp.empty() ? "" : "rho(" + wp + ")^p - rho(" + wp + "^[p]) != chi^p");
    return rep;
  }

 private:
  LiePtr g_;
  Functional chi_;
  std::vector<Matrix> action_;
  std::size_t dim_;
};

inline FdModule zero_module(const LiePtr& g, const Functional& chi) {
  return {g, chi, std::vector<Matrix>(g->dim(), Matrix(chi.field(), 0, 0)), 0};
}

/// Contragredient module: rho*(x) = -rho(x)^T, p-character -chi.
inline FdModule dual(const FdModule& m) {
  std::vector<Matrix> a;
  for (const auto& x : m.actions()) a.push_back(-x.transpose());
  return {m.algebra(), m.chi().scaled(m.field()->neg(1)), std::move(a), m.dim()};
}

inline FdModule direct_sum(const FdModule& a, const FdModule& b) {
  if (a.algebra() != b.algebra()) throw ParentMismatch("direct_sum: modules over different algebras");
  if (!(a.chi() == b.chi())) throw ParentMismatch("direct_sum: different p-characters");
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a.actions().size(); ++i) act.push_back(Matrix::direct_sum(a.action(i), b.action(i)));
  return {a.algebra(), a.chi(), std::move(act), a.dim() + b.dim()};
}

/// Same module with scalars extended to F.
inline FdModule extend_scalars(const FdModule& m, const FieldPtr& f) {
  if (m.field() == f) return m;
  std::vector<Matrix> act;
  for (const auto& x : m.actions()) act.push_back(lift_to(x, f));
  return {m.algebra(), m.chi().over(f), std::move(act), m.dim()};
}

/// Action on an invariant subspace, in the coordinates of its echelon basis.
inline FdModule submodule(const FdModule& m, const Subspace& w) {
  std::vector<Matrix> act;
  for (const auto& x : m.actions()) {
    Matrix r(m.field(), w.dim(), w.dim());
    for (std::size_t k = 0; k < w.dim(); ++k) {
      const Vec img = x.apply(w.basis().row(k));
      if (!w.contains(img)) throw InvariantError("submodule: subspace is not invariant");
      const Vec c = w.coordinates(img);
      for (std::size_t r2 = 0; r2 < w.dim(); ++r2) r(r2, k) = c[r2];
    }
    act.push_back(std::move(r));
  }
  return {m.algebra(), m.chi(), std::move(act), w.dim()};
}

/// M / W on the standard basis vectors at the non-pivot positions of W.
inline FdModule quotient(const FdModule& m, const Subspace& w) {
  const auto cols = w.non_pivots();
  std::vector<Matrix> act;
  for (const auto& x : m.actions()) {
    Matrix r(m.field(), cols.size(), cols.size());
    for (std::size_t a = 0; a < cols.size(); ++a) {
      const Vec img = w.reduce(x.col_vec(cols[a]));
      for (std::size_t b = 0; b < cols.size(); ++b) r(b, a) = img[cols[b]];
    }
    act.push_back(std::move(r));
  }
  for (std::size_t k = 0; k < w.dim(); ++k)
    for (const auto& x : m.actions())
      if (!w.contains(x.apply(w.basis().row(k)))) throw InvariantError("quotient: subspace is not invariant");
  return {m.algebra(), m.chi(), std::move(act), cols.size()};
}

}  // namespace modlie
