#pragma once

// Restricted Lie algebras given by structure constants and the p-map on a
// basis. The p-map is extended to arbitrary elements by Jacobson's formula
//
//   (a + b)^[p] = a^[p] + b^[p] + sum_{n=1}^{p-1} s_n(a, b),
//
// where n s_n(a, b) is the coefficient of T^{n-1} in ad(aT + b)^{p-1}(a).

#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "modlie/error.hpp"
#include "modlie/field.hpp"
#include "modlie/matrix.hpp"
#include "modlie/report.hpp"

namespace modlie {

struct ClassicalData;

class RestrictedLieAlgebra;
using LiePtr = std::shared_ptr<const RestrictedLieAlgebra>;

/// Structure constants c_{ij}^m over GF(p) with [e_i, e_j] = sum_m c_{ij}^m e_m
/// and the images e_i^[p] of the basis. Construction checks shapes only;
/// the axioms are checked by verify_restricted.
class RestrictedLieAlgebra {
 public:
  RestrictedLieAlgebra(std::string name, FieldPtr base, std::size_t dim, std::vector<code_t> structure,
                       std::vector<Vec> pbasis, std::vector<std::string> basis_names = {},
                       std::shared_ptr<const ClassicalData> classical = nullptr)
      : name_(std::move(name)),
        base_(std::move(base)),
        dim_(dim),
        sc_(std::move(structure)),
        pbasis_(std::move(pbasis)),
        names_(std::move(basis_names)),
        classical_(std::move(classical)) {
    if (!base_->is_prime_field()) throw DomainError("structure constants must live over GF(p)");
    if (sc_.size() != dim_ * dim_ * dim_) throw DimensionError("structure constant table has wrong size");
    if (pbasis_.size() != dim_) throw DimensionError("pbasis must have one entry per basis vector");
    for (const auto& v : pbasis_)
      if (v.size() != dim_) throw DimensionError("pbasis entry has wrong length");
    for (auto c : sc_)
      if (c >= base_->p()) throw DomainError("structure constant not reduced mod p");
    if (names_.empty())
      for (std::size_t i = 0; i < dim_; ++i) names_.push_back("x" + std::to_string(i));
    if (names_.size() != dim_) throw DimensionError("basis name count differs from dimension");
  }

  const std::string& name() const { return name_; }
  const FieldPtr& base() const { return base_; }
  unsigned p() const { return base_->p(); }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  const std::vector<Vec>& pbasis() const { return pbasis_; }
  const std::shared_ptr<const ClassicalData>& classical() const { return classical_; }

  code_t structure_constant(std::size_t i, std::size_t j, std::size_t m) const {
    return sc_[(i * dim_ + j) * dim_ + m];
  }
  const std::vector<code_t>& structure_constants() const { return sc_; }

  /// Bracket of coordinate vectors over a field of characteristic p.
  Vec bracket(const Field& f, std::span<const code_t> a, std::span<const code_t> b) const {
    Vec r(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (!b[j] || i == j) continue;
        const code_t ab = f.mul(a[i], b[j]);
        const code_t* row = &sc_[(i * dim_ + j) * dim_];
        for (std::size_t m = 0; m < dim_; ++m)
          if (row[m]) r[m] = f.add(r[m], f.mul(ab, row[m]));
      }
    }
    return r;
  }

  /// Bracket with a basis vector, [a, e_j].
  Vec bracket_basis(const Field& f, std::span<const code_t> a, std::size_t j) const {
    Vec r(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (!a[i] || i == j) continue;
      const code_t* row = &sc_[(i * dim_ + j) * dim_];
      for (std::size_t m = 0; m < dim_; ++m)
        if (row[m]) r[m] = f.add(r[m], f.mul(a[i], row[m]));
    }
    return r;
  }

  /// ad(a) as a dim x dim matrix acting on coordinate columns.
  Matrix ad(const FieldPtr& f, std::span<const code_t> a) const {
    Matrix m(f, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      Vec col = bracket_basis(*f, a, j);
      for (std::size_t i = 0; i < dim_; ++i) m(i, j) = col[i];
    }
    return m;
  }

  /// Copy with a replaced p-map table (used to build deliberately broken
  /// algebras for tests and for twisted carriers).
  RestrictedLieAlgebra with_pbasis(std::vector<Vec> pbasis, std::string name) const {
    return RestrictedLieAlgebra(std::move(name), base_, dim_, sc_, std::move(pbasis), names_, classical_);
  }

 private:
  std::string name_;
  FieldPtr base_;
  std::size_t dim_;
  std::vector<code_t> sc_;
  std::vector<Vec> pbasis_;
  std::vector<std::string> names_;
  std::shared_ptr<const ClassicalData> classical_;
};

inline void check_characteristic(const LiePtr& l, const FieldPtr& f) {
  if (f->p() != l->p()) throw ParentMismatch("field characteristic differs from the algebra's");
}

/// An element sum c_i e_i with coefficients in some GF(p^k).
class LieElement {
 public:
  LieElement() = default;
  LieElement(LiePtr parent, FieldPtr f, Vec coeffs) : l_(std::move(parent)), f_(std::move(f)), c_(std::move(coeffs)) {
    check_characteristic(l_, f_);
    if (c_.size() != l_->dim()) throw DimensionError("LieElement: coefficient vector length");
  }
  static LieElement zero(const LiePtr& l, const FieldPtr& f) { return {l, f, Vec(l->dim(), 0)}; }
  static LieElement basis(const LiePtr& l, const FieldPtr& f, std::size_t i) {
    Vec v(l->dim(), 0);
    v.at(i) = 1;
    return {l, f, v};
  }

  const LiePtr& parent() const { return l_; }
  const FieldPtr& field() const { return f_; }
  const Vec& coeffs() const { return c_; }
  code_t operator[](std::size_t i) const { return c_[i]; }
  bool is_zero() const {
    for (auto x : c_)
      if (x) return false;
    return true;
  }

  LieElement operator+(const LieElement& o) const {
    same(o);
    Vec r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f_->add(c_[i], o.c_[i]);
    return {l_, f_, r};
  }
  LieElement operator-(const LieElement& o) const {
    same(o);
    Vec r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f_->sub(c_[i], o.c_[i]);
    return {l_, f_, r};
  }
  LieElement scaled(code_t s) const {
    Vec r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f_->mul(s, c_[i]);
    return {l_, f_, r};
  }
  bool operator==(const LieElement& o) const { return l_ == o.l_ && f_ == o.f_ && c_ == o.c_; }

  void same(const LieElement& o) const {
    if (l_ != o.l_) throw ParentMismatch("Lie elements from different algebras");
    if (f_ != o.f_) throw ParentMismatch("Lie elements over different fields");
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!c_[i]) continue;
      os << (first ? "" : " + ") << f_->format(c_[i]) << "*" << l_->basis_names()[i];
      first = false;
    }
    return first ? "0" : os.str();
  }

 private:
  LiePtr l_;
  FieldPtr f_;
  Vec c_;
};

/// A linear functional on the algebra, stored by its values on the basis.
class Functional {
 public:
  Functional() = default;
  Functional(LiePtr parent, FieldPtr f, Vec values) : l_(std::move(parent)), f_(std::move(f)), v_(std::move(values)) {
    check_characteristic(l_, f_);
    if (v_.size() != l_->dim()) throw DimensionError("Functional: value vector length");
  }
  static Functional zero(const LiePtr& l, const FieldPtr& f) { return {l, f, Vec(l->dim(), 0)}; }

  const LiePtr& parent() const { return l_; }
  const FieldPtr& field() const { return f_; }
  const Vec& values() const { return v_; }
  code_t on_basis(std::size_t i) const { return v_[i]; }
  bool is_zero() const {
    for (auto x : v_)
      if (x) return false;
    return true;
  }

  /// chi(x) for a coordinate vector over the same field.
  code_t operator()(std::span<const code_t> x) const {
    code_t s = 0;
    for (std::size_t i = 0; i < v_.size(); ++i)
      if (x[i] && v_[i]) s = f_->add(s, f_->mul(x[i], v_[i]));
    return s;
  }
  code_t operator()(const LieElement& x) const {
    if (x.parent() != l_) throw ParentMismatch("functional and element from different algebras");
    if (x.field() != f_) throw ParentMismatch("functional and element over different fields");
    return (*this)(x.coeffs());
  }

  Functional scaled(code_t s) const {
    Vec r(v_.size());
    for (std::size_t i = 0; i < v_.size(); ++i) r[i] = f_->mul(s, v_[i]);
    return {l_, f_, r};
  }

  /// Same functional with values regarded in a larger field (prime-field
  /// values only, which embed with unchanged codes).
  Functional over(const FieldPtr& g) const {
    if (g == f_) return *this;
    if (g->p() != f_->p()) throw ParentMismatch("Functional::over: characteristic differs");
    for (auto x : v_)
      if (!f_->in_prime_field(x)) throw DomainError("Functional::over: values outside GF(p)");
    return {l_, g, v_};
  }

  bool operator==(const Functional& o) const { return l_ == o.l_ && f_ == o.f_ && v_ == o.v_; }

  std::string str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v_.size(); ++i) os << (i ? ", " : "") << f_->format(v_[i]);
    os << ")";
    return os.str();
  }

 private:
  LiePtr l_;
  FieldPtr f_;
  Vec v_;
};

inline LieElement bracket(const LieElement& x, const LieElement& y) {
  x.same(y);
  return {x.parent(), x.field(), x.parent()->bracket(*x.field(), x.coeffs(), y.coeffs())};
}

inline Matrix ad(const LieElement& x) { return x.parent()->ad(x.field(), x.coeffs()); }

namespace detail {

inline void add_into(const Field& f, Vec& acc, std::span<const code_t> v, code_t s = 1) {
  for (std::size_t i = 0; i < acc.size(); ++i)
    if (v[i]) acc[i] = f.add(acc[i], s == 1 ? v[i] : f.mul(s, v[i]));
}

// s_1..s_{p-1} on coordinate vectors.
inline std::vector<Vec> s_coefficients(const RestrictedLieAlgebra& l, const Field& f, const Vec& a, const Vec& b) {
  const unsigned p = l.p();
  const std::size_t n = l.dim();
  // poly[d] is the coefficient of T^d in ad(aT + b)^k (a).
  std::vector<Vec> poly{a};
  for (unsigned step = 0; step + 1 < p; ++step) {
    std::vector<Vec> next(poly.size() + 1, Vec(n, 0));
    for (std::size_t d = 0; d < poly.size(); ++d) {
      add_into(f, next[d + 1], l.bracket(f, a, poly[d]));
      add_into(f, next[d], l.bracket(f, b, poly[d]));
    }
    poly = std::move(next);
  }
  std::vector<Vec> s(p - 1, Vec(n, 0));
  for (unsigned k = 1; k < p; ++k) {
    const code_t inv_k = f.inv(f.from_int(k));
    for (std::size_t i = 0; i < n; ++i) s[k - 1][i] = f.mul(inv_k, poly[k - 1][i]);
  }
  return s;
}

inline Vec p_power_rec(const RestrictedLieAlgebra& l, const Field& f, const Vec& x,
                       const std::vector<std::size_t>& order, std::size_t start) {
  const std::size_t n = l.dim();
  std::size_t pos = start;
  while (pos < order.size() && x[order[pos]] == 0) ++pos;
  if (pos == order.size()) return Vec(n, 0);
  const std::size_t i = order[pos];
  Vec head(n, 0), rest = x;
  head[i] = x[i];
  rest[i] = 0;
  Vec result(n, 0);
  // (a e_i)^[p] = a^p e_i^[p]
  add_into(f, result, l.pbasis()[i], f.frob(x[i]));
  bool rest_zero = true;
  for (auto c : rest)
    if (c) rest_zero = false;
  if (rest_zero) return result;
  add_into(f, result, p_power_rec(l, f, rest, order, pos + 1));
  for (const auto& s : s_coefficients(l, f, head, rest)) add_into(f, result, s);
  return result;
}

}  // namespace detail

/// s_1(a, b), ..., s_{p-1}(a, b), expanded symbolically in T.
inline std::vector<LieElement> s_coefficients(const LieElement& a, const LieElement& b) {
  a.same(b);
  std::vector<LieElement> out;
  for (auto& v : detail::s_coefficients(*a.parent(), *a.field(), a.coeffs(), b.coeffs()))
    out.emplace_back(a.parent(), a.field(), std::move(v));
  return out;
}

/// x^[p] by Jacobson's formula, peeling basis terms in the given order
/// (default: lowest index first).
inline LieElement p_power(const LieElement& x, std::vector<std::size_t> order = {}) {
  if (order.empty()) {
    order.resize(x.parent()->dim());
    std::iota(order.begin(), order.end(), 0);
  }
  if (order.size() != x.parent()->dim()) throw DimensionError("p_power: peel order must be a permutation");
  return {x.parent(), x.field(), detail::p_power_rec(*x.parent(), *x.field(), x.coeffs(), order, 0)};
}

/// Checks antisymmetry, Jacobi, ad([p]) = ad^p on the basis, and for every
/// basis pair that Jacobson's extension is order independent and
/// ad-compatible on e_i + e_j.
inline Report verify_restricted(const LiePtr& l) {
  Report rep;
  const Field& f = *l->base();
  const FieldPtr& F = l->base();
  const std::size_t n = l->dim();
  const unsigned p = l->p();
  const auto& names = l->basis_names();

  {
    std::string w;
    for (std::size_t i = 0; i < n && w.empty(); ++i)
      for (std::size_t j = 0; j < n && w.empty(); ++j)
        for (std::size_t m = 0; m < n && w.empty(); ++m)
          if (l->structure_constant(i, j, m) != f.neg(l->structure_constant(j, i, m)))
            w = "[" + names[i] + "," + names[j] + "] != -[" + names[j] + "," + names[i] + "]";
    rep.add("antisymmetry", w.empty(), w);
  }
  {
    std::string w;
    for (std::size_t i = 0; i < n && w.empty(); ++i)
      for (std::size_t j = i + 1; j < n && w.empty(); ++j)
        for (std::size_t k = j + 1; k < n && w.empty(); ++k) {
          Vec ei(n, 0), ej(n, 0), ek(n, 0);
          ei[i] = ej[j] = ek[k] = 1;
          Vec s = l->bracket(f, ei, l->bracket(f, ej, ek));
          detail::add_into(f, s, l->bracket(f, ej, l->bracket(f, ek, ei)));
          detail::add_into(f, s, l->bracket(f, ek, l->bracket(f, ei, ej)));
          for (auto c : s)
            if (c) w = "Jacobi fails on (" + names[i] + "," + names[j] + "," + names[k] + ")";
        }
    rep.add("jacobi", w.empty(), w);
  }
  {
    std::string w;
    for (std::size_t i = 0; i < n && w.empty(); ++i) {
      Vec ei(n, 0);
      ei[i] = 1;
      if (!(l->ad(F, l->pbasis()[i]) == l->ad(F, ei).pow(p))) w = names[i];
    }
    rep.add("ad_compatibility", w.empty(), w.empty() ? "" : "ad(" + w + "^[p]) != ad(" + w + ")^p");
  }
  {
    std::string w;
    for (std::size_t i = 0; i < n && w.empty(); ++i)
      for (std::size_t j = i + 1; j < n && w.empty(); ++j) {
        Vec x(n, 0);
        x[i] = x[j] = 1;
        std::vector<std::size_t> fwd(n), rev(n);
        std::iota(fwd.begin(), fwd.end(), 0);
        std::iota(rev.rbegin(), rev.rend(), 0);
        Vec a = detail::p_power_rec(*l, f, x, fwd, 0);
        Vec b = detail::p_power_rec(*l, f, x, rev, 0);
        if (a != b) {
          w = "(" + names[i] + "+" + names[j] + ")^[p] depends on the peel order";
        } else if (!(l->ad(F, a) == l->ad(F, x).pow(p))) {
          w = "ad((" + names[i] + "+" + names[j] + ")^[p]) != ad(" + names[i] + "+" + names[j] + ")^p";
        }
      }
    rep.add("jacobson_consistency", w.empty(), w);
  }
  return rep;
}

}  // namespace modlie
