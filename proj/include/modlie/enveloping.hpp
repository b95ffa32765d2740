#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "modlie/config.hpp"
#include "modlie/extension.hpp"
#include "modlie/lie_algebra.hpp"
#include "modlie/matrix.hpp"
#include "modlie/report.hpp"

namespace modlie {

/// PBW monomial x_{o(0)}^{a_0} ... x_{o(N-1)}^{a_{N-1}}, 0 <= a_i < p, packed
/// in base p with the first PBW position most significant.
using Mono = std::uint64_t;
using Terms = std::map<Mono, code_t>;

class ReducedEnvAlgebra;
using EnvPtr = std::shared_ptr<const ReducedEnvAlgebra>;

/// U_chi(l) over a field F containing the values of chi, with a fixed PBW
/// order of l's basis. u(l) is the case chi = 0.
class ReducedEnvAlgebra {
 public:
  ReducedEnvAlgebra(LiePtr l, const Functional& chi, std::vector<std::size_t> order)
      : l_(std::move(l)), f_(chi.field()), chi_(chi.values()), order_(std::move(order)) {
    if (chi.parent() != l_) throw ParentMismatch("enveloping algebra: functional on another algebra");
    n_ = l_->dim();
    p_ = l_->p();
    if (order_.empty()) {
      order_.resize(n_);
      std::iota(order_.begin(), order_.end(), 0);
    }
    if (order_.size() != n_) throw DimensionError("PBW order must list every basis index once");
    pos_.assign(n_, n_);
    for (std::size_t k = 0; k < n_; ++k) {
      if (order_[k] >= n_ || pos_[order_[k]] != n_) throw DimensionError("PBW order is not a permutation");
      pos_[order_[k]] = k;
    }
    if (static_cast<double>(n_) * std::log2(static_cast<double>(p_)) > 56.0)
      throw GuardError("enveloping algebra: p^N exceeds the monomial encoding");
    stride_.assign(n_, 1);
    for (std::size_t k = n_; k-- > 1;) stride_[k - 1] = stride_[k] * p_;
    dim_ = n_ ? stride_[0] * p_ : 1;
    for (std::size_t i = 0; i < n_; ++i) chip_.push_back(f_->frob(chi_[i]));
    brackets_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      Vec ei(n_, 0);
      ei[i] = 1;
      for (std::size_t j = 0; j < n_; ++j) brackets_[i * n_ + j] = l_->bracket_basis(*l_->base(), ei, j);
    }
  }

  const LiePtr& lie() const { return l_; }
  const FieldPtr& field() const { return f_; }
  const Vec& chi_values() const { return chi_; }
  bool restricted() const {
    for (auto c : chi_)
      if (c) return false;
    return true;
  }
  unsigned p() const { return p_; }
  std::size_t rank() const { return n_; }
  /// p^N.
  std::uint64_t dim() const { return dim_; }
  const std::vector<std::size_t>& order() const { return order_; }
  std::size_t position(std::size_t basis_index) const { return pos_[basis_index]; }
  std::uint64_t stride(std::size_t position) const { return stride_[position]; }

  unsigned exponent(Mono m, std::size_t position) const {
    return static_cast<unsigned>((m / stride_[position]) % p_);
  }
  std::vector<unsigned> exponents(Mono m) const {
    std::vector<unsigned> e(n_);
    for (std::size_t k = 0; k < n_; ++k) e[k] = exponent(m, k);
    return e;
  }
  Mono monomial(const std::vector<unsigned>& exps) const {
    if (exps.size() != n_) throw DimensionError("monomial: exponent vector length");
    Mono m = 0;
    for (std::size_t k = 0; k < n_; ++k) {
      if (exps[k] >= p_) throw DomainError("monomial: exponent must be below p");
      m += exps[k] * stride_[k];
    }
    return m;
  }
  unsigned degree(Mono m) const {
    unsigned d = 0;
    for (std::size_t k = 0; k < n_; ++k) d += exponent(m, k);
    return d;
  }

  /// x_j * m for the basis vector x_j of l, straightened.
  std::shared_ptr<const Terms> left_mul(std::size_t j, Mono m) const {
    const std::uint64_t key = (m << 8) | j;
    {
      std::shared_lock lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    auto value = std::make_shared<const Terms>(compute_left_mul(j, m));
    std::unique_lock lock(mu_);
    return memo_.emplace(key, std::move(value)).first->second;
  }

  /// x_j * (sum of terms).
  Terms left_mul(std::size_t j, const Terms& t) const {
    Terms out;
    for (const auto& [m, c] : t) accumulate(out, *left_mul(j, m), c);
    return out;
  }

  /// Monomial m times the given terms, applying its letters right to left.
  Terms mono_times(Mono m, Terms t) const {
    for (std::size_t k = n_; k-- > 0;) {
      const unsigned e = exponent(m, k);
      for (unsigned r = 0; r < e; ++r) t = left_mul(order_[k], t);
    }
    return t;
  }

  void accumulate(Terms& acc, const Terms& t, code_t s) const {
    if (!s) return;
    for (const auto& [m, c] : t) {
      auto [it, fresh] = acc.try_emplace(m, 0);
      it->second = f_->add(it->second, f_->mul(s, c));
      if (!it->second) acc.erase(it);
    }
  }

  std::string mono_str(Mono m) const {
    std::string s;
    for (std::size_t k = 0; k < n_; ++k) {
      const unsigned e = exponent(m, k);
      if (!e) continue;
      if (!s.empty()) s += "*";
      s += l_->basis_names()[order_[k]];
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
  }

 private:
  Terms compute_left_mul(std::size_t j, Mono m) const {
    const std::size_t s = pos_[j];
    std::size_t t = 0;
    while (t < n_ && exponent(m, t) == 0) ++t;
    Terms out;
    if (t >= s) {
      const unsigned e = exponent(m, s);
      if (e + 1 < p_) {
        out.emplace(m + stride_[s], 1);
        return out;
      }
      // x_j^p = x_j^[p] + chi(x_j)^p
      const Mono rest = m - e * stride_[s];
      if (chip_[j]) out.emplace(rest, chip_[j]);
      const Vec& pj = l_->pbasis()[j];
      for (std::size_t i = 0; i < n_; ++i)
        if (pj[i]) accumulate(out, *left_mul(i, rest), pj[i]);
      return out;
    }
    // x_j x_u w = x_u (x_j w) + [x_j, x_u] w with u the leading letter of m.
    const std::size_t u = order_[t];
    const Mono rest = m - stride_[t];
    for (const auto& [mm, c] : *left_mul(j, rest)) accumulate(out, *left_mul(u, mm), c);
    const Vec& br = brackets_[j * n_ + u];
    for (std::size_t i = 0; i < n_; ++i)
      if (br[i]) accumulate(out, *left_mul(i, rest), br[i]);
    return out;
  }

  LiePtr l_;
  FieldPtr f_;
  Vec chi_, chip_;
  std::vector<std::size_t> order_, pos_;
  std::vector<std::uint64_t> stride_;
  std::vector<Vec> brackets_;
  std::size_t n_ = 0;
  unsigned p_ = 0;
  std::uint64_t dim_ = 1;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<std::uint64_t, std::shared_ptr<const Terms>> memo_;
};

inline EnvPtr make_env(const LiePtr& l, const Functional& chi, std::vector<std::size_t> order = {}) {
  return std::make_shared<const ReducedEnvAlgebra>(l, chi, std::move(order));
}

/// u(l) over F.
inline EnvPtr restricted_env(const LiePtr& l, const FieldPtr& f, std::vector<std::size_t> order = {}) {
  return make_env(l, Functional::zero(l, f), std::move(order));
}

class EnvElement {
 public:
  EnvElement(EnvPtr a, Terms t = {}) : a_(std::move(a)), t_(std::move(t)) {
    for (auto it = t_.begin(); it != t_.end();) it = it->second ? std::next(it) : t_.erase(it);
  }

  static EnvElement one(const EnvPtr& a) { return {a, Terms{{0, 1}}}; }
  static EnvElement monomial(const EnvPtr& a, Mono m, code_t c = 1) { return {a, Terms{{m, c}}}; }
  /// The basis vector x_i of l.
  static EnvElement generator(const EnvPtr& a, std::size_t i) {
    return monomial(a, a->stride(a->position(i)));
  }
  static EnvElement from_lie(const EnvPtr& a, const LieElement& x) {
    if (x.parent() != a->lie()) throw ParentMismatch("from_lie: element of another algebra");
    if (x.field() != a->field()) throw ParentMismatch("from_lie: element over another field");
    Terms t;
    for (std::size_t i = 0; i < x.coeffs().size(); ++i)
      if (x[i]) t.emplace(a->stride(a->position(i)), x[i]);
    return {a, std::move(t)};
  }

  const EnvPtr& algebra() const { return a_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  code_t coeff(Mono m) const {
    auto it = t_.find(m);
    return it == t_.end() ? 0 : it->second;
  }

  EnvElement operator+(const EnvElement& o) const {
    same(o);
    Terms t = t_;
    a_->accumulate(t, o.t_, 1);
    return {a_, std::move(t)};
  }
  EnvElement operator-(const EnvElement& o) const {
    same(o);
    Terms t = t_;
    a_->accumulate(t, o.t_, a_->field()->neg(1));
    return {a_, std::move(t)};
  }
  EnvElement scaled(code_t s) const {
    Terms t;
    a_->accumulate(t, t_, s);
    return {a_, std::move(t)};
  }
  EnvElement operator*(const EnvElement& o) const {
    same(o);
    Terms out;
    for (const auto& [m, c] : t_) a_->accumulate(out, a_->mono_times(m, o.t_), c);
    return {a_, std::move(out)};
  }
  EnvElement pow(unsigned e) const {
    EnvElement r = one(a_);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }
  bool operator==(const EnvElement& o) const { return a_ == o.a_ && t_ == o.t_; }

  /// Dense coordinates in the PBW basis (index = packed monomial).
  Vec dense() const {
    Vec v(a_->dim(), 0);
    for (const auto& [m, c] : t_) v[m] = c;
    return v;
  }

  /// Canonical text: terms in increasing packed-monomial order.
  std::string str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
      if (!first) os << " + ";
      first = false;
      const std::string ms = a_->mono_str(m);
      if (m == 0)
        os << a_->field()->format(c);
      else if (c == 1)
        os << ms;
      else
        os << a_->field()->format(c) << "*" << ms;
    }
    return os.str();
  }

  void same(const EnvElement& o) const {
    if (a_ != o.a_) throw ParentMismatch("enveloping algebra elements from different algebras");
  }

 private:
  EnvPtr a_;
  Terms t_;
};

inline EnvElement straighten_multiply(const EnvElement& u, const EnvElement& v) { return u * v; }

/// Element of u(l) (x) u(l).
struct TensorElement {
  EnvPtr a;
  std::map<std::pair<Mono, Mono>, code_t> terms;

  void add(Mono x, Mono y, code_t c) {
    if (!c) return;
    auto [it, fresh] = terms.try_emplace({x, y}, 0);
    it->second = a->field()->add(it->second, c);
    if (!it->second) terms.erase(it);
  }
  TensorElement operator+(const TensorElement& o) const {
    TensorElement r = *this;
    for (const auto& [k, c] : o.terms) r.add(k.first, k.second, c);
    return r;
  }
  TensorElement operator-(const TensorElement& o) const {
    TensorElement r = *this;
    for (const auto& [k, c] : o.terms) r.add(k.first, k.second, a->field()->neg(c));
    return r;
  }
  bool operator==(const TensorElement& o) const { return a == o.a && terms == o.terms; }
  bool is_zero() const { return terms.empty(); }

  static TensorElement pure(const EnvElement& x, const EnvElement& y) {
    x.same(y);
    TensorElement r{x.algebra(), {}};
    const Field& f = *x.algebra()->field();
    for (const auto& [m, c] : x.terms())
      for (const auto& [n, d] : y.terms()) r.add(m, n, f.mul(c, d));
    return r;
  }
};

namespace detail {

// Delta(x_i) * t = (x_i (x) 1) t + (1 (x) x_i) t.
inline TensorElement delta_generator_times(std::size_t i, const TensorElement& t) {
  TensorElement r{t.a, {}};
  const Field& f = *t.a->field();
  for (const auto& [k, c] : t.terms) {
    for (const auto& [m, d] : *t.a->left_mul(i, k.first)) r.add(m, k.second, f.mul(c, d));
    for (const auto& [m, d] : *t.a->left_mul(i, k.second)) r.add(k.first, m, f.mul(c, d));
  }
  return r;
}

}  // namespace detail

/// Delta on u(l): generators are primitive, extended multiplicatively.
inline TensorElement coproduct(const EnvElement& u) {
  const EnvPtr& a = u.algebra();
  if (!a->restricted()) throw DomainError("coproduct: the Hopf structure needs chi = 0");
  TensorElement out{a, {}};
  const Field& f = *a->field();
  for (const auto& [m, c] : u.terms()) {
    TensorElement t{a, {}};
    t.add(0, 0, 1);
    for (std::size_t k = a->rank(); k-- > 0;)
      for (unsigned r = 0; r < a->exponent(m, k); ++r) t = detail::delta_generator_times(a->order()[k], t);
    for (const auto& [key, d] : t.terms) out.add(key.first, key.second, f.mul(c, d));
  }
  return out;
}

/// (epsilon (x) id) applied to a tensor: keeps the terms with trivial left factor.
inline EnvElement counit_left(const TensorElement& t) {
  Terms r;
  for (const auto& [k, c] : t.terms)
    if (k.first == 0) r.emplace(k.second, c);
  return {t.a, std::move(r)};
}
inline EnvElement counit_right(const TensorElement& t) {
  Terms r;
  for (const auto& [k, c] : t.terms)
    if (k.second == 0) r.emplace(k.first, c);
  return {t.a, std::move(r)};
}

namespace detail {

// Row space accumulated in batches; used when the full matrix would be large.
class RowSpaceBuilder {
 public:
  RowSpaceBuilder(FieldPtr f, std::size_t cols) : f_(std::move(f)), cols_(cols), space_(f_, cols) {}
  void add(Vec row) {
    pending_.push_back(std::move(row));
    if (pending_.size() >= 2 * cols_ + 16) flush();
  }
  const Subspace& space() {
    flush();
    return space_;
  }

 private:
  void flush() {
    if (pending_.empty()) return;
    auto rows = space_.basis_vectors();
    rows.insert(rows.end(), pending_.begin(), pending_.end());
    pending_.clear();
    space_ = Subspace::span(f_, cols_, rows);
  }
  FieldPtr f_;
  std::size_t cols_;
  Subspace space_;
  std::vector<Vec> pending_;
};

}  // namespace detail

/// P(u(l)) = ker(u -> Delta u - u (x) 1 - 1 (x) u) in PBW coordinates.
inline Subspace primitives(const EnvPtr& a, std::size_t guard = config::kPrimitivesGuard) {
  if (!a->restricted()) throw DomainError("primitives: the Hopf structure needs chi = 0");
  if (a->dim() > guard)
    throw GuardError("primitives: p^N = " + std::to_string(a->dim()) + " exceeds guard " + std::to_string(guard));
  const std::size_t d = a->dim();
  const Field& f = *a->field();
  std::map<std::pair<Mono, Mono>, std::vector<std::pair<std::size_t, code_t>>> rows;
  for (Mono m = 0; m < d; ++m) {
    const EnvElement u = EnvElement::monomial(a, m);
    TensorElement t = coproduct(u) - TensorElement::pure(u, EnvElement::one(a)) -
                      TensorElement::pure(EnvElement::one(a), u);
    for (const auto& [k, c] : t.terms) rows[k].emplace_back(m, c);
  }
  detail::RowSpaceBuilder b(a->field(), d);
  for (const auto& [k, entries] : rows) {
    Vec r(d, 0);
    for (auto [col, c] : entries) r[col] = f.add(r[col], c);
    b.add(std::move(r));
  }
  return kernel(b.space().basis());
}

namespace detail {

// Rank of a set of sparse vectors, split into independent supports first.
inline std::size_t sparse_rank(const FieldPtr& f, std::size_t ambient, const std::vector<Terms>& vecs) {
  std::vector<std::size_t> parent(ambient);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& v : vecs) {
    if (v.empty()) continue;
    const std::size_t r = find(v.begin()->first);
    for (const auto& [m, c] : v) parent[find(m)] = r;
  }
  std::map<std::size_t, std::vector<const Terms*>> groups;
  for (const auto& v : vecs)
    if (!v.empty()) groups[find(v.begin()->first)].push_back(&v);
  std::size_t total = 0;
  for (const auto& [root, members] : groups) {
    std::map<Mono, std::size_t> cols;
    for (const Terms* v : members)
      for (const auto& [m, c] : *v) cols.try_emplace(m, cols.size());
    Matrix mat(f, members.size(), cols.size());
    for (std::size_t i = 0; i < members.size(); ++i)
      for (const auto& [m, c] : *members[i]) mat(i, cols[m]) = c;
    total += rank(std::move(mat));
  }
  return total;
}

}  // namespace detail

struct Block {
  code_t eta = 0;
  std::uint64_t dim = 0;
  bool materialized = false;
  EnvElement idempotent;
};

struct BlockDecomposition {
  std::vector<Block> blocks;
  std::uint64_t total_dim = 0;
  bool materialized = false;
  Report report;
};

/// u(l_chi) = sum over eta in GF(p) of u(l_chi) Ni_eta(c), each block a copy
/// of U_{eta chi}(l).
inline BlockDecomposition block_decompose(const CentralExtensionAlgebra& E, std::size_t guard = config::kBlockGuard) {
  BlockDecomposition out;
  const LiePtr& l = E.base();
  const FieldPtr F = l->base();
  const unsigned p = l->p();
  const std::size_t n = l->dim(), ci = E.c_index();
  const EnvPtr A = restricted_env(E.carrier(), F);
  out.materialized = A->dim() <= guard;

  const Mono cstride = A->stride(A->position(ci));
  std::vector<EnvElement> ni;
  for (code_t eta = 0; eta < p; ++eta) {
    const NielsenElement nel = nielsen(eta, p);
    Terms t;
    for (unsigned k = 0; k < p; ++k)
      if (nel.poly.coeffs[k]) t.emplace(k * cstride, nel.poly.coeffs[k]);
    ni.emplace_back(A, std::move(t));
  }

  {
    std::string wi, wo;
    EnvElement sum(A);
    for (code_t a = 0; a < p; ++a) {
      sum = sum + ni[a];
      if (wi.empty() && !(ni[a] * ni[a] == ni[a])) wi = "Ni_" + std::to_string(a);
      for (code_t b = 0; b < p; ++b)
        if (a != b && wo.empty() && !(ni[a] * ni[b]).is_zero())
          wo = "Ni_" + std::to_string(a) + " Ni_" + std::to_string(b);
    }
    out.report.add("idempotent", wi.empty(), wi);
    out.report.add("orthogonal", wo.empty(), wo);
    out.report.add("complete", sum == EnvElement::one(A), sum.str());
    std::string wc;
    for (code_t a = 0; a < p && wc.empty(); ++a)
      for (std::size_t i = 0; i < n + 1 && wc.empty(); ++i) {
        const EnvElement x = EnvElement::generator(A, i);
        if (!(x * ni[a] == ni[a] * x)) wc = "Ni_" + std::to_string(a) + " and " + A->lie()->basis_names()[i];
      }
    out.report.add("central", wc.empty(), wc);
  }

  const Functional chi = E.chi();
  for (code_t eta = 0; eta < p; ++eta) {
    Block blk{eta, 0, out.materialized, ni[eta]};
    const std::string tag = "eta=" + std::to_string(eta) + ": ";
    // x^p - x^[p] = (eta chi)(x)^p on the block, and brackets are preserved.
    std::string wr, wb;
    for (std::size_t i = 0; i < n; ++i) {
      const EnvElement xi = EnvElement::generator(A, i) * ni[eta];
      const LieElement xp = E.embed(p_power(LieElement::basis(l, F, i)));
      const EnvElement lhs = xi.pow(p) - EnvElement::from_lie(A, xp) * ni[eta];
      const code_t scalar = F->frob(F->mul(eta, chi.on_basis(i)));
      if (wr.empty() && !(lhs == ni[eta].scaled(scalar))) wr = l->basis_names()[i];
      for (std::size_t j = i + 1; j < n && wb.empty(); ++j) {
        const EnvElement xj = EnvElement::generator(A, j) * ni[eta];
        const LieElement br = E.embed(bracket(LieElement::basis(l, F, i), LieElement::basis(l, F, j)));
        if (!(xi * xj - xj * xi == EnvElement::from_lie(A, br) * ni[eta]))
          wb = l->basis_names()[i] + "," + l->basis_names()[j];
      }
    }
    out.report.add(tag + "p_relation", wr.empty(), wr);
    out.report.add(tag + "bracket_relation", wb.empty(), wb);

    if (out.materialized) {
      std::vector<Terms> images;
      for (Mono m = 0; m < A->dim(); ++m) images.push_back((EnvElement::monomial(A, m) * ni[eta]).terms());
      blk.dim = detail::sparse_rank(F, A->dim(), images);

      // phi: U_{eta chi}(l) -> block, x^a -> x^a Ni_eta; multiplicative on
      // generator times monomial and injective.
      const EnvPtr B = make_env(l, chi.scaled(eta));
      auto lift = [&](const EnvElement& u) {
        Terms t;
        for (const auto& [m, c] : u.terms()) {
          Mono mm = 0;
          for (std::size_t k = 0; k < n; ++k) mm += B->exponent(m, k) * A->stride(A->position(B->order()[k]));
          t.emplace(mm, c);
        }
        return EnvElement(A, std::move(t)) * ni[eta];
      };
      std::string wm;
      std::vector<Terms> phi;
      for (Mono m = 0; m < B->dim(); ++m) {
        const EnvElement bm = EnvElement::monomial(B, m);
        const EnvElement pm = lift(bm);
        phi.push_back(pm.terms());
        for (std::size_t i = 0; i < n && wm.empty(); ++i)
          if (!(lift(EnvElement::generator(B, i) * bm) == lift(EnvElement::generator(B, i)) * pm))
            wm = l->basis_names()[i] + " * " + B->mono_str(m);
      }
      out.report.add(tag + "multiplicative", wm.empty(), wm);
      const std::size_t r = detail::sparse_rank(F, A->dim(), phi);
      out.report.add(tag + "injective", r == B->dim(), "rank " + std::to_string(r));
      out.report.add(tag + "block_dim", blk.dim == B->dim(),
                     std::to_string(blk.dim) + " vs p^N = " + std::to_string(B->dim()));
    } else {
      // PBW count; not materialized.
      blk.dim = A->dim() / p;
    }
    out.total_dim += blk.dim;
    out.blocks.push_back(std::move(blk));
  }
  out.report.add("total_dim", out.total_dim == A->dim(),
                 std::to_string(out.total_dim) + " vs p^(N+1) = " + std::to_string(A->dim()));
  return out;
}

/// c = (x^p - x^[p]) / chi(x)^p in u(l_chi).
inline EnvElement central_c(const CentralExtensionAlgebra& E, const LieElement& x) {
  const FieldPtr& F = x.field();
  const Functional chi = E.chi().over(F);
  const code_t cx = chi(x);
  if (!cx) throw DomainError("central_c: chi(x) must be nonzero");
  const EnvPtr A = restricted_env(E.carrier(), F);
  const EnvElement X = EnvElement::from_lie(A, E.embed(x));
  const EnvElement r = X.pow(E.base()->p()) - EnvElement::from_lie(A, E.embed(p_power(x)));
  return r.scaled(F->inv(F->frob(cx)));
}

}  // namespace modlie
