#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "modlie/config.hpp"
#include "modlie/module.hpp"

namespace modlie {

namespace detail {

// Semi-echelon basis grown one vector at a time. Row i has a 1 at pivot i
// and zeros at the pivots of earlier rows; `combo` tracks each row as a
// combination of the inserted vectors when requested.
class Echelon {
 public:
  Echelon(FieldPtr f, std::size_t n, bool track = false) : f_(std::move(f)), n_(n), track_(track) {}

  std::size_t size() const { return rows_.size(); }
  const std::vector<Vec>& inserted() const { return inserted_; }

  /// Reduces v; returns the coefficients used (in terms of inserted vectors)
  /// when tracking.
  Vec reduce(Vec& v, Vec* combo = nullptr) const {
    if (combo) combo->assign(inserted_.size(), 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const code_t c = v[piv_[i]];
      if (!c) continue;
      detail::axpy_row(*f_, v, rows_[i], c, 0);
      if (combo) {
        // v_original = sum c_i row_i + remainder and row_i = sum combos_[i] inserted
        for (std::size_t k = 0; k < combos_[i].size(); ++k)
          if (combos_[i][k]) (*combo)[k] = f_->add((*combo)[k], f_->mul(c, combos_[i][k]));
      }
    }
    return v;
  }

  /// Inserts v if independent; returns true when added.
  bool insert(const Vec& v) {
    Vec r = v;
    Vec combo;
    reduce(r, track_ ? &combo : nullptr);
    std::size_t pv = 0;
    while (pv < n_ && !r[pv]) ++pv;
    if (pv == n_) return false;
    const code_t inv = f_->inv(r[pv]);
    detail::scale_row(*f_, r, inv, 0);
    if (track_) {
      // row = (v - sum combo_k inserted_k) / lead
      Vec c(inserted_.size() + 1, 0);
      for (std::size_t k = 0; k < combo.size(); ++k) c[k] = f_->neg(f_->mul(inv, combo[k]));
      c[inserted_.size()] = inv;
      for (auto& old : combos_) old.push_back(0);
      combos_.push_back(std::move(c));
    }
    inserted_.push_back(v);
    rows_.push_back(std::move(r));
    piv_.push_back(pv);
    return true;
  }

  bool contains(Vec v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](code_t x) { return x == 0; });
  }

  Subspace span() const { return Subspace::span(f_, n_, rows_); }

 private:
  FieldPtr f_;
  std::size_t n_;
  bool track_;
  std::vector<Vec> rows_, inserted_, combos_;
  std::vector<std::size_t> piv_;
};

inline Subspace spin_matrices(const std::vector<Matrix>& gens, const FieldPtr& f, std::size_t n,
                              const std::vector<Vec>& vectors) {
  Echelon e(f, n);
  std::vector<Vec> queue;
  for (const auto& v : vectors) {
    if (v.size() != n) throw DimensionError("spin: vector length");
    if (e.insert(v)) queue.push_back(v);
  }
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto& g : gens) {
      Vec w = g.apply(queue[k]);
      if (e.insert(w)) queue.push_back(std::move(w));
    }
  return e.span();
}

inline void check_guard(const FdModule& m, const std::string& who) {
  if (m.dim() > config::kModuleGuard)
    throw GuardError(who + ": module dimension " + std::to_string(m.dim()) + " exceeds guard " +
                     std::to_string(config::kModuleGuard));
}

}  // namespace detail

/// Smallest submodule containing the vectors.
inline Subspace spin(const FdModule& m, const std::vector<Vec>& vectors) {
  return detail::spin_matrices(m.actions(), m.field(), m.dim(), vectors);
}

/// A proper nonzero submodule, or nothing when M is simple. Uses Norton's
/// criterion with eigenvalues of random algebra elements, so it decides
/// simplicity only for absolutely simple modules; otherwise it gives up
/// with an Error after config::kSplitAttempts elements.
inline std::optional<Subspace> find_submodule(const FdModule& m, std::uint64_t seed = 7) {
  const std::size_t n = m.dim();
  const FieldPtr& F = m.field();
  if (n <= 1) return std::nullopt;
  std::vector<Matrix> tgens;
  for (const auto& a : m.actions()) tgens.push_back(a.transpose());
  std::mt19937_64 rng(seed + n);
  auto coeff = [&] { return static_cast<code_t>(rng() % F->q()); };
  const std::size_t ng = m.actions().size();
  if (F->q() > 1024) throw Error("find_submodule: eigenvalue scan needs a field of order at most 1024");
  for (int attempt = 0; attempt < config::kSplitAttempts; ++attempt) {
    Matrix a = Matrix::identity(F, n).scaled(coeff());
    const int terms = 2 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
      Matrix w = m.action(rng() % ng);
      const int len = static_cast<int>(rng() % 3);
      for (int l = 0; l < len; ++l) w = w * m.action(rng() % ng);
      a.add_scaled(w, coeff());
    }
    for (code_t lam = 0; lam < F->q(); ++lam) {
      Matrix b = a - Matrix::identity(F, n).scaled(lam);
      const Subspace ker = kernel(b);
      if (ker.dim() == 0) continue;
      const Subspace s = spin(m, {ker.basis_vec(0)});
      if (!s.is_full()) return s;
      if (ker.dim() != 1) continue;
      const Subspace kt = kernel(b.transpose());
      const Subspace st = detail::spin_matrices(tgens, F, n, {kt.basis_vec(0)});
      if (!st.is_full()) return kernel(st.basis());
      return std::nullopt;  // Norton: both spins full
    }
  }
  throw Error("find_submodule: no decision after " + std::to_string(config::kSplitAttempts) +
              " random elements (module may not be absolutely simple)");
}

inline bool is_simple(const FdModule& m) { return m.dim() > 0 && !find_submodule(m); }

/// Basis of Hom_g(M, N) as dim N x dim M matrices.
inline std::vector<Matrix> hom(const FdModule& m, const FdModule& n) {
  if (m.algebra() != n.algebra()) throw ParentMismatch("hom: modules over different algebras");
  const FieldPtr F = common_field(m.field(), n.field());
  if (m.field() != F || n.field() != F) return hom(extend_scalars(m, F), extend_scalars(n, F));
  const std::size_t dm = m.dim(), dn = n.dim();
  if (dm == 0 || dn == 0) return {};
  const Field& f = *F;
  const std::size_t ng = m.actions().size();

  // Standard basis of M: words in the generators applied to chosen roots.
  struct Origin {
    std::size_t parent;  // npos for a root
    std::size_t gen;
    std::size_t root;
  };
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  detail::Echelon ech(F, dm, true);
  std::vector<Origin> origin;
  struct Relation {
    std::size_t k, gen;
    Vec combo;
  };
  std::vector<Relation> relations;
  std::size_t roots = 0;
  for (std::size_t j = 0; j < dm; ++j) {
    Vec ej(dm, 0);
    ej[j] = 1;
    if (!ech.insert(ej)) continue;
    origin.push_back({npos, 0, roots++});
    for (std::size_t k = origin.size() - 1; k < origin.size(); ++k)
      for (std::size_t g = 0; g < ng; ++g) {
        Vec w = m.action(g).apply(ech.inserted()[k]);
        if (ech.insert(w)) {
          origin.push_back({k, g, 0});
        } else {
          Vec combo;
          Vec r = w;
          ech.reduce(r, &combo);
          relations.push_back({k, g, std::move(combo)});
        }
      }
  }

  // Unknowns: images of the roots, u in F^{roots * dn}. img[k] is the image
  // of standard basis vector k as a dn x dim(K) matrix in coordinates of K.
  const std::size_t nu = roots * dn;
  Matrix kbasis = Matrix::identity(F, nu);  // columns span K
  std::vector<Matrix> img;
  auto root_selector = [&](std::size_t r) {
    Matrix s(F, dn, kbasis.cols());
    for (std::size_t i = 0; i < dn; ++i)
      for (std::size_t c = 0; c < kbasis.cols(); ++c) s(i, c) = kbasis(r * dn + i, c);
    return s;
  };
  std::size_t next_rel = 0;
  auto apply_constraint = [&](const Matrix& c) {
    const Subspace z = kernel(c);
    if (z.dim() == c.cols()) return;
    Matrix zt = z.basis().transpose();  // old coords -> new coords
    kbasis = kbasis * zt;
    for (auto& x : img) x = x * zt;
  };
  // Relations refer only to basis vectors created before them, so process
  // both streams in creation order.
  std::size_t made = 0;
  for (std::size_t k = 0; k < origin.size(); ++k) {
    if (origin[k].parent == npos)
      img.push_back(root_selector(origin[k].root));
    else
      img.push_back(n.action(origin[k].gen) * img[origin[k].parent]);
    made = k + 1;
    while (next_rel < relations.size()) {
      const Relation& rel = relations[next_rel];
      if (rel.combo.size() > made) break;
      Matrix c = n.action(rel.gen) * img[rel.k];
      for (std::size_t j = 0; j < rel.combo.size(); ++j)
        if (rel.combo[j]) c.add_scaled(img[j], f.neg(rel.combo[j]));
      apply_constraint(c);
      ++next_rel;
      if (kbasis.cols() == 0) return {};
    }
  }
  while (next_rel < relations.size()) {
    const Relation& rel = relations[next_rel++];
    Matrix c = n.action(rel.gen) * img[rel.k];
    for (std::size_t j = 0; j < rel.combo.size(); ++j)
      if (rel.combo[j]) c.add_scaled(img[j], f.neg(rel.combo[j]));
    apply_constraint(c);
    if (kbasis.cols() == 0) return {};
  }

  // X b_k = img[k] column t; X = [img cols] * B^{-1}.
  Matrix b(F, dm, dm);
  for (std::size_t k = 0; k < dm; ++k)
    for (std::size_t i = 0; i < dm; ++i) b(i, k) = ech.inserted()[k][i];
  const auto binv = inverse(b);
  if (!binv) throw InvariantError("hom: standard basis is singular");
  std::vector<Matrix> out;
  for (std::size_t t = 0; t < kbasis.cols(); ++t) {
    Matrix x(F, dn, dm);
    for (std::size_t k = 0; k < dm; ++k)
      for (std::size_t i = 0; i < dn; ++i) x(i, k) = img[k](i, t);
    out.push_back(x * *binv);
  }
  return out;
}

namespace detail {

inline std::vector<code_t> fingerprint(const FdModule& m) {
  std::vector<code_t> fp;
  for (const auto& a : m.actions()) fp.push_back(a.trace());
  for (std::size_t i = 0; i < m.actions().size(); ++i)
    for (std::size_t j = i; j < m.actions().size(); ++j) fp.push_back((m.action(i) * m.action(j)).trace());
  return fp;
}

}  // namespace detail

/// Isomorphism test for simple modules.
inline bool isomorphic_simples(const FdModule& s, const FdModule& t) {
  if (s.dim() != t.dim()) return false;
  if (detail::fingerprint(s) != detail::fingerprint(t)) return false;
  return !hom(s, t).empty();
}

struct CompositionFactors {
  std::vector<FdModule> factors;           // in series order, bottom first
  std::vector<std::size_t> class_of;       // iso-class id per factor
  std::vector<FdModule> classes;           // one representative per class

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& f : factors) d.push_back(f.dim());
    std::sort(d.begin(), d.end());
    return d;
  }
  std::size_t multiplicity(std::size_t cls) const {
    return static_cast<std::size_t>(std::count(class_of.begin(), class_of.end(), cls));
  }
};

namespace detail {

inline void series(const FdModule& m, std::vector<FdModule>& out, std::uint64_t seed) {
  if (m.dim() == 0) return;
  auto sub = find_submodule(m, seed);
  if (!sub) {
    out.push_back(m);
    return;
  }
  series(submodule(m, *sub), out, seed + 1);
  series(quotient(m, *sub), out, seed + 2);
}

}  // namespace detail

/// Composition factors with iso classes decided by nonzero homomorphisms.
inline CompositionFactors composition_factors(const FdModule& m, std::uint64_t seed = 7) {
  detail::check_guard(m, "composition_factors");
  CompositionFactors cf;
  detail::series(m, cf.factors, seed);
  for (const auto& s : cf.factors) {
    std::size_t cls = cf.classes.size();
    for (std::size_t c = 0; c < cf.classes.size(); ++c)
      if (isomorphic_simples(s, cf.classes[c])) {
        cls = c;
        break;
      }
    if (cls == cf.classes.size()) cf.classes.push_back(s);
    cf.class_of.push_back(cls);
  }
  return cf;
}

enum class RadicalMethod { Auto, Algebra, HomKernel, BruteForce };

inline std::string method_name(RadicalMethod m) {
  switch (m) {
    case RadicalMethod::Auto: return "auto";
    case RadicalMethod::Algebra: return "algebra";
    case RadicalMethod::HomKernel: return "hom-kernel";
    case RadicalMethod::BruteForce: return "brute-force";
  }
  return "?";
}

namespace detail {

// Multiplication by a in GF(p^k) as a k x k matrix over GF(p) on the basis 1, x, ..., x^{k-1}.
inline std::vector<std::vector<unsigned>> mult_matrix(const Field& f, code_t a) {
  const unsigned k = f.k();
  std::vector<std::vector<unsigned>> r(k, std::vector<unsigned>(k, 0));
  code_t xj = 1;
  const code_t x = k > 1 ? f.p() : 1;
  for (unsigned j = 0; j < k; ++j) {
    const auto c = f.coeffs(f.mul(a, xj));
    for (unsigned i = 0; i < k; ++i) r[i][j] = c[i];
    xj = f.mul(xj, x);
  }
  return r;
}

// Matrices over GF(p) of size n k realizing the module over the prime field,
// plus multiplication by the field generator.
inline std::vector<Matrix> restrict_scalars(const FdModule& m) {
  const Field& f = *m.field();
  const FieldPtr P = Field::make(f.p());
  const unsigned k = f.k();
  const std::size_t n = m.dim();
  auto expand = [&](const Matrix& a) {
    Matrix r(P, n * k, n * k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(i, j)) continue;
        const auto mm = mult_matrix(f, a(i, j));
        for (unsigned s = 0; s < k; ++s)
          for (unsigned t = 0; t < k; ++t) r(i * k + s, j * k + t) = mm[s][t];
      }
    return r;
  };
  std::vector<Matrix> out;
  for (const auto& a : m.actions()) out.push_back(expand(a));
  if (k > 1) out.push_back(expand(Matrix::identity(m.field(), n).scaled(f.p())));
  return out;
}

inline Vec flatten(const Matrix& a) { return a.data(); }

// Trace of the integer lift of a raised to p^i, modulo p^{i+1}, divided by p^i.
inline code_t trace_power_digit(const Matrix& a, unsigned p, unsigned i) {
  std::uint64_t mod = 1, pe = 1;
  for (unsigned t = 0; t <= i; ++t) mod *= p;
  for (unsigned t = 0; t < i; ++t) pe *= p;
  const std::size_t n = a.rows();
  std::vector<std::uint64_t> cur(a.data().begin(), a.data().end()), base = cur, tmp(n * n);
  auto mul = [&](const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) {
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        std::uint64_t s = 0;
        for (std::size_t t = 0; t < n; ++t) s = (s + x[r * n + t] * y[t * n + c]) % mod;
        tmp[r * n + c] = s;
      }
    return tmp;
  };
  // cur = base^(p^i) by repeated p-th powers
  for (unsigned t = 0; t < i; ++t) {
    std::vector<std::uint64_t> acc = cur;
    for (unsigned e = 1; e < p; ++e) acc = mul(acc, cur);
    cur = acc;
  }
  std::uint64_t tr = 0;
  for (std::size_t r = 0; r < n; ++r) tr = (tr + cur[r * n + r]) % mod;
  if (tr % pe) throw InvariantError("radical: trace of p^i-th power not divisible by p^i");
  return static_cast<code_t>((tr / pe) % p);
}

// Jacobson radical of the matrix algebra generated by gens over GF(p),
// via the traces of p^i-th powers of integer lifts.
inline std::vector<Matrix> jacobson_radical(const std::vector<Matrix>& gens, const FieldPtr& P, std::size_t n) {
  const unsigned p = P->p();
  // basis of the algebra generated by gens and the identity
  Echelon ech(P, n * n);
  std::vector<Matrix> basis;
  auto add = [&](const Matrix& x) {
    if (ech.insert(flatten(x))) basis.push_back(x);
  };
  add(Matrix::identity(P, n));
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (const auto& g : gens) add(g * basis[k]);

  std::vector<Matrix> ideal = basis;
  unsigned l = 0;
  for (std::size_t pw = p; pw <= n; pw *= p) ++l;
  for (unsigned i = 0; i <= l && !ideal.empty(); ++i) {
    Matrix g(P, ideal.size(), basis.size());
    for (std::size_t r = 0; r < ideal.size(); ++r)
      for (std::size_t s = 0; s < basis.size(); ++s) {
        const Matrix prod = ideal[r] * basis[s];
        g(r, s) = i == 0 ? prod.trace() : trace_power_digit(prod, p, i);
      }
    // combinations c with sum_r c_r g(r, s) = 0 for all s
    const Subspace z = kernel(g.transpose());
    std::vector<Matrix> next;
    for (std::size_t t = 0; t < z.dim(); ++t) {
      Matrix x(P, n, n);
      for (std::size_t r = 0; r < ideal.size(); ++r)
        if (code_t c = z.basis()(t, r)) x.add_scaled(ideal[r], c);
      next.push_back(std::move(x));
    }
    ideal = std::move(next);
  }
  return ideal;
}

inline Subspace radical_algebra(const FdModule& m) {
  const Field& f = *m.field();
  const FieldPtr P = Field::make(f.p());
  const unsigned k = f.k();
  const std::size_t n = m.dim(), nk = n * k;
  const auto gens = restrict_scalars(m);
  const auto j = jacobson_radical(gens, P, nk);
  std::vector<Vec> vecs;
  for (const auto& x : j)
    for (std::size_t c = 0; c < nk; ++c) {
      const Vec col = x.col_vec(c);
      Vec v(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<unsigned> digits(col.begin() + static_cast<long>(i * k), col.begin() + static_cast<long>(i * k + k));
        v[i] = f.from_coeffs(digits);
      }
      vecs.push_back(std::move(v));
    }
  return Subspace::span(m.field(), n, vecs);
}

inline Subspace radical_hom_kernel(const FdModule& m, std::uint64_t seed) {
  const auto cf = composition_factors(m, seed);
  std::vector<Vec> rows;
  for (const auto& s : cf.classes)
    for (const auto& x : hom(m, s))
      for (std::size_t i = 0; i < x.rows(); ++i) rows.push_back(x.row_vec(i));
  if (rows.empty()) return Subspace::full(m.field(), m.dim());
  return kernel(Matrix::from_rows(m.field(), m.dim(), rows));
}

// Every submodule is a sum of cyclic ones; enumerate cyclic submodules from
// all projective points, close under sums, intersect the maximal ones.
inline Subspace radical_brute_force(const FdModule& m) {
  const std::size_t n = m.dim();
  const FieldPtr& F = m.field();
  const std::uint64_t q = F->q();
  double points = 0;
  for (std::size_t i = 0; i < n; ++i) points = points * static_cast<double>(q) + 1;
  if (points > static_cast<double>(config::kBruteForceVectors))
    throw GuardError("radical (brute force): " + std::to_string(static_cast<std::uint64_t>(points)) +
                     " projective points exceed guard");
  auto key = [](const Subspace& s) {
    Vec k = s.basis().data();
    k.push_back(static_cast<code_t>(s.dim()));
    return k;
  };
  std::vector<Subspace> cyclic;
  std::set<Vec> seen;
  for (std::size_t lead = 0; lead < n; ++lead) {
    // vectors (0, ..., 0, 1, *, ..., *)
    const std::size_t free = n - lead - 1;
    std::vector<code_t> tail(free, 0);
    for (;;) {
      Vec v(n, 0);
      v[lead] = 1;
      for (std::size_t t = 0; t < free; ++t) v[lead + 1 + t] = tail[t];
      Subspace s = spin(m, {v});
      if (seen.insert(key(s)).second) cyclic.push_back(std::move(s));
      std::size_t t = 0;
      while (t < free && ++tail[t] == q) tail[t++] = 0;
      if (t == free) break;
    }
  }
  std::vector<Subspace> lattice{Subspace(F, n)};
  std::set<Vec> inlat{key(lattice[0])};
  for (const auto& c : cyclic)
    if (inlat.insert(key(c)).second) lattice.push_back(c);
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    for (const auto& c : cyclic) {
      Subspace s = lattice[i] + c;
      if (inlat.insert(key(s)).second) {
        lattice.push_back(std::move(s));
        if (lattice.size() > config::kBruteForceLattice)
          throw GuardError("radical (brute force): submodule lattice exceeds guard");
      }
    }
  }
  std::vector<const Subspace*> proper;
  for (const auto& s : lattice)
    if (s.dim() < n) proper.push_back(&s);
  Subspace rad = Subspace::full(F, n);
  for (const Subspace* s : proper) {
    bool maximal = true;
    for (const Subspace* t : proper)
      if (t->dim() > s->dim() && t->contains(*s)) {
        maximal = false;
        break;
      }
    if (maximal) rad = rad.intersect(*s);
  }
  return n == 0 ? Subspace(F, 0) : rad;
}

}  // namespace detail

/// Intersection of the maximal submodules. Auto uses the enveloping-algebra
/// method up to config::kAlgebraRadicalDim (over GF(p)) and the
/// homomorphism-kernel method beyond.
inline Subspace radical(const FdModule& m, RadicalMethod method = RadicalMethod::Auto, std::uint64_t seed = 7) {
  detail::check_guard(m, "radical");
  if (m.dim() == 0) return Subspace(m.field(), 0);
  if (method == RadicalMethod::Auto)
    method = m.dim() * m.field()->k() <= config::kAlgebraRadicalDim ? RadicalMethod::Algebra
                                                                    : RadicalMethod::HomKernel;
  switch (method) {
    case RadicalMethod::Algebra:
      if (m.dim() * m.field()->k() > config::kAlgebraRadicalDim)
        throw GuardError("radical (algebra): module too large for the enveloping-algebra method");
      return detail::radical_algebra(m);
    case RadicalMethod::HomKernel: return detail::radical_hom_kernel(m, seed);
    case RadicalMethod::BruteForce: return detail::radical_brute_force(m);
    default: break;
  }
  throw Error("radical: unknown method");
}

struct SimpleQuotient {
  FdModule module;
  std::size_t multiplicity;
};

/// Simple summands of M / rad M up to isomorphism, with multiplicities
/// dim Hom(M, S) / dim End(S).
inline std::vector<SimpleQuotient> simple_quotients(const FdModule& m, RadicalMethod method = RadicalMethod::Auto,
                                                    std::uint64_t seed = 7) {
  detail::check_guard(m, "simple_quotients");
  const Subspace rad = radical(m, method, seed);
  const FdModule top = quotient(m, rad);
  const auto cf = composition_factors(top, seed);
  std::vector<SimpleQuotient> out;
  for (const auto& s : cf.classes) {
    const std::size_t hm = hom(m, s).size(), es = hom(s, s).size();
    if (es == 0 || hm % es) throw InvariantError("simple_quotients: Hom dimension not a multiple of End");
    out.push_back({s, hm / es});
  }
  return out;
}

}  // namespace modlie
