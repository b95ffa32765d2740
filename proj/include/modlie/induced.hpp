#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "modlie/classical.hpp"
#include "modlie/enveloping.hpp"
#include "modlie/module.hpp"

namespace modlie {

/// Same structure constants, p-map and dimension.
inline bool same_structure(const RestrictedLieAlgebra& a, const RestrictedLieAlgebra& b) {
  return a.dim() == b.dim() && a.p() == b.p() && a.structure_constants() == b.structure_constants() &&
         a.pbasis() == b.pbasis();
}

/// Standard basis indices of a subalgebra, or DomainError.
inline std::vector<std::size_t> require_standard(const SubalgebraDatum& s, const std::string& who) {
  auto idx = s.standard_indices();
  if (!idx) throw DomainError(who + ": subalgebra must be spanned by basis vectors of g");
  std::sort(idx->begin(), idx->end());
  return *idx;
}

/// U_chi(g) (x)_{U_chi(p)} M, free over PBW monomials in the basis vectors of
/// g outside p (taken in g's basis order). Basis vector index
/// a * dim M + r stands for x^a (x) v_r.
inline FdModule induce(const LiePtr& g, const SubalgebraDatum& p_sub, const Functional& chi, const FdModule& m) {
  if (p_sub.parent() != g || chi.parent() != g) throw ParentMismatch("induce: data on different algebras");
  const auto idx = require_standard(p_sub, "induce");
  if (!same_structure(*m.algebra(), *p_sub.as_algebra("p")))
    throw ParentMismatch("induce: module is not over the given subalgebra");
  if (!p_sub.functional_vanishes(chi)) throw DomainError("induce: chi does not vanish on the subalgebra");
  if (!m.chi().is_zero()) throw DomainError("induce: the module must have p-character chi|_p = 0");

  const FieldPtr F = common_field(chi.field(), m.field());
  const Functional chiF = chi.field() == F ? chi : chi.over(F);
  const FdModule mf = extend_scalars(m, F);

  std::vector<std::size_t> order;
  std::vector<bool> in_p(g->dim(), false);
  for (auto i : idx) in_p[i] = true;
  for (std::size_t i = 0; i < g->dim(); ++i)
    if (!in_p[i]) order.push_back(i);
  const std::size_t nc = order.size();
  order.insert(order.end(), idx.begin(), idx.end());
  const EnvPtr A = make_env(g, chiF, order);

  std::uint64_t pstride = 1, ncomp = 1;
  for (std::size_t k = 0; k < idx.size(); ++k) pstride *= g->p();
  for (std::size_t k = 0; k < nc; ++k) ncomp *= g->p();
  const std::size_t dm = m.dim();
  const std::size_t dim = static_cast<std::size_t>(ncomp) * dm;

  // rho_M of a PBW monomial in p's basis.
  std::map<Mono, Matrix> cache;
  auto rho_of = [&](Mono q) -> const Matrix& {
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    Matrix r = Matrix::identity(F, dm);
    for (std::size_t k = idx.size(); k-- > 0;) {
      const unsigned e = A->exponent(q, nc + k);
      for (unsigned t = 0; t < e; ++t) r = mf.action(k) * r;
    }
    return cache.emplace(q, std::move(r)).first->second;
  };

  std::vector<Matrix> act;
  for (std::size_t j = 0; j < g->dim(); ++j) {
    Matrix r(F, dim, dim);
    for (std::uint64_t a = 0; a < ncomp; ++a) {
      for (const auto& [mono, c] : *A->left_mul(j, a * pstride)) {
        const std::uint64_t a2 = mono / pstride;
        const Matrix& rq = rho_of(mono % pstride);
        for (std::size_t s = 0; s < dm; ++s)
          for (std::size_t t = 0; t < dm; ++t)
            if (rq(s, t)) {
              code_t& dst = r(a2 * dm + s, a * dm + t);
              dst = F->add(dst, F->mul(c, rq(s, t)));
            }
      }
    }
    act.push_back(std::move(r));
  }
  return {g, chiF, std::move(act), dim};
}

/// One-dimensional u(b)-module K_lambda: Cartan basis vectors act by lambda
/// mod p, all other basis vectors of b by 0.
inline FdModule one_dimensional(const LiePtr& g, const SubalgebraDatum& b, const Weight& lambda) {
  const auto& cd = classical_data(g);
  if (lambda.coords.size() != cd.rank())
    throw DimensionError("weight has " + std::to_string(lambda.coords.size()) + " coordinates, rank is " +
                         std::to_string(cd.rank()));
  const auto idx = require_standard(b, "one_dimensional");
  const auto cartan = cd.indices(BasisKind::cartan);
  const FieldPtr F = g->base();
  const auto lam = lambda.reduced(*F);
  const LiePtr bl = b.as_algebra("b");
  std::vector<Matrix> act;
  for (auto i : idx) {
    Matrix m(F, 1, 1);
    auto it = std::find(cartan.begin(), cartan.end(), i);
    if (it != cartan.end()) m(0, 0) = lam[static_cast<std::size_t>(it - cartan.begin())];
    act.push_back(std::move(m));
  }
  return {bl, Functional::zero(bl, F), std::move(act), 1};
}

/// Z_{chi,b}(lambda) = U_chi(g) (x)_{u(b)} K_lambda.
inline FdModule baby_verma(const LiePtr& g, const SubalgebraDatum& b, const Functional& chi, const Weight& lambda) {
  if (!b.functional_vanishes(chi)) throw DomainError("baby_verma: chi does not vanish on b");
  return induce(g, b, chi, one_dimensional(g, b, lambda));
}

/// The simple root alpha_a (1-based) whose negative root vector lies in the
/// parabolic; DomainError unless the Levi has rank one.
inline unsigned levi_simple_root(const LiePtr& g, const SubalgebraDatum& P) {
  const auto& cd = classical_data(g);
  const auto idx = require_standard(P, "levi_dual_weyl");
  unsigned root = 0, count = 0;
  for (auto i : idx)
    if (cd.kinds[i] == BasisKind::negative_root) {
      ++count;
      auto [r, c] = cd.entry[i];
      if (r == c + 1) root = c + 1;
    }
  if (count != 1 || root == 0) throw DomainError("levi_dual_weyl: Levi must have rank one");
  return root;
}

/// (-w_0) . lambda = -w_0(lambda + rho) - rho for w_0 = s_alpha, in
/// fundamental-weight coordinates of sl_n.
inline Weight minus_w0_dot(const Weight& lambda, unsigned a) {
  const std::size_t r = lambda.coords.size();
  if (a < 1 || a > r) throw DomainError("minus_w0_dot: invalid simple root");
  std::vector<long long> mu(r);
  for (std::size_t i = 0; i < r; ++i) mu[i] = lambda.coords[i] + 1;
  const long long k = mu[a - 1];
  // s_alpha(mu) = mu - <mu, alpha^vee> alpha, alpha in fundamental coordinates
  for (std::size_t i = 0; i < r; ++i) {
    long long cartan = (i + 1 == a) ? 2 : ((i + 1 == a - 1 || i + 1 == a + 1) ? -1 : 0);
    mu[i] -= k * cartan;
  }
  Weight out;
  for (std::size_t i = 0; i < r; ++i) out.coords.push_back(-mu[i] - 1);
  return out;
}

/// Dual of Ind_B^P(K_{-w_0 . lambda}) for a parabolic P of sl_n whose Levi
/// has the single simple root alpha: the simple (lambda_alpha + 1)-dimensional
/// Levi module of highest weight -w_0 . lambda, nilradical acting by 0,
/// then dualized. Returned over P.as_algebra().
inline FdModule levi_dual_weyl(const LiePtr& g, const SubalgebraDatum& P, const Weight& lambda) {
  const auto& cd = classical_data(g);
  if (cd.family != Family::sl) throw DomainError("levi_dual_weyl: sl_n only");
  if (lambda.coords.size() != cd.rank()) throw DimensionError("levi_dual_weyl: weight length");
  const unsigned a = levi_simple_root(g, P);
  const unsigned p = g->p();
  const FieldPtr F = g->base();
  const long long m = ((lambda.coords[a - 1] % p) + p) % p;
  if (m >= static_cast<long long>(p) - 1) throw DomainError("levi_dual_weyl: <lambda, alpha^vee> outside [0, p-1)");
  const Weight nu = minus_w0_dot(lambda, a);
  const std::size_t d = static_cast<std::size_t>(m) + 1;
  const auto idx = require_standard(P, "levi_dual_weyl");
  const auto cartan = cd.indices(BasisKind::cartan);
  const std::size_t e_idx = cd.root_index(a - 1, a), f_idx = cd.root_index(a, a - 1);

  std::vector<Matrix> act;
  for (auto i : idx) {
    Matrix x(F, d, d);
    if (i == f_idx) {
      for (std::size_t t = 0; t + 1 < d; ++t) x(t + 1, t) = 1;
    } else if (i == e_idx) {
      for (std::size_t t = 1; t < d; ++t) x(t - 1, t) = F->from_int(static_cast<long long>(t) * (m - t + 1));
    } else if (cd.kinds[i] == BasisKind::cartan) {
      const std::size_t b = static_cast<std::size_t>(std::find(cartan.begin(), cartan.end(), i) - cartan.begin());
      const long long cab = (b + 1 == a) ? 2 : ((b + 2 == a || b == a) ? -1 : 0);
      for (std::size_t t = 0; t < d; ++t) x(t, t) = F->from_int(nu.coords[b] - static_cast<long long>(t) * cab);
    }
    act.push_back(std::move(x));
  }
  const LiePtr pl = P.as_algebra("p");
  return dual(FdModule(pl, Functional::zero(pl, F), std::move(act), d));
}

}  // namespace modlie
