#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "modlie/classical.hpp"
#include "modlie/lie_algebra.hpp"
#include "modlie/report.hpp"

namespace modlie {

/// chi with all values in GF(p), regarded over the prime field.
inline Functional to_prime_field(const Functional& chi) {
  const FieldPtr base = chi.parent()->base();
  if (chi.field() == base) return chi;
  for (auto v : chi.values())
    if (!chi.field()->in_prime_field(v)) throw DomainError("p-character must take values in GF(p)");
  return {chi.parent(), base, chi.values()};
}

/// l_chi = l + Kc with c central and (a + alpha c)^[p] = a^[p] + (chi(a)^p + alpha^p) c.
class CentralExtensionAlgebra {
 public:
  CentralExtensionAlgebra(LiePtr base, const Functional& chi) : l_(std::move(base)), chi_(to_prime_field(chi)) {
    if (chi_.parent() != l_) throw ParentMismatch("central_extension: functional on another algebra");
    const std::size_t n = l_->dim(), m = n + 1;
    const Field& f = *l_->base();
    std::vector<code_t> sc(m * m * m, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) sc[(i * m + j) * m + k] = l_->structure_constant(i, j, k);
    std::vector<Vec> pb;
    for (std::size_t i = 0; i < n; ++i) {
      Vec v = l_->pbasis()[i];
      v.push_back(f.frob(chi_.on_basis(i)));
      pb.push_back(std::move(v));
    }
    Vec c(m, 0);
    c[n] = 1;
    pb.push_back(c);
    auto names = l_->basis_names();
    names.push_back("c");
    carrier_ = std::make_shared<RestrictedLieAlgebra>(l_->name() + "_chi", l_->base(), m, std::move(sc),
                                                      std::move(pb), std::move(names));
  }

  const LiePtr& base() const { return l_; }
  const Functional& chi() const { return chi_; }
  const LiePtr& carrier() const { return carrier_; }
  std::size_t c_index() const { return l_->dim(); }

  /// a + alpha c.
  LieElement embed(const LieElement& a, code_t alpha = 0) const {
    if (a.parent() != l_) throw ParentMismatch("embed: element of another algebra");
    Vec v = a.coeffs();
    v.push_back(alpha);
    return {carrier_, a.field(), std::move(v)};
  }
  LieElement c(const FieldPtr& f) const { return LieElement::basis(carrier_, f, c_index()); }

  /// Projection l_chi -> l.
  LieElement project(const LieElement& x) const {
    if (x.parent() != carrier_) throw ParentMismatch("project: element of another algebra");
    Vec v(x.coeffs().begin(), x.coeffs().end() - 1);
    return {l_, x.field(), std::move(v)};
  }

 private:
  LiePtr l_;
  Functional chi_;
  LiePtr carrier_;
};

inline CentralExtensionAlgebra central_extension(const LiePtr& l, const Functional& chi) { return {l, chi}; }

/// [l, l] as a subspace of coordinate space.
inline Subspace derived_subalgebra(const LiePtr& l) {
  const Field& f = *l->base();
  std::vector<Vec> vecs;
  for (std::size_t i = 0; i < l->dim(); ++i) {
    Vec ei(l->dim(), 0);
    ei[i] = 1;
    for (std::size_t j = i + 1; j < l->dim(); ++j) vecs.push_back(l->bracket_basis(f, ei, j));
  }
  return Subspace::span(l->base(), l->dim(), vecs);
}

inline bool is_perfect(const LiePtr& l) { return derived_subalgebra(l).is_full(); }

namespace detail {

// beta(y^[p]) - beta(y)^p - chi(y)^p; zero iff y -> y + beta(y)c commutes with [p].
inline code_t splitting_defect(const Functional& beta, const Functional& chi, const LieElement& y) {
  const Field& f = *beta.field();
  code_t v = beta(p_power(y).coeffs());
  v = f.sub(v, f.frob(beta(y)));
  return f.sub(v, f.frob(chi(y)));
}

}  // namespace detail

/// Section y -> y + beta(y) c checked on random elements: brackets and p-powers.
inline Report check_splitting(const CentralExtensionAlgebra& E, const Functional& beta, int samples,
                              std::uint64_t seed) {
  Report rep;
  const FieldPtr& F = beta.field();
  const Functional chi = E.chi().over(F);
  const auto& l = E.base();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<code_t> pick(0, F->q() - 1);
  auto random_element = [&] {
    Vec v(l->dim());
    for (auto& x : v) x = pick(rng);
    return LieElement(l, F, v);
  };
  auto section = [&](const LieElement& y) { return E.embed(y, beta(y)); };
  std::string wp, wb;
  for (int t = 0; t < samples; ++t) {
    const LieElement y = random_element(), z = random_element();
    if (wp.empty() && !(p_power(section(y)) == section(p_power(y)))) wp = y.str();
    if (wb.empty() && !(bracket(section(y), section(z)) == section(bracket(y, z)))) wb = y.str() + ", " + z.str();
  }
  rep.add("section_p_map", wp.empty(), wp);
  rep.add("section_bracket", wb.empty(), wb);
  return rep;
}

/// All restricted splittings beta with coefficients in GF(p^k), k <= k_max,
/// each reported over the smallest such field. An empty answer only rules
/// out splittings defined over these fields.
inline std::vector<Functional> find_splittings(const CentralExtensionAlgebra& E, unsigned k_max = 3,
                                               std::uint64_t seed = 1, std::size_t guard = 1u << 22) {
  if (k_max < 1) throw DomainError("find_splittings: k_max must be at least 1");
  const auto& l = E.base();
  const std::size_t n = l->dim();
  const unsigned p = l->p();
  // Linear condition: beta vanishes on [l, l].
  const Subspace d = derived_subalgebra(l);
  const Subspace ann = kernel(d.basis());
  const std::size_t r = ann.dim();
  std::vector<Functional> out;
  for (unsigned k = 1; k <= k_max; ++k) {
    const FieldPtr F = Field::make(p, k);
    double count = 1;
    for (std::size_t i = 0; i < r; ++i) count *= F->q();
    if (count > static_cast<double>(guard))
      throw GuardError("find_splittings: " + std::to_string(r) + " free coordinates over " + F->describe() +
                       " exceed the search guard");
    const Functional chi = E.chi().over(F);
    std::vector<LieElement> basis;
    for (std::size_t i = 0; i < n; ++i) basis.push_back(LieElement::basis(l, F, i));
    std::vector<code_t> t(r, 0);
    for (;;) {
      Vec vals(n, 0);
      for (std::size_t a = 0; a < r; ++a)
        detail::add_into(*F, vals, ann.basis().row(a), t[a]);
      // Solutions over a proper subfield were reported at that degree.
      bool smaller = false;
      for (unsigned j = 1; j < k && !smaller; ++j) {
        if (k % j) continue;
        bool all = true;
        for (auto v : vals) all = all && F->in_subfield(v, j);
        smaller = all;
      }
      if (!smaller) {
        Functional beta(l, F, vals);
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = detail::splitting_defect(beta, chi, basis[i]) == 0;
        if (ok) {
          // The p-condition is p-semilinear once beta kills [l, l]; random
          // elements confirm it off the basis.
          std::mt19937_64 rng(seed + k);
          std::uniform_int_distribution<code_t> pick(0, F->q() - 1);
          for (int s = 0; s < 100 && ok; ++s) {
            Vec y(n);
            for (auto& x : y) x = pick(rng);
            ok = detail::splitting_defect(beta, chi, LieElement(l, F, y)) == 0;
          }
          if (!ok) throw InvariantError("find_splittings: basis solution fails on a random element");
          if (!check_splitting(E, beta, 20, seed).all_passed())
            throw InvariantError("find_splittings: section is not a restricted homomorphism");
          out.push_back(beta);
        }
      }
      std::size_t a = 0;
      while (a < r && ++t[a] == F->q()) t[a++] = 0;
      if (a == r) break;
    }
  }
  return out;
}

/// Element of GF(p)[c]/(c^p - c), coefficients of 1, c, ..., c^{p-1}.
struct CPoly {
  FieldPtr f;
  Vec coeffs;

  static CPoly constant(const FieldPtr& f, code_t a) {
    CPoly r{f, Vec(f->p(), 0)};
    r.coeffs[0] = a;
    return r;
  }
  CPoly operator+(const CPoly& o) const {
    CPoly r{f, Vec(coeffs.size())};
    for (std::size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] = f->add(coeffs[i], o.coeffs[i]);
    return r;
  }
  CPoly operator*(const CPoly& o) const {
    const unsigned p = f->p();
    CPoly r{f, Vec(p, 0)};
    for (unsigned i = 0; i < p; ++i) {
      if (!coeffs[i]) continue;
      for (unsigned j = 0; j < p; ++j) {
        if (!o.coeffs[j]) continue;
        unsigned d = i + j;
        if (d >= p) d -= p - 1;  // c^p = c
        r.coeffs[d] = f->add(r.coeffs[d], f->mul(coeffs[i], o.coeffs[j]));
      }
    }
    return r;
  }
  bool operator==(const CPoly& o) const { return coeffs == o.coeffs; }
  bool is_zero() const {
    for (auto c : coeffs)
      if (c) return false;
    return true;
  }
  code_t eval(code_t x) const {
    code_t s = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) s = f->add(f->mul(s, x), coeffs[i]);
    return s;
  }
  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (!coeffs[i]) continue;
      if (!s.empty()) s += " + ";
      const std::string mono = i == 0 ? "" : (i == 1 ? "c" : "c^" + std::to_string(i));
      if (i == 0)
        s += std::to_string(coeffs[i]);
      else
        s += (coeffs[i] == 1 ? "" : std::to_string(coeffs[i]) + "*") + mono;
    }
    return s.empty() ? "0" : s;
  }
};

struct NielsenElement {
  unsigned p;
  code_t eta;
  CPoly poly;

  /// rho_eta: c -> eta.
  code_t rho() const { return poly.eval(eta); }
};

/// Ni_eta(c) = -sum_{n=1}^{p-1} c^n / eta^n for eta != 0, and 1 - c^{p-1} for eta = 0.
inline NielsenElement nielsen(code_t eta, unsigned p) {
  const FieldPtr F = Field::make(p);
  if (eta >= p) throw DomainError("nielsen: eta must be a residue mod p");
  CPoly r{F, Vec(p, 0)};
  if (eta == 0) {
    r.coeffs[0] = 1;
    r.coeffs[p - 1] = F->neg(1);
  } else {
    const code_t inv = F->inv(eta);
    for (unsigned n = 1; n < p; ++n) r.coeffs[n] = F->neg(F->pow(inv, n));
  }
  return {p, eta, r};
}

/// Idempotency, orthogonality, completeness and rho_eta(Ni_eta) = 1 for all eta.
inline Report verify_nielsen(unsigned p) {
  Report rep;
  std::vector<NielsenElement> ni;
  for (code_t e = 0; e < p; ++e) ni.push_back(nielsen(e, p));
  const FieldPtr F = Field::make(p);
  CPoly sum = CPoly::constant(F, 0);
  std::string wi, wo, wr;
  for (code_t a = 0; a < p; ++a) {
    sum = sum + ni[a].poly;
    if (wi.empty() && !(ni[a].poly * ni[a].poly == ni[a].poly)) wi = "eta=" + std::to_string(a);
    if (wr.empty() && ni[a].rho() != 1) wr = "eta=" + std::to_string(a);
    for (code_t b = 0; b < p; ++b) {
      if (a == b) continue;
      if (wo.empty() && !(ni[a].poly * ni[b].poly).is_zero())
        wo = "eta=" + std::to_string(a) + ", eta'=" + std::to_string(b);
      if (wr.empty() && ni[a].poly.eval(b) != 0) wr = "rho_" + std::to_string(b) + "(Ni_" + std::to_string(a) + ")";
    }
  }
  rep.add("idempotent", wi.empty(), wi);
  rep.add("orthogonal", wo.empty(), wo);
  rep.add("complete", sum == CPoly::constant(F, 1), sum.str());
  rep.add("rho_eta", wr.empty(), wr);
  return rep;
}

/// chi nilpotent, and a -> a + 0c preserves [p] on a basis of C_g(chi).
inline Report harish_chandra_check(const LiePtr& g, const Functional& chi) {
  Report rep;
  if (chi.parent() != g) throw ParentMismatch("harish_chandra_check: functional on another algebra");
  const SubalgebraDatum cent = centralizer(chi);
  std::string wn;
  for (const auto& y : cent.basis())
    if (wn.empty() && chi(y) != 0) wn = "chi(" + y.str() + ") != 0";
  rep.add("nilpotent", wn.empty(), wn);
  const CentralExtensionAlgebra E(g, to_prime_field(chi));
  std::string wp;
  for (const auto& a : cent.basis()) {
    const LieElement lhs = p_power(E.embed(a));
    if (wp.empty() && !(lhs == E.embed(p_power(a)))) wp = "(" + a.str() + " + 0c)^[p] has c-part";
  }
  rep.add("centralizer_p_map", wp.empty(), wp);
  return rep;
}

}  // namespace modlie
