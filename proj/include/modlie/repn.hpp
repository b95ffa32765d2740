#pragma once

#include <string>
#include <vector>

#include "modlie/classical.hpp"
#include "modlie/induced.hpp"
#include "modlie/submodule.hpp"

namespace modlie {

struct KwResult {
  std::size_t orbit_dim = 0;
  std::uint64_t divisor = 1;
  std::vector<std::size_t> factor_dims;
  Report report;
};

/// Kac-Weisfeiler divisibility: p^{orbit/2} divides every composition factor
/// dimension, the orbit dimension being dim g - dim c_g(chi).
inline KwResult kw_check(const FdModule& m, const Functional& chi, const LiePtr& g, std::uint64_t seed = 7) {
  if (chi.parent() != g) throw ParentMismatch("kw_check: chi is not on g");
  if (!is_nilpotent_functional(chi)) throw DomainError("kw_check: chi must be nilpotent");
  KwResult r;
  r.orbit_dim = g->dim() - centralizer(chi).dim();
  if (r.orbit_dim % 2) throw InvariantError("kw_check: odd orbit dimension " + std::to_string(r.orbit_dim));
  for (std::size_t i = 0; i < r.orbit_dim / 2; ++i) r.divisor *= g->p();
  r.factor_dims = composition_factors(m, seed).dims();
  std::string bad;
  for (auto d : r.factor_dims)
    if (d % r.divisor) bad += (bad.empty() ? "" : ",") + std::to_string(d);
  r.report.add("orbit_even", true);
  r.report.add("divisible", bad.empty(), bad.empty() ? "" : "factor dims " + bad + " not divisible by " + std::to_string(r.divisor));
  return r;
}

struct DeformationResult {
  std::size_t dim = 0;
  std::vector<std::size_t> dims_chi, dims_zero;
  Report report;
};

/// Z_{chi,b}(lambda) against Z_{0,b}(lambda) on the same PBW basis.
inline DeformationResult compare_deformation(const LiePtr& g, const SubalgebraDatum& b, const Weight& lambda,
                                             const Functional& chi, std::uint64_t seed = 7) {
  const FdModule zc = baby_verma(g, b, chi, lambda);
  const FdModule z0 = baby_verma(g, b, Functional::zero(g, chi.field()), lambda);
  DeformationResult r;
  r.dim = zc.dim();
  std::size_t pos = 0;
  for (std::size_t i = 0; i < g->dim(); ++i)
    if (classical_data(g).kinds[i] == BasisKind::positive_root) ++pos;
  std::uint64_t expect = 1;
  for (std::size_t i = 0; i < pos; ++i) expect *= g->p();
  r.dims_chi = composition_factors(zc, seed).dims();
  r.dims_zero = composition_factors(z0, seed).dims();
  std::size_t tc = 0, t0 = 0;
  for (auto d : r.dims_chi) tc += d;
  for (auto d : r.dims_zero) t0 += d;
  r.report.add("dim_chi", zc.dim() == expect, std::to_string(zc.dim()));
  r.report.add("dim_zero", z0.dim() == expect, std::to_string(z0.dim()));
  r.report.add("total", tc == t0 && tc == zc.dim(), std::to_string(tc) + " vs " + std::to_string(t0));
  return r;
}

}  // namespace modlie
