#pragma once

// The suite's modules of dimension at most 12, shared by the radical oracle
// test and the acceptance run.

#include <vector>

#include "modlie/classical.hpp"
#include "modlie/repn.hpp"

namespace modlie::testing {

inline Functional regular_sl2_chi(const LiePtr& g) {
  return trace_dual(g, Matrix::from_ints(g->base(), {{0, 1}, {0, 0}}));
}

inline FdModule standard_verma(const LiePtr& g, const Functional& chi, std::vector<long long> lambda) {
  return baby_verma(g, borel_and_parabolic(g, {}), chi, Weight{std::move(lambda)});
}

// All sl_2 baby Vermas up to p = 7 plus small sums, subquotients and a
// scalar extension: the suite's modules of dimension at most 12.
inline std::vector<FdModule> small_modules() {
  std::vector<FdModule> out;
  for (unsigned p : {3u, 5u, 7u}) {
    const LiePtr g = construct_classical(Family::sl, 2, p);
    for (long long l = 0; l < p; ++l) {
      out.push_back(standard_verma(g, Functional::zero(g, g->base()), {l}));
      out.push_back(standard_verma(g, regular_sl2_chi(g), {l}));
    }
  }
  const LiePtr g3 = construct_classical(Family::sl, 2, 3);
  const FdModule a = standard_verma(g3, Functional::zero(g3, g3->base()), {0});
  const FdModule b = standard_verma(g3, Functional::zero(g3, g3->base()), {1});
  out.push_back(direct_sum(a, b));
  out.push_back(direct_sum(a, a));
  out.push_back(direct_sum(direct_sum(a, b), a));
  out.push_back(direct_sum(direct_sum(a, a), direct_sum(b, b)));
  out.push_back(extend_scalars(a, Field::make(3, 2)));
  out.push_back(extend_scalars(direct_sum(a, b), Field::make(3, 2)));
  out.push_back(dual(a));
  const Subspace r = radical(a, RadicalMethod::BruteForce);
  out.push_back(submodule(a, r));
  out.push_back(quotient(a, r));
  const LiePtr g5 = construct_classical(Family::sl, 2, 5);
  const FdModule z50 = standard_verma(g5, Functional::zero(g5, g5->base()), {0});
  out.push_back(direct_sum(standard_verma(g5, Functional::zero(g5, g5->base()), {3}), quotient(z50, radical(z50, RadicalMethod::BruteForce))));
  const LiePtr s3 = construct_classical(Family::sl, 3, 5);
  for (unsigned a1 : {1u, 2u}) {
    const auto P = borel_and_parabolic(s3, {a1});
    for (long long l = 0; l < 4; ++l) out.push_back(levi_dual_weyl(s3, P, Weight{{l, 1}}));
  }
  return out;
}

}  // namespace modlie::testing
