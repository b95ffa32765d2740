#include "catch_amalgamated.hpp"

#include <set>

#include "modlie/classical.hpp"
#include "modlie/repn.hpp"
#include "suite_modules.hpp"
#include "test_support.hpp"

using namespace modlie;

namespace {

Functional regular_sl2(const LiePtr& g) { return trace_dual(g, Matrix::from_ints(g->base(), {{0, 1}, {0, 0}})); }

Functional subregular_sl3(const LiePtr& g) {
  return trace_dual(g, Matrix::from_ints(g->base(), {{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}));
}

FdModule z(const LiePtr& g, const Functional& chi, std::vector<long long> lambda) {
  return baby_verma(g, borel_and_parabolic(g, {}), chi, Weight{std::move(lambda)});
}

// Every matrix X with X rho_M(x) = rho_N(x) X, by enumeration.
std::size_t brute_hom_dim(const FdModule& m, const FdModule& n) {
  const Field& f = *m.field();
  const std::size_t cells = m.dim() * n.dim();
  std::vector<code_t> x(cells, 0);
  std::size_t count = 0;
  for (;;) {
    Matrix mx(m.field(), n.dim(), m.dim());
    for (std::size_t c = 0; c < cells; ++c) mx(c / m.dim(), c % m.dim()) = x[c];
    bool ok = true;
    for (std::size_t i = 0; i < m.actions().size() && ok; ++i) ok = mx * m.action(i) == n.action(i) * mx;
    count += ok;
    std::size_t c = 0;
    while (c < cells && ++x[c] == f.q()) x[c++] = 0;
    if (c == cells) break;
  }
  std::size_t d = 0;
  while (count > 1) count /= f.q(), ++d;
  return d;
}

// Dimensions of the composition factors of the restricted sl_2 baby Verma
// Z_0(lambda): L(lambda) and L(p - 2 - lambda), or the Steinberg module.
std::vector<std::size_t> sl2_restricted_factors(unsigned p, unsigned lambda) {
  if (lambda == p - 1) return {p};
  std::vector<std::size_t> d{lambda + 1, p - 1 - lambda};
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST_CASE("baby Verma dimensions and p-character", "[repn]") {
  for (unsigned p : {3u, 5u, 7u}) {
    const LiePtr g = construct_classical(Family::sl, 2, p);
    for (long long l = 0; l < p; ++l) {
      const FdModule m = z(g, regular_sl2(g), {l});
      CHECK(m.dim() == p);
      CHECK(m.check_invariants().all_passed());
    }
  }
  const LiePtr g = construct_classical(Family::sl, 3, 5);
  const FdModule m = z(g, subregular_sl3(g), {0, 0});
  CHECK(m.dim() == 125);
  CHECK(m.check_invariants().all_passed());
}

TEST_CASE("baby Verma rejects chi nonzero on b", "[repn]") {
  const LiePtr g = construct_classical(Family::sl, 2, 5);
  const Functional chi = trace_dual(g, Matrix::from_ints(g->base(), {{0, 0}, {1, 0}}));
  CHECK_THROWS_AS(z(g, chi, {0}), DomainError);
}

TEST_CASE("restricted sl_2 baby Verma structure", "[repn]") {
  for (unsigned p : {3u, 5u, 7u}) {
    const LiePtr g = construct_classical(Family::sl, 2, p);
    for (unsigned l = 0; l < p; ++l) {
      const FdModule m = z(g, Functional::zero(g, g->base()), {l});
      CHECK(composition_factors(m).dims() == sl2_restricted_factors(p, l));
      const std::size_t rad = radical(m).dim();
      CHECK(rad == (l == p - 1 ? 0 : p - 1 - l));
    }
  }
  const LiePtr g = construct_classical(Family::sl, 2, 3);
  const FdModule z00 = z(g, Functional::zero(g, g->base()), {0});
  CHECK(radical(z00, RadicalMethod::BruteForce).dim() == 2);
  CHECK(radical(z00, RadicalMethod::Algebra).dim() == 2);
  CHECK(radical(z00, RadicalMethod::HomKernel).dim() == 2);
}

TEST_CASE("regular sl_2 baby Vermas are simple", "[repn]") {
  const LiePtr g = construct_classical(Family::sl, 2, 5);
  for (long long l = 0; l < 5; ++l) {
    const FdModule m = z(g, regular_sl2(g), {l});
    CHECK(radical(m, RadicalMethod::Algebra).is_zero());
    CHECK(radical(m, RadicalMethod::BruteForce).is_zero());
    CHECK(is_simple(m));
    const auto q = simple_quotients(m);
    REQUIRE(q.size() == 1);
    CHECK(q[0].multiplicity == 1);
    CHECK(q[0].module.dim() == 5);
  }
}

TEST_CASE("spin", "[repn]") {
  const LiePtr g = construct_classical(Family::sl, 2, 5);
  const FdModule m = z(g, Functional::zero(g, g->base()), {1});
  CHECK(spin(m, {Vec(5, 0)}).is_zero());
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < 5; ++i) {
    Vec e(5, 0);
    e[i] = 1;
    basis.push_back(e);
  }
  CHECK(spin(m, basis).is_full());
  // the generating vector 1 (x) 1 of a baby Verma
  CHECK(spin(m, {basis[0]}).is_full());
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const Vec v = testing::random_vec(rng, *m.field(), 5), w = testing::random_vec(rng, *m.field(), 5);
    const Subspace a = spin(m, {v}), ab = spin(m, {v, w});
    CHECK(ab.contains(a));
    CHECK(spin(m, a.basis_vectors()) == a);
  }
}

TEST_CASE("hom agrees with enumeration", "[repn]") {
  const LiePtr g = construct_classical(Family::sl, 2, 3);
  const Functional zero = Functional::zero(g, g->base());
  std::vector<FdModule> ms{z(g, zero, {0}), z(g, zero, {1}), z(g, zero, {2})};
  const Subspace r = radical(ms[0]);
  ms.push_back(submodule(ms[0], r));
  ms.push_back(quotient(ms[0], r));
  for (const auto& a : ms)
    for (const auto& b : ms) {
      const auto h = hom(a, b);
      CHECK(h.size() == brute_hom_dim(a, b));
      for (const auto& x : h)
        for (std::size_t i = 0; i < g->dim(); ++i) CHECK(x * a.action(i) == b.action(i) * x);
    }
}

TEST_CASE("composition factors are additive", "[repn]") {
  const LiePtr g = construct_classical(Family::sl, 2, 5);
  const FdModule m = z(g, Functional::zero(g, g->base()), {1});
  const auto cf = composition_factors(m);
  const auto cf2 = composition_factors(direct_sum(m, m));
  const auto once = cf.dims();
  auto twice = once;
  twice.insert(twice.end(), once.begin(), once.end());
  std::sort(twice.begin(), twice.end());
  CHECK(cf2.dims() == twice);
  CHECK(cf2.classes.size() == cf.classes.size());
  for (std::size_t c = 0; c < cf2.classes.size(); ++c) CHECK(cf2.multiplicity(c) == 2);
  const auto q = simple_quotients(direct_sum(m, m));
  REQUIRE(q.size() == 1);
  CHECK(q[0].multiplicity == 2);
  CHECK(q[0].module.dim() == 2);
}

TEST_CASE("algebra radical matches brute force on small modules", "[repn][oracle]") {
  for (const auto& m : testing::small_modules()) {
    REQUIRE(m.dim() <= 12);
    const Subspace a = radical(m, RadicalMethod::Algebra);
    const Subspace b = radical(m, RadicalMethod::BruteForce);
    CHECK(a == b);
    CHECK(radical(m, RadicalMethod::HomKernel) == b);
    std::size_t total = 0;
    for (auto d : composition_factors(m).dims()) total += d;
    CHECK(total == m.dim());
  }
}

TEST_CASE("levi dual Weyl modules", "[repn]") {
  const LiePtr g = construct_classical(Family::sl, 3, 5);
  const auto P1 = borel_and_parabolic(g, {1});
  CHECK(levi_dual_weyl(g, P1, Weight{{0, 0}}).dim() == 1);
  const FdModule m = levi_dual_weyl(g, P1, Weight{{1, 0}});
  CHECK(m.dim() == 2);
  CHECK(m.check_invariants().all_passed());
  CHECK(is_simple(m));
  CHECK_THROWS_AS(levi_dual_weyl(g, P1, Weight{{4, 0}}), DomainError);
  CHECK_THROWS_AS(levi_dual_weyl(g, borel_and_parabolic(g, {}), Weight{{0, 0}}), DomainError);
  CHECK_THROWS_AS(levi_dual_weyl(g, borel_and_parabolic(g, {1, 2}), Weight{{0, 0}}), DomainError);
  // s_1 (lambda + rho) - rho, negated: integer reflection arithmetic
  const Weight nu = minus_w0_dot(Weight{{1, 0}}, 1);
  CHECK(nu.coords == std::vector<long long>{1, -4});
  const Weight nu2 = minus_w0_dot(Weight{{2, 3}}, 2);
  CHECK(nu2.coords == std::vector<long long>{-8, 3});
}

TEST_CASE("induction dimension formula over all standard parabolics of sl_3", "[repn]") {
  const LiePtr g = construct_classical(Family::sl, 3, 5);
  const Functional zero = Functional::zero(g, g->base());
  for (const std::set<unsigned>& s : std::vector<std::set<unsigned>>{{}, {1}, {2}, {1, 2}}) {
    const auto P = borel_and_parabolic(g, s);
    const std::size_t codim = g->dim() - P.dim();
    std::vector<FdModule> ms;
    const LiePtr pl = P.as_algebra("p");
    ms.push_back(zero_module(pl, Functional::zero(pl, g->base())));
    if (s.empty()) ms.push_back(one_dimensional(g, P, Weight{{2, 1}}));
    if (s.size() == 1) {
      ms.push_back(levi_dual_weyl(g, P, Weight{{1, 1}}));
      ms.push_back(levi_dual_weyl(g, P, Weight{{2, 2}}));
    }
    if (s.size() == 2) ms.push_back(FdModule(pl, Functional::zero(pl, g->base()), std::vector<Matrix>(pl->dim(), Matrix(g->base(), 1, 1)), 1));
    for (const auto& m : ms) {
      std::size_t expect = m.dim();
      for (std::size_t i = 0; i < codim; ++i) expect *= 5;
      const FdModule ind = induce(g, P, zero, m);
      CHECK(ind.dim() == expect);
    }
  }
  const auto P1 = borel_and_parabolic(g, {1});
  CHECK(induce(g, P1, subregular_sl3(g), levi_dual_weyl(g, P1, Weight{{1, 0}})).dim() == 50);
}

TEST_CASE("induce from b equals baby Verma", "[repn]") {
  const LiePtr g = construct_classical(Family::sl, 2, 5);
  const auto b = borel_and_parabolic(g, {});
  const FdModule a = induce(g, b, regular_sl2(g), one_dimensional(g, b, Weight{{3}}));
  const FdModule v = baby_verma(g, b, regular_sl2(g), Weight{{3}});
  CHECK(a.actions() == v.actions());
}

TEST_CASE("sl_3 subregular baby Verma has several simple quotients", "[repn][slow]") {
  const LiePtr g = construct_classical(Family::sl, 3, 5);
  const Functional chi = subregular_sl3(g);
  const FdModule m = z(g, chi, {0, 0});
  const auto q = simple_quotients(m);
  CHECK(q.size() >= 2);
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j) CHECK_FALSE(isomorphic_simples(q[i].module, q[j].module));
  const KwResult kw = kw_check(m, chi, g);
  CHECK(kw.orbit_dim == 4);
  CHECK(kw.divisor == 25);
  CHECK(kw.report.all_passed());
}

TEST_CASE("Kac-Weisfeiler audit", "[repn]") {
  const LiePtr g = construct_classical(Family::sl, 2, 5);
  for (long long l = 0; l < 5; ++l) {
    const KwResult r = kw_check(z(g, regular_sl2(g), {l}), regular_sl2(g), g);
    CHECK(r.orbit_dim == 2);
    CHECK(r.divisor == 5);
    CHECK(r.report.all_passed());
    const KwResult r0 = kw_check(z(g, Functional::zero(g, g->base()), {l}), Functional::zero(g, g->base()), g);
    CHECK(r0.divisor == 1);
    CHECK(r0.report.all_passed());
  }
}

TEST_CASE("deformation to the restricted structure", "[repn]") {
  for (unsigned p : {3u, 5u}) {
    const LiePtr g = construct_classical(Family::sl, 2, p);
    const auto b = borel_and_parabolic(g, {});
    for (long long l = 0; l < p; ++l) {
      const auto r = compare_deformation(g, b, Weight{{l}}, regular_sl2(g));
      CHECK(r.report.all_passed());
      CHECK(r.dims_chi == std::vector<std::size_t>{p});
      CHECK(r.dims_zero == sl2_restricted_factors(p, static_cast<unsigned>(l)));
    }
    const auto r0 = compare_deformation(g, b, Weight{{0}}, Functional::zero(g, g->base()));
    CHECK(r0.dims_chi == r0.dims_zero);
  }
}
