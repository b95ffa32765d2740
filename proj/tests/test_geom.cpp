#include "catch_amalgamated.hpp"

#include "modlie/classical.hpp"
#include "modlie/geom.hpp"
#include "test_support.hpp"

using namespace modlie;

namespace {

std::size_t index_of(const LiePtr& g, const std::string& name) {
  const auto& n = g->basis_names();
  return static_cast<std::size_t>(std::find(n.begin(), n.end(), name) - n.begin());
}

Matrix e_sl3_subregular(const FieldPtr& f) { return Matrix::from_ints(f, {{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}); }

// chi([y, h]) = chi(y) on every basis vector y of g.
bool is_test3_witness(const LiePtr& g, const Functional& chi, const LieElement& h) {
  const Field& f = *h.field();
  const Functional c = chi.field() == h.field() ? chi : chi.over(h.field());
  for (std::size_t k = 0; k < g->dim(); ++k) {
    Vec yk(g->dim(), 0);
    yk[k] = 1;
    if (c(g->bracket(f, yk, h.coeffs())) != c.on_basis(k)) return false;
  }
  return true;
}

// Stabilizer of the flag by direct matrix test: M^-1 y M upper triangular.
bool stabilizes(const BorelDatum& b, const Vec& y) {
  const auto& cd = classical_data(b.g);
  const Matrix c = *inverse(b.flag) * cd.matrix_of(b.field(), y) * b.flag;
  for (std::size_t i = 0; i < cd.n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (c(i, j)) return false;
  return true;
}

}  // namespace

TEST_CASE("borel_from_flag", "[geom]") {
  const LiePtr g = construct_classical(Family::sl, 3, 5);
  const FieldPtr F = g->base();
  const BorelDatum b = borel_from_flag(g, Matrix::identity(F, 3));
  CHECK(b.sub.subspace() == borel_and_parabolic(g, {}).subspace());
  CHECK_THROWS_AS(borel_from_flag(g, Matrix(F, 3, 3)), DomainError);

  // Weyl translate: the permutation (0 2 1) stabilizes span(e0), span(e0, e2)
  const BorelDatum bw = borel_from_flag(g, permutation_matrix(F, {0, 2, 1}));
  CHECK(bw.sub.dim() == 5);
  CHECK(bw.sub.subspace().contains(Vec(classical_data(g).coordinates(Matrix::from_ints(F, {{0, 0, 0}, {0, 0, 0}, {0, 1, 0}})))));
  CHECK_FALSE(bw.sub.subspace().contains(Vec(classical_data(g).coordinates(Matrix::from_ints(F, {{0, 0, 0}, {0, 0, 1}, {0, 0, 0}})))));

  // a Borel of sl_2 not defined over GF(3)
  const LiePtr g2 = construct_classical(Family::sl, 2, 3);
  const FieldPtr F9 = Field::make(3, 2);
  Matrix m(F9, 2, 2);
  m(0, 0) = 3;  // the field generator
  m(1, 0) = 1;
  m(0, 1) = 0;
  m(1, 1) = 1;
  const BorelDatum b9 = borel_from_flag(g2, m);
  CHECK(b9.sub.dim() == 2);
  bool outside = false;
  for (const auto& v : b9.sub.subspace().basis_vectors())
    for (auto c : v) outside = outside || !F9->in_prime_field(c);
  CHECK(outside);
}

TEST_CASE("Borel stabilizers agree with the matrix test", "[geom]") {
  std::mt19937_64 rng(11);
  for (unsigned n : {2u, 3u, 4u}) {
    const LiePtr g = construct_classical(Family::sl, n, 5);
    const FieldPtr F = Field::make(5, 2);
    for (int t = 0; t < 10; ++t) {
      Matrix m = testing::random_matrix(rng, F, n, n);
      if (!inverse(m)) continue;
      const BorelDatum b = borel_from_flag(g, m);
      CHECK(b.sub.dim() == n * (n + 1) / 2 - 1);
      for (const auto& v : b.sub.subspace().basis_vectors()) CHECK(stabilizes(b, v));
      // a random element of g outside b fails the matrix test
      const Vec y = testing::random_vec(rng, *F, g->dim());
      CHECK(stabilizes(b, y) == b.sub.subspace().contains(y));
    }
  }
}

TEST_CASE("Springer fiber membership", "[geom]") {
  const LiePtr g = construct_classical(Family::sl, 2, 5);
  const FieldPtr F = g->base();
  const Functional chi = trace_dual(g, Matrix::from_ints(F, {{0, 1}, {0, 0}}));
  CHECK(in_springer_fiber(borel_from_flag(g, Matrix::identity(F, 2)), chi));
  const BorelDatum opp = borel_from_flag(g, permutation_matrix(F, {1, 0}));
  CHECK_FALSE(in_springer_fiber(opp, chi));
  CHECK(in_springer_fiber(opp, Functional::zero(g, F)));
}

TEST_CASE("test3 witnesses", "[geom]") {
  const LiePtr g = construct_classical(Family::sl, 2, 5);
  const FieldPtr F = g->base();
  const Functional chi = trace_dual(g, Matrix::from_ints(F, {{0, 1}, {0, 0}}));
  const BorelDatum b = borel_from_flag(g, Matrix::identity(F, 2));
  const auto h = test3_at(b, chi);
  REQUIRE(h);
  Vec expect(3, 0);
  expect[index_of(g, "H1")] = 3;
  CHECK(h->coeffs() == expect);
  CHECK(is_test3_witness(g, chi, *h));

  const auto h0 = test3_at(b, Functional::zero(g, F));
  REQUIRE(h0);
  CHECK(h0->is_zero());

  // the nilradical alone carries no witness
  Vec e(3, 0);
  e[index_of(g, "E12")] = 1;
  CHECK_FALSE(test3_on(g, Subspace::span(F, 3, {e}), chi));
}

TEST_CASE("tangency splitting check", "[geom]") {
  const LiePtr g = construct_classical(Family::sl, 3, 5);
  const FieldPtr F = g->base();
  const Functional chi = trace_dual(g, e_sl3_subregular(F));
  const BorelDatum b = borel_from_flag(g, Matrix::identity(F, 3));
  CHECK(tangency_splitting_check(b, chi, Subspace(F, 8)));
  CHECK_FALSE(tangency_splitting_check(b, chi, Subspace::full(F, 8)));
  CHECK(tangency_splitting_check(b, Functional::zero(g, F), Subspace::full(F, 8)));
  // tangent line of the alpha_1 orbit: the E21 direction
  Vec e21(8, 0);
  e21[classical_data(g).root_index(1, 0)] = 1;
  CHECK(tangency_splitting_check(b, chi, Subspace::span(F, 8, {e21})));
  Vec e31(8, 0);
  e31[classical_data(g).root_index(2, 0)] = 1;
  CHECK_FALSE(tangency_splitting_check(b, chi, Subspace::span(F, 8, {e31})));
  CHECK_THROWS_AS(tangency_splitting_check(borel_from_flag(g, permutation_matrix(F, {2, 1, 0})), chi, Subspace(F, 8)),
                  DomainError);
}

TEST_CASE("parabolic components of the sl_3 subregular fiber", "[geom]") {
  const LiePtr g = construct_classical(Family::sl, 3, 5);
  const FieldPtr F = g->base();
  const Functional chi = trace_dual(g, e_sl3_subregular(F));
  CHECK(parabolic_nice(g, borel_and_parabolic(g, {1}), chi));
  CHECK(parabolic_nice(g, borel_and_parabolic(g, {2}), chi));
  CHECK_FALSE(parabolic_nice(g, borel_and_parabolic(g, {1, 2}), chi));
  const BorelDatum b = borel_from_flag(g, Matrix::identity(F, 3));
  for (unsigned a : {1u, 2u}) {
    const auto P = borel_and_parabolic(g, {a});
    for (const auto& pt : parabolic_orbit_points(b, P, 30, 2, a)) {
      CHECK(in_springer_fiber(pt, chi));
      CHECK(tangency_splitting_check(pt, chi, P.subspace()));
    }
  }
}

TEST_CASE("fiber sampling", "[geom]") {
  const LiePtr g2 = construct_classical(Family::sl, 2, 5);
  const FiberSample s2 = sample_fiber(g2, Matrix::from_ints(g2->base(), {{0, 1}, {0, 0}}), 50, 2, 1);
  REQUIRE(s2.points.size() == 1);
  CHECK(s2.points[0].sub.subspace() == Subspace::span(Field::make(5, 2), 3,
                                                         borel_and_parabolic(g2, {}).subspace().basis_vectors()));

  const LiePtr g = construct_classical(Family::sl, 3, 5);
  const FiberSample w = sample_fiber(g, e_sl3_subregular(g->base()), 0, 1, 1);
  CHECK(w.points.size() == w.weyl_seeds);
  // identity, s_1 and s_2 kill chi = tr(E13 .)
  CHECK(w.weyl_seeds == 3);

  const FiberSample s = sample_fiber(g, e_sl3_subregular(g->base()), 40, 2, 5);
  CHECK(s.points.size() == 43);
  for (const auto& pt : s.points) CHECK(in_springer_fiber(pt, s.chi));
  const FiberSample again = sample_fiber(g, e_sl3_subregular(g->base()), 40, 2, 5);
  REQUIRE(again.points.size() == s.points.size());
  for (std::size_t i = 0; i < s.points.size(); ++i) CHECK(again.points[i].flag == s.points[i].flag);
}

TEST_CASE("test3 implies tangency for the fiber tangent bound", "[geom]") {
  for (unsigned n : {2u, 3u, 4u}) {
    const LiePtr g = construct_classical(Family::sl, n, 5);
    for (const auto& part : partitions(n)) {
      const FiberSample s = sample_fiber(g, nilpotent_from_partition(g->base(), part), 10, 2, 3);
      for (const auto& pt : s.points) {
        const Subspace t = fiber_tangent_bound(pt, s.chi);
        CHECK(t.contains(pt.sub.subspace()));
        const auto h = test3_at(pt, s.chi);
        REQUIRE(h);
        CHECK(is_test3_witness(g, s.chi, *h));
        CHECK(pt.sub.subspace().contains(h->coeffs()));
        CHECK(tangency_splitting_check(pt, s.chi, t));
      }
    }
  }
}
