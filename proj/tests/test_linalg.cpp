#include "catch_amalgamated.hpp"

#include <map>

#include "modlie/matrix.hpp"
#include "test_support.hpp"

using namespace modlie;

TEST_CASE("solve_linear examples", "[linalg]") {
  auto f = Field::make(5);
  SECTION("identity") {
    auto sol = solve_linear(Matrix::identity(f, 2), Vec{1, 2});
    REQUIRE(sol.particular);
    CHECK(*sol.particular == Vec{1, 2});
    CHECK(sol.kernel.dim() == 0);
  }
  SECTION("zero matrix") {
    auto sol = solve_linear(Matrix(f, 2, 2), Vec{0, 0});
    REQUIRE(sol.particular);
    CHECK(*sol.particular == Vec{0, 0});
    CHECK(sol.kernel.dim() == 2);
  }
  SECTION("rank one system") {
    Matrix a = Matrix::from_ints(f, {{1, 2}, {2, 4}});
    auto sol = solve_linear(a, Vec{1, 2});
    REQUIRE(sol.particular);
    const Vec& x = *sol.particular;
    // Hand multiplication: row i of A dotted with x, mod 5.
    CHECK((1 * x[0] + 2 * x[1]) % 5 == 1);
    CHECK((2 * x[0] + 4 * x[1]) % 5 == 2);
    CHECK(sol.kernel.dim() == 1);
  }
  SECTION("inconsistent") {
    Matrix a = Matrix::from_ints(f, {{1, 2}, {2, 4}});
    CHECK_FALSE(solve_linear(a, Vec{1, 3}).particular);
  }
  SECTION("dimension mismatch") { CHECK_THROWS_AS(solve_linear(Matrix::identity(f, 2), Vec{1}), DimensionError); }
}

TEST_CASE("solve_linear properties on random systems", "[linalg][property]") {
  std::mt19937_64 rng(3);
  for (auto [p, k] : {std::pair{3u, 1u}, {5u, 1u}, {3u, 2u}}) {
    auto f = Field::make(p, k);
    for (int t = 0; t < 100; ++t) {
      const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
      Matrix a = testing::random_matrix(rng, f, r, c);
      if (t % 3 == 0 && c > 1) a = a * Matrix::direct_sum(Matrix::identity(f, c - 1), Matrix(f, 1, 1));
      // consistent right-hand side
      Vec x0 = testing::random_vec(rng, *f, c);
      Vec b = a.apply(x0);
      auto sol = solve_linear(a, b);
      REQUIRE(sol.particular);
      CHECK(a.apply(*sol.particular) == b);
      for (std::size_t i = 0; i < sol.kernel.dim(); ++i) CHECK(a.apply(sol.kernel.basis_vec(i)) == Vec(r, 0));
      CHECK(sol.kernel.dim() + rank(a) == c);
    }
  }
}

TEST_CASE("inverse", "[linalg]") {
  std::mt19937_64 rng(8);
  auto f = Field::make(7, 2);
  int invertible = 0;
  for (int t = 0; t < 50; ++t) {
    Matrix a = testing::random_matrix(rng, f, 4, 4);
    auto inv = inverse(a);
    if (rank(a) == 4) {
      REQUIRE(inv);
      CHECK(a * *inv == Matrix::identity(f, 4));
      ++invertible;
    } else {
      CHECK_FALSE(inv);
    }
  }
  CHECK(invertible > 0);
  CHECK_FALSE(inverse(Matrix(f, 3, 3)));
}

TEST_CASE("subspace_ops examples", "[linalg]") {
  auto f = Field::make(3);
  Subspace e1 = Subspace::span(f, 2, {Vec{1, 0}});
  Subspace e2 = Subspace::span(f, 2, {Vec{0, 1}});
  auto r = subspace_ops(e1, e2);
  CHECK(r.sum.is_full());
  CHECK(r.intersection.is_zero());
  CHECK_FALSE(r.u_in_v);

  auto s = subspace_ops(e1, e1);
  CHECK(s.sum == e1);
  CHECK(s.intersection == e1);
  CHECK(s.u_in_v);
  CHECK(s.v_in_u);

  CHECK_THROWS_AS(subspace_ops(e1, Subspace::full(f, 3)), DimensionError);
}

TEST_CASE("echelon form is canonical", "[linalg]") {
  auto f = Field::make(5);
  Subspace a = Subspace::span(f, 3, {Vec{1, 2, 3}, Vec{0, 1, 4}});
  Subspace b = Subspace::span(f, 3, {Vec{1, 3, 2}, Vec{2, 4, 1}});  // same plane, other spanning set
  CHECK(a.contains(b));
  CHECK(b.contains(a));
  CHECK(a == b);
}

TEST_CASE("Grassmann formula, exhaustive over GF(3)^n for n <= 4", "[linalg][property]") {
  auto f = Field::make(3);
  for (std::size_t n = 1; n <= 4; ++n) {
    // Enumerate every subspace by closing {0} under adding one vector.
    std::vector<Vec> vectors;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::size_t idx = 1; idx < total; ++idx) {
      Vec v(n);
      std::size_t t = idx;
      for (auto& x : v) {
        x = static_cast<code_t>(t % 3);
        t /= 3;
      }
      vectors.push_back(v);
    }
    std::map<std::vector<code_t>, Subspace> all;
    std::vector<Subspace> frontier{Subspace(f, n)};
    all.emplace(std::vector<code_t>{}, Subspace(f, n));
    while (!frontier.empty()) {
      std::vector<Subspace> next;
      for (const auto& s : frontier)
        for (const auto& v : vectors) {
          Subspace t = s + Subspace::span(f, n, {v});
          auto key = t.basis().data();
          if (all.emplace(key, t).second) next.push_back(t);
        }
      frontier = std::move(next);
    }
    // Number of subspaces of GF(3)^n: 2, 6, 28, 212.
    const std::size_t expected[] = {0, 2, 6, 28, 212};
    CHECK(all.size() == expected[n]);
    for (const auto& [ka, u] : all)
      for (const auto& [kb, v] : all) {
        auto r = subspace_ops(u, v);
        CHECK(r.sum.dim() + r.intersection.dim() == u.dim() + v.dim());
        CHECK(r.intersection.contains(r.intersection));
        CHECK(u.contains(r.intersection));
        CHECK(v.contains(r.intersection));
        CHECK(r.sum.contains(u));
        CHECK(r.u_in_v == (r.intersection == u));
      }
  }
}
