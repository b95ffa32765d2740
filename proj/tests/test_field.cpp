#include "catch_amalgamated.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "modlie/field.hpp"
#include "test_support.hpp"

using namespace modlie;

namespace {

// Irreducibility by trial division with every monic polynomial of degree
// 1..deg/2; independent of the gcd-based test in the library.
bool irreducible_by_trial_division(const poly::Poly& f, unsigned p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      poly::Poly g(d + 1, 0);
      g[d] = 1;
      std::uint64_t t = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<unsigned>(t % p);
        t /= p;
      }
      if (poly::mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("field construction rejects unsupported characteristics", "[field]") {
  CHECK_THROWS_AS(Field::make(2), DomainError);
  CHECK_THROWS_AS(Field::make(9), DomainError);
  CHECK_THROWS_AS(Field::make(3, 0), DomainError);
  CHECK_NOTHROW(Field::make(3));
  CHECK(Field::make(5, 2) == Field::make(5, 2));
}

TEST_CASE("default moduli are irreducible and primitive", "[field]") {
  for (unsigned p : {3u, 5u, 7u, 11u})
    for (unsigned k = 1; k <= 4; ++k) {
      if (p == 11 && k == 4) continue;
      auto f = Field::make(p, k);
      INFO("p=" << p << " k=" << k);
      CHECK(f->modulus().size() == k + 1);
      CHECK(f->modulus().back() == 1);
      CHECK(irreducible_by_trial_division(f->modulus(), p));
      // x (code p) has multiplicative order q-1 when k > 1.
      if (k > 1) {
        code_t x = p, acc = 1;
        unsigned order = 0;
        do {
          acc = f->mul(acc, x);
          ++order;
        } while (acc != 1);
        CHECK(order == f->q() - 1);
      }
    }
  // GF(9): first primitive monic quadratic is x^2 + x + 2.
  CHECK(Field::make(3, 2)->modulus() == poly::Poly{2, 1, 1});
}

TEST_CASE("field axioms on random samples", "[field][property]") {
  std::mt19937_64 rng(11);
  for (auto [p, k] : {std::pair{3u, 1u}, {5u, 1u}, {3u, 2u}, {5u, 2u}, {3u, 3u}, {7u, 2u}}) {
    auto f = Field::make(p, k);
    for (int t = 0; t < 300; ++t) {
      FieldElement a(f, testing::random_code(rng, *f)), b(f, testing::random_code(rng, *f)),
          c(f, testing::random_code(rng, *f));
      CHECK((a * b) * c == a * (b * c));
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + (-a) == FieldElement(f, 0));
      CHECK(a - b + b == a);
      if (!a.is_zero()) CHECK(a * a.inverse() == FieldElement(f, 1));
    }
  }
}

TEST_CASE("frobenius_pow", "[field]") {
  auto f5 = Field::make(5);
  CHECK(frobenius_pow(FieldElement(f5, 3)) == FieldElement(f5, 3));
  CHECK(frobenius_pow(FieldElement(f5, 0)) == FieldElement(f5, 0));

  auto f9 = Field::make(3, 2);
  FieldElement g(f9, f9->generator());
  FieldElement cube = g * g * g;  // repeated multiplication oracle
  CHECK(frobenius_pow(g) == cube);
  CHECK(frobenius_pow(frobenius_pow(g)) == g);
  CHECK(!(frobenius_pow(g) == g));

  SECTION("additive, multiplicative, k-th iterate is the identity") {
    std::mt19937_64 rng(5);
    for (auto [p, k] : {std::pair{3u, 3u}, {5u, 2u}, {7u, 2u}, {3u, 4u}}) {
      auto f = Field::make(p, k);
      for (int t = 0; t < 200; ++t) {
        FieldElement a(f, testing::random_code(rng, *f)), b(f, testing::random_code(rng, *f));
        CHECK(frobenius_pow(a + b) == frobenius_pow(a) + frobenius_pow(b));
        CHECK(frobenius_pow(a * b) == frobenius_pow(a) * frobenius_pow(b));
        FieldElement it = a;
        for (unsigned i = 0; i < k; ++i) it = frobenius_pow(it);
        CHECK(it == a);
      }
      // Fixed points are exactly the prime field.
      for (code_t a = 0; a < f->q(); ++a) CHECK((f->frob(a) == a) == f->in_prime_field(a));
    }
  }
}

TEST_CASE("prime subfield codes embed unchanged", "[field]") {
  auto f = Field::make(5, 3);
  for (code_t a = 0; a < 5; ++a)
    for (code_t b = 0; b < 5; ++b) {
      CHECK(f->add(a, b) == (a + b) % 5);
      CHECK(f->mul(a, b) == (a * b) % 5);
    }
  CHECK(f->in_subfield(3, 1));
}

TEST_CASE("modulus table override", "[field]") {
  const auto path = std::filesystem::temp_directory_path() / "modlie_modulus_table.json";
  {
    std::ofstream out(path);
    out << R"({"3,2": [1, 0, 1], "5,2": [0, 0, 1]})";
  }
  ::setenv("MODLIE_MODULUS_TABLE", path.c_str(), 1);
  CHECK(default_modulus(3, 2) == poly::Poly{1, 0, 1});  // x^2 + 1, irreducible but not primitive
  CHECK_THROWS_AS(default_modulus(5, 2), DomainError);  // x^2 is reducible
  CHECK(default_modulus(7, 2) == Field::make(7, 2)->modulus());
  ::unsetenv("MODLIE_MODULUS_TABLE");
  std::filesystem::remove(path);
}
