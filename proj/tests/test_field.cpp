#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "ddforge/field.hpp"

using namespace ddforge;

namespace {

// Independent oracle: school-book polynomial multiplication followed by long
// division, working directly on coefficient vectors. Kept free of the
// table-based implementation path.
std::uint32_t oracle_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p,
                         const std::vector<std::uint32_t>& modulus) {
  const std::size_t n = modulus.size() - 1;
  std::vector<std::uint32_t> fa(n), fb(n);
  for (std::size_t i = 0; i < n; ++i) fa[i] = a % p, a /= p;
  for (std::size_t i = 0; i < n; ++i) fb[i] = b % p, b /= p;
  std::vector<std::uint32_t> prod(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + fa[i] * fb[j]) % p;
  for (std::size_t d = prod.size(); d-- > n;) {
    const std::uint32_t c = prod[d];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= n; ++i) {
      const std::uint32_t t = c * modulus[i] % p;
      prod[d - n + i] = (prod[d - n + i] + p - t) % p;
    }
  }
  std::uint32_t out = 0;
  for (std::size_t i = n; i-- > 0;) out = out * p + prod[i];
  return out;
}

}  // namespace

TEST_CASE("field construction") {
  SECTION("GF(4) with x^2+x+1") {
    GaloisField gf(2, 2, {1, 1, 1});
    REQUIRE(gf.q() == 4);
    REQUIRE(gf.elements().size() == 4);
    REQUIRE(gf.to_string(gf.element(2)) == "w");
    REQUIRE(gf.to_string(gf.element(3)) == "w+1");
  }
  SECTION("reducible modulus rejected") {
    // x^2+1 = (x+1)^2 over GF(2)
    REQUIRE_THROWS_WITH(GaloisField(2, 2, {1, 0, 1}), Catch::Matchers::ContainsSubstring("reducible"));
  }
  SECTION("GF(9) default modulus is irreducible") {
    GaloisField gf(3, 2);
    REQUIRE(gf.q() == 9);
    // independent check for degree 2: no root in GF(3)
    const auto& f = gf.modulus();
    for (std::uint32_t x = 0; x < 3; ++x) {
      const std::uint32_t value = (f[0] + f[1] * x + f[2] * x * x) % 3;
      REQUIRE(value != 0);
    }
  }
  SECTION("non-prime p rejected") {
    REQUIRE_THROWS_AS(GaloisField(4, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(GaloisField(6, 2), std::invalid_argument);
  }
  SECTION("wrong-degree modulus rejected") {
    REQUIRE_THROWS_AS(GaloisField(2, 2, {1, 1}), std::invalid_argument);
    REQUIRE_THROWS_AS(GaloisField(2, 2, {1, 1, 1, 1}), std::invalid_argument);
  }
  SECTION("every built-in modulus up to order 256 validates") {
    const std::pair<std::uint32_t, std::uint32_t> cases[] = {
        {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 7}, {2, 8},
        {3, 1}, {3, 2}, {3, 3}, {3, 4}, {3, 5}, {5, 1}, {5, 2}, {5, 3},
        {7, 2}, {11, 2}, {13, 2}, {251, 1}};
    for (const auto& [p, n] : cases) REQUIRE_NOTHROW(GaloisField(p, n));
  }
}

TEST_CASE("field multiplication in GF(4)") {
  GaloisField gf(2, 2, {1, 1, 1});
  const Fe w = gf.element(2), w1 = gf.element(3), one = gf.one();
  CHECK(gf.mul(w, w) == w1);
  CHECK(gf.mul(w, one) == w);
  CHECK(gf.mul(w, w1) == one);
}

TEST_CASE("multiplication table matches the polynomial oracle") {
  for (const auto& [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 2}, {3, 2}, {2, 4}}) {
    GaloisField gf(p, n);
    for (std::uint32_t a = 0; a < gf.q(); ++a)
      for (std::uint32_t b = 0; b < gf.q(); ++b)
        REQUIRE(gf.mul(gf.element(a), gf.element(b)).v ==
                oracle_mul(a, b, p, gf.modulus()));
  }
}

TEST_CASE("field inverse") {
  GaloisField gf(2, 2, {1, 1, 1});
  CHECK(gf.inv(gf.one()) == gf.one());
  CHECK(gf.inv(gf.element(2)) == gf.element(3));  // w * (w+1) = 1
  CHECK_THROWS_AS(gf.inv(gf.zero()), std::domain_error);
  SECTION("two-sided inverse, exhaustive up to q = 16") {
    for (const auto& [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 4}, {3, 2}, {13, 1}}) {
      GaloisField f(p, n);
      for (std::uint32_t a = 1; a < f.q(); ++a) {
        const Fe x = f.element(a);
        REQUIRE(f.mul(x, f.inv(x)) == f.one());
        REQUIRE(f.mul(f.inv(x), x) == f.one());
      }
    }
  }
}

TEST_CASE("field axioms hold exhaustively for q <= 16") {
  for (const auto& [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 2}, {3, 2}, {2, 4}}) {
    GaloisField gf(p, n);
    const std::uint32_t q = gf.q();
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        const Fe x = gf.element(a), y = gf.element(b);
        REQUIRE(gf.mul(x, y) == gf.mul(y, x));
        REQUIRE(gf.add(x, y) == gf.add(y, x));
        REQUIRE(gf.sub(x, y) == gf.add(x, gf.neg(y)));
      }
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        for (std::uint32_t c = 0; c < q; ++c) {
          const Fe x = gf.element(a), y = gf.element(b), z = gf.element(c);
          REQUIRE(gf.mul(gf.mul(x, y), z) == gf.mul(x, gf.mul(y, z)));
          REQUIRE(gf.mul(x, gf.add(y, z)) == gf.add(gf.mul(x, y), gf.mul(x, z)));
        }
  }
}

TEST_CASE("frobenius automorphism") {
  GaloisField gf(2, 2, {1, 1, 1});
  FrobeniusAut sigma(gf, 2);
  const Fe w = gf.element(2), w1 = gf.element(3);
  CHECK(sigma.apply(w) == w1);
  CHECK(sigma.apply(gf.one()) == gf.one());
  CHECK(sigma.apply(gf.zero()) == gf.zero());

  SECTION("additive and multiplicative, exhaustive") {
    for (const auto& [p, n, m] :
         {std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>{2, 2, 2}, {3, 2, 3},
          {2, 4, 2}, {2, 4, 4}, {2, 3, 2}}) {
      GaloisField f(p, n);
      FrobeniusAut s(f, m);
      std::uint32_t fixed = 0;
      for (std::uint32_t a = 0; a < f.q(); ++a) {
        if (s.fixes(f.element(a))) ++fixed;
        for (std::uint32_t b = 0; b < f.q(); ++b) {
          const Fe x = f.element(a), y = f.element(b);
          REQUIRE(s.apply(f.add(x, y)) == f.add(s.apply(x), s.apply(y)));
          REQUIRE(s.apply(f.mul(x, y)) == f.mul(s.apply(x), s.apply(y)));
        }
      }
      REQUIRE(fixed == m);
      // sigma^h = id where q = m^h
      for (std::uint32_t a = 0; a < f.q(); ++a) {
        Fe x = f.element(a);
        for (std::uint32_t i = 0; i < s.order(); ++i) x = s.apply(x);
        REQUIRE(x == f.element(a));
      }
    }
  }
  SECTION("invalid exponents rejected") {
    REQUIRE_THROWS_AS(FrobeniusAut(gf, 3), std::invalid_argument);   // not a power of p
    REQUIRE_THROWS_AS(FrobeniusAut(gf, 8), std::invalid_argument);   // q not a power of m
    GaloisField f8(2, 3);
    REQUIRE_THROWS_AS(FrobeniusAut(f8, 4), std::invalid_argument);   // 8 is not a power of 4
  }
}

TEST_CASE("norm to the fixed field") {
  GaloisField gf(2, 2, {1, 1, 1});
  FrobeniusAut sigma(gf, 2);
  const Fe w = gf.element(2), w1 = gf.element(3);
  CHECK(sigma.norm(gf, w) == gf.one());       // w * w^2 = w^3 = 1
  CHECK(sigma.norm(gf, gf.zero()) == gf.zero());
  CHECK(sigma.norm(gf, w1) == gf.one());
  SECTION("lands in the fixed field for every element when sigma^2 = id") {
    GaloisField f9(3, 2);
    FrobeniusAut s(f9, 3);
    for (std::uint32_t a = 0; a < 9; ++a) REQUIRE(s.fixes(s.norm(f9, f9.element(a))));
  }
}

TEST_CASE("element enumeration order") {
  GaloisField gf4(2, 2, {1, 1, 1});
  const auto els = gf4.elements();
  REQUIRE(els.size() == 4);
  CHECK(els[0] == gf4.zero());
  CHECK(els[1] == gf4.one());
  CHECK(gf4.coeffs(els[2]) == std::vector<std::uint32_t>{0, 1});
  CHECK(gf4.coeffs(els[3]) == std::vector<std::uint32_t>{1, 1});
  CHECK(GaloisField(2, 1).elements().size() == 2);
  CHECK(GaloisField(3, 2).elements().size() == 9);
}

TEST_CASE("prime power factorization helper") {
  CHECK(detail::factor_prime_power(4) == std::pair<std::uint32_t, std::uint32_t>{2, 2});
  CHECK(detail::factor_prime_power(9) == std::pair<std::uint32_t, std::uint32_t>{3, 2});
  CHECK(detail::factor_prime_power(8) == std::pair<std::uint32_t, std::uint32_t>{2, 3});
  CHECK(detail::factor_prime_power(13) == std::pair<std::uint32_t, std::uint32_t>{13, 1});
  CHECK(detail::factor_prime_power(6).first == 0);
  CHECK(detail::factor_prime_power(1).first == 0);
}
