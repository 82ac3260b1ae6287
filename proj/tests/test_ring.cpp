#include <catch2/catch_amalgamated.hpp>

#include <cstdint>

#include "ddforge/ring.hpp"

using namespace ddforge;

namespace {

TwistedDualRing gf4_twisted() { return {GaloisField(2, 2, {1, 1, 1}), 2}; }
TwistedDualRing gf4_plain() { return {GaloisField(2, 2, {1, 1, 1}), 4}; }

}  // namespace

TEST_CASE("ring multiplication") {
  const auto r = gf4_twisted();
  const GaloisField& k = r.field();
  const Fe w = k.element(2), w1 = k.element(3);

  CHECK(r.mul(r.eps(), r.eps()) == r.zero());
  // (w + eps)^2 = w^2 + (w*1 + 1*w^sigma) eps = (w+1) + eps
  const Re x = r.make(w, k.one());
  CHECK(r.mul(x, x) == r.make(w1, k.one()));
  for (std::uint32_t c = 0; c < r.size(); ++c) {
    CHECK(r.mul(r.one(), r.element(c)) == r.element(c));
    CHECK(r.mul(r.element(c), r.one()) == r.element(c));
  }
}

TEST_CASE("unit inverse") {
  const auto r = gf4_twisted();
  const GaloisField& k = r.field();
  CHECK(r.inv(r.one()) == r.one());
  // (w + eps)^-1 = (w+1) + eps, confirmed through ring_mul inside inv()
  CHECK(r.inv(r.make(k.element(2), k.one())) == r.make(k.element(3), k.one()));
  CHECK_THROWS_AS(r.inv(r.eps()), std::domain_error);

  SECTION("two-sided for every unit, both twists") {
    for (const auto& ring : {gf4_twisted(), gf4_plain(), TwistedDualRing(GaloisField(3, 2), 3)}) {
      for (std::uint32_t c = 0; c < ring.size(); ++c) {
        const Re u = ring.element(c);
        if (!ring.is_unit(u)) continue;
        const Re ui = ring.inv(u);
        REQUIRE(ring.mul(u, ui) == ring.one());
        REQUIRE(ring.mul(ui, u) == ring.one());
      }
    }
  }
}

TEST_CASE("semidirect decomposition over K* and U") {
  const auto r = gf4_twisted();
  const GaloisField& k = r.field();
  const Fe w = k.element(2), w1 = k.element(3);

  const auto [k1, w_part] = r.decompose_unit(r.make(w, k.one()));
  CHECK(k1 == w);
  CHECK(w_part == r.make(k.one(), w1));  // 1 + (w^-1)eps = 1 + (w+1)eps
  CHECK(r.decompose_unit(r.one()) == std::pair{k.one(), r.one()});
  CHECK(r.decompose_unit(r.scalar(w)) == std::pair{w, r.one()});
  CHECK_THROWS_AS(r.decompose_unit(r.eps()), std::domain_error);

  SECTION("unique factorization for every unit") {
    for (std::uint32_t c = 0; c < r.size(); ++c) {
      const Re u = r.element(c);
      if (!r.is_unit(u)) continue;
      const auto [kk, ww] = r.decompose_unit(u);
      REQUIRE(!k.is_zero(kk));
      REQUIRE(r.in_subgroup_U(ww));
      REQUIRE(r.mul(r.scalar(kk), ww) == u);
    }
  }
}

TEST_CASE("normalizer of K* in R*") {
  SECTION("sigma != id gives K*") {
    const auto n = gf4_twisted().normalizer_of_field_units();
    REQUIRE(n.size() == 3);
    for (const Re x : n) CHECK(gf4_twisted().in_K(x));
  }
  SECTION("sigma = id gives R*") {
    CHECK(gf4_plain().normalizer_of_field_units().size() == 12);
  }
  SECTION("GF(9) twisted") {
    CHECK(TwistedDualRing(GaloisField(3, 2), 3).normalizer_of_field_units().size() == 8);
  }
}

TEST_CASE("ring structure invariants, exhaustive") {
  for (const auto& r : {gf4_twisted(), gf4_plain(), TwistedDualRing(GaloisField(3, 2), 3),
                        TwistedDualRing(GaloisField(2, 3), 2)}) {
    const GaloisField& k = r.field();
    const std::uint32_t q = k.q();

    SECTION("eps * x = x^sigma * eps, q = " + std::to_string(q) +
            " m = " + std::to_string(r.sigma().m())) {
      for (std::uint32_t x = 0; x < q; ++x) {
        const Fe e = k.element(x);
        REQUIRE(r.mul(r.eps(), r.scalar(e)) == r.mul(r.scalar(r.sigma().apply(e)), r.eps()));
      }
    }

    SECTION("U is normal in R*") {
      for (std::uint32_t uc = 0; uc < r.size(); ++uc) {
        const Re u = r.element(uc);
        if (!r.is_unit(u)) continue;
        for (std::uint32_t wc = 0; wc < q; ++wc) {
          const Re w = r.make(k.one(), k.element(wc));
          REQUIRE(r.in_subgroup_U(r.mul(r.mul(r.inv(u), w), u)));
        }
      }
    }

    SECTION("K* U = R* and K* intersect U = {1}") {
      std::uint32_t products = 0;
      std::vector<bool> hit(r.size(), false);
      for (std::uint32_t kc = 1; kc < q; ++kc)
        for (std::uint32_t wc = 0; wc < q; ++wc) {
          const Re prod = r.mul(r.scalar(k.element(kc)), r.make(k.one(), k.element(wc)));
          if (!hit[r.code(prod)]) hit[r.code(prod)] = true, ++products;
        }
      REQUIRE(products == q * (q - 1));
      for (std::uint32_t kc = 1; kc < q; ++kc)
        if (r.in_subgroup_U(r.scalar(k.element(kc)))) REQUIRE(kc == 1);
    }

    SECTION("associativity; commutative iff sigma = id") {
      bool commutative = true;
      for (std::uint32_t a = 0; a < r.size(); ++a)
        for (std::uint32_t b = 0; b < r.size(); ++b) {
          const Re x = r.element(a), y = r.element(b);
          if (r.mul(x, y) != r.mul(y, x)) commutative = false;
          for (std::uint32_t c = 0; c < r.size(); ++c) {
            const Re z = r.element(c);
            REQUIRE(r.mul(r.mul(x, y), z) == r.mul(x, r.mul(y, z)));
          }
        }
      REQUIRE(commutative == r.sigma().is_identity());
    }

    SECTION("the ideal squares to zero and equals K eps") {
      for (std::uint32_t a = 0; a < r.size(); ++a) {
        const Re x = r.element(a);
        if (!r.in_ideal(x)) continue;
        REQUIRE(k.is_zero(x.a));
        for (std::uint32_t b = 0; b < r.size(); ++b) {
          const Re y = r.element(b);
          if (r.in_ideal(y)) REQUIRE(r.mul(x, y) == r.zero());
        }
      }
    }
  }
}
