#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ddforge/field.hpp"

namespace ddforge {

/// Element a + b*eps of the twisted dual numbers R = K(eps; sigma).
struct Re {
  Fe a, b;
  constexpr auto operator<=>(const Re&) const = default;
};

/// The local ring R = K(eps; sigma) = K + K*eps with eps^2 = 0 and
/// eps*x = x^sigma*eps. Elements are stored as pairs over K; the ideal of
/// non-units is I = K*eps. Immutable after construction.
class TwistedDualRing {
 public:
  TwistedDualRing(GaloisField field, std::uint32_t m)
      : TwistedDualRing(field, FrobeniusAut(field, m)) {}

  TwistedDualRing(GaloisField field, FrobeniusAut sigma)
      : field_(std::move(field)), sigma_(std::move(sigma)) {
    if (field_.q() <= 16) {
      // |R| = q^2, |I| = q, |R*| = q(q-1), confirmed by enumeration.
      const std::uint32_t q = field_.q();
      std::uint32_t ideal = 0, units = 0;
      for (std::uint32_t c = 0; c < q * q; ++c) {
        const Re x = element(c);
        if (in_ideal(x)) ++ideal;
        if (is_unit(x)) ++units;
      }
      if (ideal != q || units != q * (q - 1))
        throw std::logic_error("ring cardinality invariants violated");
    }
  }

  const GaloisField& field() const { return field_; }
  const FrobeniusAut& sigma() const { return sigma_; }
  std::uint32_t q() const { return field_.q(); }
  /// |R| = q^2.
  std::uint32_t size() const { return field_.q() * field_.q(); }

  Re zero() const { return {field_.zero(), field_.zero()}; }
  Re one() const { return {field_.one(), field_.zero()}; }
  Re eps() const { return {field_.zero(), field_.one()}; }
  Re scalar(Fe x) const { return {x, field_.zero()}; }
  Re make(Fe a, Fe b) const { return {a, b}; }

  /// Dense element code a*q + b; the induced order is the canonical ring
  /// element order used downstream.
  std::uint32_t code(Re x) const { return std::uint32_t(x.a.v) * q() + x.b.v; }
  Re element(std::uint32_t code) const {
    if (code >= size()) throw std::out_of_range("ring element code out of range");
    return {field_.element(code / q()), field_.element(code % q())};
  }

  bool is_unit(Re x) const { return !field_.is_zero(x.a); }
  bool in_ideal(Re x) const { return field_.is_zero(x.a); }

  Re add(Re x, Re y) const { return {field_.add(x.a, y.a), field_.add(x.b, y.b)}; }
  Re sub(Re x, Re y) const { return {field_.sub(x.a, y.a), field_.sub(x.b, y.b)}; }
  Re neg(Re x) const { return {field_.neg(x.a), field_.neg(x.b)}; }

  /// (a + b*eps)(c + d*eps) = ac + (ad + b*c^sigma)*eps.
  Re mul(Re x, Re y) const {
    return {field_.mul(x.a, y.a),
            field_.add(field_.mul(x.a, y.b), field_.mul(x.b, sigma_.apply(y.a)))};
  }

  /// u^-1 = a^-1 - a^-1 b (a^sigma)^-1 eps; checked to be two-sided.
  Re inv(Re u) const {
    if (!is_unit(u)) throw std::domain_error("non-unit has no inverse");
    const Fe ai = field_.inv(u.a);
    const Fe coeff = field_.neg(field_.mul(field_.mul(ai, u.b), field_.inv(sigma_.apply(u.a))));
    const Re r{ai, coeff};
    if (mul(u, r) != one() || mul(r, u) != one())
      throw std::logic_error("inverse formula failed");
    return r;
  }

  /// Unique factorization u = k*w with k in K* and w in U = 1 + K*eps:
  /// k = a, w = 1 + (a^-1 b)*eps.
  std::pair<Fe, Re> decompose_unit(Re u) const {
    if (!is_unit(u)) throw std::domain_error("only units decompose over K* x U");
    const Re w{field_.one(), field_.mul(field_.inv(u.a), u.b)};
    if (mul(scalar(u.a), w) != u) throw std::logic_error("semidirect decomposition failed");
    return {u.a, w};
  }

  bool in_subgroup_U(Re x) const { return x.a == field_.one(); }
  bool in_K(Re x) const { return field_.is_zero(x.b); }

  /// N = {n in R* : n^-1 K* n = K*} by exhaustive conjugation; the result is
  /// checked against the closed form (R* when sigma = id, K* otherwise), so
  /// the computation doubles as a machine proof of that lemma.
  std::vector<Re> normalizer_of_field_units() const {
    std::vector<Re> result;
    const std::uint32_t qq = q();
    for (std::uint32_t c = 0; c < size(); ++c) {
      const Re n = element(c);
      if (!is_unit(n)) continue;
      const Re ni = inv(n);
      bool normalizes = true;
      for (std::uint32_t k = 1; k < qq && normalizes; ++k)
        normalizes = in_K(mul(mul(ni, scalar(field_.element(k))), n));
      if (normalizes) result.push_back(n);
    }
    const std::size_t expected = sigma_.is_identity() ? std::size_t(qq) * (qq - 1) : qq - 1;
    if (result.size() != expected)
      throw std::logic_error("normalizer does not match the closed form");
    return result;
  }

 private:
  GaloisField field_;
  FrobeniusAut sigma_;
};

}  // namespace ddforge
