#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ddforge {

/// Element of GF(p^n) in polynomial-residue representation. The code packs
/// the coefficient vector in base p, constant term in the least significant
/// digit, so numeric order on codes is the canonical element order (0 first,
/// then 1).
struct Fe {
  std::uint16_t v = 0;
  constexpr auto operator<=>(const Fe&) const = default;
};

namespace detail {

inline bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Decomposes a prime power q = p^n; returns {0,0} if q is not one.
inline std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint64_t q) {
  for (std::uint32_t p = 2; std::uint64_t(p) * p <= q; ++p) {
    if (q % p) continue;
    std::uint32_t n = 0;
    std::uint64_t r = q;
    while (r % p == 0) r /= p, ++n;
    return r == 1 ? std::make_pair(p, n) : std::make_pair(0u, 0u);
  }
  return q >= 2 ? std::make_pair(std::uint32_t(q), 1u) : std::make_pair(0u, 0u);
}

inline void poly_trim(std::vector<std::uint32_t>& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::vector<std::uint32_t> poly_mul(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b,
                                           std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint32_t> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = std::uint32_t((out[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  poly_trim(out);
  return out;
}

/// Remainder of a mod b over GF(p); b must be monic.
inline std::vector<std::uint32_t> poly_rem(std::vector<std::uint32_t> a,
                                           const std::vector<std::uint32_t>& b,
                                           std::uint32_t p) {
  poly_trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t c = a.back();
    const std::size_t shift = a.size() - 1 - db;
    if (c != 0)
      for (std::size_t i = 0; i < db; ++i) {
        const std::uint64_t t = std::uint64_t(b[i]) * c % p;
        a[shift + i] = std::uint32_t((a[shift + i] + p - t) % p);
      }
    a.pop_back();
  }
  poly_trim(a);
  return a;
}

/// Irreducibility of a monic f over GF(p) by trial division against every
/// monic polynomial of degree 1..deg(f)/2.
inline bool poly_irreducible(const std::vector<std::uint32_t>& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  if (n == 0) return false;
  for (std::size_t d = 1; 2 * d <= n; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<std::uint32_t> g(d + 1, 0);
      g[d] = 1;
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) g[i] = std::uint32_t(c % p), c /= p;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

inline std::uint32_t mod_pow(std::uint64_t base, std::uint64_t e, std::uint32_t mod) {
  std::uint64_t acc = 1 % mod;
  base %= mod;
  for (; e; e >>= 1) {
    if (e & 1) acc = acc * base % mod;
    base = base * base % mod;
  }
  return std::uint32_t(acc);
}

inline std::uint32_t smallest_primitive_root(std::uint32_t p) {
  if (p == 2) return 1;
  std::vector<std::uint32_t> prime_factors;
  std::uint32_t m = p - 1;
  for (std::uint32_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      prime_factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) prime_factors.push_back(m);
  for (std::uint32_t g = 2; g < p; ++g) {
    bool ok = true;
    for (std::uint32_t r : prime_factors)
      if (mod_pow(g, (p - 1) / r, p) == 1) { ok = false; break; }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

/// Built-in irreducible moduli (Conway polynomials, constant term first) for
/// the extension fields of order <= 256. Degree-1 defaults are x - g with g
/// the smallest primitive root mod p.
inline std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t n) {
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (n == 0) throw std::invalid_argument("extension degree must be >= 1");
  if (n == 1) {
    const std::uint32_t g = smallest_primitive_root(p);
    return {(p - g) % p, 1};
  }
  struct Entry {
    std::uint32_t p, n;
    std::vector<std::uint32_t> coeffs;
  };
  static const std::vector<Entry> table = {
      {2, 2, {1, 1, 1}},
      {2, 3, {1, 1, 0, 1}},
      {2, 4, {1, 1, 0, 0, 1}},
      {2, 5, {1, 0, 1, 0, 0, 1}},
      {2, 6, {1, 1, 0, 1, 1, 0, 1}},
      {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
      {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {3, 2, {2, 2, 1}},
      {3, 3, {1, 2, 0, 1}},
      {3, 4, {2, 0, 0, 2, 1}},
      {3, 5, {1, 2, 0, 0, 0, 1}},
      {5, 2, {2, 4, 1}},
      {5, 3, {3, 3, 0, 1}},
      {7, 2, {3, 6, 1}},
      {11, 2, {2, 7, 1}},
      {13, 2, {2, 12, 1}},
  };
  for (const auto& e : table)
    if (e.p == p && e.n == n) return e.coeffs;
  throw std::invalid_argument("no built-in modulus for GF(" + std::to_string(p) + "^" +
                              std::to_string(n) + "); supply one explicitly");
}

}  // namespace detail

/// Exact arithmetic in GF(q) = GF(p^n) = GF(p)[x]/(modulus). All operation
/// tables are precomputed at construction; the object is immutable afterwards
/// and safe to share across threads.
class GaloisField {
 public:
  static constexpr std::uint32_t kMaxOrder = 1024;

  GaloisField(std::uint32_t p, std::uint32_t n)
      : GaloisField(p, n, detail::default_modulus(p, n)) {}

  GaloisField(std::uint32_t p, std::uint32_t n, std::vector<std::uint32_t> modulus)
      : p_(p), n_(n) {
    if (!detail::is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    if (n == 0) throw std::invalid_argument("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      q *= p;
      if (q > kMaxOrder) throw std::invalid_argument("field order exceeds supported maximum");
    }
    q_ = std::uint32_t(q);
    if (modulus.size() != std::size_t(n) + 1)
      throw std::invalid_argument("modulus must have degree n = " + std::to_string(n));
    for (std::uint32_t c : modulus)
      if (c >= p) throw std::invalid_argument("modulus coefficients must lie in [0, p)");
    if (modulus.back() == 0)
      throw std::invalid_argument("modulus must have degree n = " + std::to_string(n));
    if (modulus.back() != 1) {
      const std::uint32_t lead_inv = detail::mod_pow(modulus.back(), p - 2, p);
      for (auto& c : modulus) c = std::uint32_t(std::uint64_t(c) * lead_inv % p);
    }
    if (!detail::poly_irreducible(modulus, p))
      throw std::invalid_argument("reducible modulus");
    modulus_ = std::move(modulus);
    build_tables();
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Fe zero() const { return {0}; }
  Fe one() const { return {1}; }

  Fe element(std::uint32_t code) const {
    if (code >= q_) throw std::out_of_range("element code out of range");
    return {std::uint16_t(code)};
  }

  /// All q elements in canonical order; index 0 is 0, index 1 is 1.
  std::vector<Fe> elements() const {
    std::vector<Fe> out(q_);
    for (std::uint32_t i = 0; i < q_; ++i) out[i] = {std::uint16_t(i)};
    return out;
  }

  Fe add(Fe a, Fe b) const { return {add_[idx(a, b)]}; }
  Fe sub(Fe a, Fe b) const { return {add_[idx(a, neg(b))]}; }
  Fe neg(Fe a) const { return {neg_[check(a).v]}; }
  Fe mul(Fe a, Fe b) const { return {mul_[idx(a, b)]}; }

  Fe inv(Fe a) const {
    if (check(a).v == 0) throw std::domain_error("zero has no inverse");
    return {inv_[a.v]};
  }

  Fe pow(Fe a, std::uint64_t e) const {
    Fe acc = one(), base = check(a);
    for (; e; e >>= 1) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
    }
    return acc;
  }

  bool is_zero(Fe a) const { return check(a).v == 0; }

  /// Smallest multiplicative generator of K*.
  Fe generator() const { return {gen_}; }

  std::vector<std::uint32_t> coeffs(Fe a) const {
    std::vector<std::uint32_t> c(n_);
    std::uint32_t v = check(a).v;
    for (std::uint32_t i = 0; i < n_; ++i) c[i] = v % p_, v /= p_;
    return c;
  }

  Fe from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (c.size() > n_) throw std::invalid_argument("too many coefficients");
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] >= p_) throw std::invalid_argument("coefficient out of range");
      v = v * p_ + c[i];
    }
    return {std::uint16_t(v)};
  }

  std::string to_string(Fe a) const {
    const auto c = coeffs(a);
    std::string out;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] == 0) continue;
      if (!out.empty()) out += "+";
      if (c[i] != 1 || i == 0) out += std::to_string(c[i]);
      if (i >= 1) out += "w";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  Fe check(Fe a) const {
    if (a.v >= q_) throw std::out_of_range("element code out of range");
    return a;
  }

  std::size_t idx(Fe a, Fe b) const { return std::size_t(check(a).v) * q_ + check(b).v; }

  void build_tables() {
    add_.resize(std::size_t(q_) * q_);
    mul_.resize(std::size_t(q_) * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    std::vector<std::vector<std::uint32_t>> rep(q_);
    for (std::uint32_t v = 0; v < q_; ++v) {
      rep[v].resize(n_);
      std::uint32_t t = v;
      for (std::uint32_t i = 0; i < n_; ++i) rep[v][i] = t % p_, t /= p_;
    }
    auto encode = [&](const std::vector<std::uint32_t>& c) {
      std::uint32_t v = 0;
      for (std::size_t i = c.size(); i-- > 0;) v = v * p_ + c[i];
      return std::uint16_t(v);
    };
    for (std::uint32_t a = 0; a < q_; ++a) {
      std::vector<std::uint32_t> nc(n_);
      for (std::uint32_t i = 0; i < n_; ++i) nc[i] = (p_ - rep[a][i]) % p_;
      neg_[a] = encode(nc);
      for (std::uint32_t b = 0; b < q_; ++b) {
        std::vector<std::uint32_t> sc(n_);
        for (std::uint32_t i = 0; i < n_; ++i) sc[i] = (rep[a][i] + rep[b][i]) % p_;
        add_[std::size_t(a) * q_ + b] = encode(sc);
        auto prod = detail::poly_rem(detail::poly_mul(rep[a], rep[b], p_), modulus_, p_);
        prod.resize(n_, 0);
        mul_[std::size_t(a) * q_ + b] = encode(prod);
      }
    }
    for (std::uint32_t a = 1; a < q_; ++a)
      for (std::uint32_t b = 1; b < q_; ++b)
        if (mul_[std::size_t(a) * q_ + b] == 1) { inv_[a] = std::uint16_t(b); break; }
    gen_ = 1;
    for (std::uint32_t g = 1; g < q_; ++g) {
      std::uint32_t ord = 1;
      Fe x{std::uint16_t(g)};
      Fe acc = x;
      while (acc.v != 1) acc = mul(acc, x), ++ord;
      if (ord == q_ - 1) { gen_ = std::uint16_t(g); break; }
    }
  }

  std::uint32_t p_, n_, q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint16_t> add_, mul_, neg_, inv_;
  std::uint16_t gen_ = 1;
};

/// The field automorphism sigma: x -> x^m of GF(q), q a power of m. Fix(sigma)
/// is the subfield GF(m); the fixed-point count is checked at construction.
/// Represented by the exponent m with an internal permutation table.
class FrobeniusAut {
 public:
  FrobeniusAut(const GaloisField& gf, std::uint32_t m) : m_(m), q_(gf.q()) {
    if (m < 2) throw std::invalid_argument("automorphism exponent must be >= 2");
    std::uint32_t r = m;
    while (r % gf.p() == 0) r /= gf.p();
    if (r != 1) throw std::invalid_argument("m must be a power of p");
    std::uint64_t t = m;
    h_ = 1;
    while (t < q_) t *= m, ++h_;
    if (t != q_) throw std::invalid_argument("q must be a power of m");
    table_.resize(q_);
    std::uint32_t fixed = 0;
    for (std::uint32_t v = 0; v < q_; ++v) {
      table_[v] = gf.pow({std::uint16_t(v)}, m);
      if (table_[v].v == v) ++fixed;
    }
    if (fixed != m) throw std::logic_error("Fix(sigma) does not have m elements");
  }

  std::uint32_t m() const { return m_; }
  std::uint32_t fixed_field_order() const { return m_; }
  /// Smallest h with sigma^h = id (q = m^h).
  std::uint32_t order() const { return h_; }
  bool is_identity() const { return m_ == q_; }

  Fe apply(Fe a) const {
    if (a.v >= q_) throw std::out_of_range("element code out of range");
    return table_[a.v];
  }

  bool fixes(Fe a) const { return apply(a) == a; }

  /// a * a^sigma, asserted to land in the fixed field (true whenever
  /// sigma^2 = id, the case the Baer-subspace check uses).
  Fe norm(const GaloisField& gf, Fe a) const {
    const Fe r = gf.mul(a, apply(a));
    if (!fixes(r)) throw std::logic_error("norm value not in fixed field");
    return r;
  }

 private:
  std::uint32_t m_, q_, h_;
  std::vector<Fe> table_;
};

}  // namespace ddforge
