#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ddforge/field.hpp"

namespace ddforge {

template <std::size_t N>
using VecN = std::array<Fe, N>;

template <std::size_t N>
struct VecNHash {
  std::size_t operator()(const VecN<N>& v) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (const Fe x : v) h = (h ^ x.v) * 0x100000001b3ull;
    return h;
  }
};

/// Scales a nonzero vector so its first nonzero coordinate is 1; the unique
/// representative of the projective point K*v.
template <std::size_t N>
VecN<N> canonical_projective(const GaloisField& gf, VecN<N> v) {
  for (std::size_t i = 0; i < N; ++i)
    if (!gf.is_zero(v[i])) {
      const Fe s = gf.inv(v[i]);
      for (std::size_t j = i; j < N; ++j) v[j] = gf.mul(s, v[j]);
      return v;
    }
  throw std::invalid_argument("zero vector has no projective representative");
}

/// Subspace of K^N kept as a row-reduced echelon basis, so equal subspaces
/// have identical bases. Ranks decide all dimension claims downstream.
template <std::size_t N>
class RowSpace {
 public:
  explicit RowSpace(const GaloisField& gf) : gf_(&gf) {}

  /// Reduces v against the basis; adds it if independent. Returns whether the
  /// dimension grew.
  bool insert(VecN<N> v) {
    reduce(v);
    std::size_t pivot = N;
    for (std::size_t i = 0; i < N; ++i)
      if (!gf_->is_zero(v[i])) { pivot = i; break; }
    if (pivot == N) return false;
    const Fe s = gf_->inv(v[pivot]);
    for (std::size_t i = pivot; i < N; ++i) v[i] = gf_->mul(s, v[i]);
    for (std::size_t r = 0; r < rows_.size(); ++r) eliminate(rows_[r], v, pivot);
    std::size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < pivot) ++at;
    rows_.insert(rows_.begin() + at, v);
    pivots_.insert(pivots_.begin() + at, pivot);
    return true;
  }

  std::size_t dim() const { return rows_.size(); }

  bool contains(VecN<N> v) const {
    reduce(v);
    for (std::size_t i = 0; i < N; ++i)
      if (!gf_->is_zero(v[i])) return false;
    return true;
  }

  const std::vector<VecN<N>>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Flat, canonical key of the subspace (dimension, then basis codes).
  std::vector<std::uint16_t> signature() const {
    std::vector<std::uint16_t> out{std::uint16_t(rows_.size())};
    for (const auto& row : rows_)
      for (const Fe x : row) out.push_back(x.v);
    return out;
  }

  /// Basis of {x : B x = 0} for the row matrix B, via the free columns of
  /// the echelon form.
  std::vector<VecN<N>> null_space() const {
    std::vector<VecN<N>> out;
    std::vector<bool> is_pivot(N, false);
    for (const std::size_t p : pivots_) is_pivot[p] = true;
    for (std::size_t f = 0; f < N; ++f) {
      if (is_pivot[f]) continue;
      VecN<N> v{};
      v[f] = gf_->one();
      for (std::size_t r = 0; r < rows_.size(); ++r) v[pivots_[r]] = gf_->neg(rows_[r][f]);
      out.push_back(v);
    }
    return out;
  }

 private:
  void reduce(VecN<N>& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) eliminate(v, rows_[r], pivots_[r]);
  }

  void eliminate(VecN<N>& target, const VecN<N>& row, std::size_t pivot) const {
    const Fe c = target[pivot];
    if (gf_->is_zero(c)) return;
    for (std::size_t i = 0; i < N; ++i)
      target[i] = gf_->sub(target[i], gf_->mul(c, row[i]));
  }

  const GaloisField* gf_;
  std::vector<VecN<N>> rows_;
  std::vector<std::size_t> pivots_;
};

template <std::size_t N>
RowSpace<N> span_of(const GaloisField& gf, const std::vector<VecN<N>>& vectors) {
  RowSpace<N> space(gf);
  for (const auto& v : vectors) space.insert(v);
  return space;
}

/// All (q^d - 1)/(q - 1) projective points of the span of an independent
/// basis, as canonical representatives in deterministic order: coefficient
/// vectors with leading coefficient 1, enumerated by leading position then
/// code of the tail.
template <std::size_t N>
std::vector<VecN<N>> projective_points_of_span(const GaloisField& gf,
                                               const std::vector<VecN<N>>& basis) {
  const std::uint32_t q = gf.q();
  const std::size_t d = basis.size();
  std::vector<VecN<N>> out;
  std::vector<Fe> coeff(d);
  for (std::size_t lead = 0; lead < d; ++lead) {
    const std::size_t free = d - lead - 1;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < free; ++i) count *= q;
    for (std::uint64_t code = 0; code < count; ++code) {
      for (std::size_t i = 0; i < lead; ++i) coeff[i] = gf.zero();
      coeff[lead] = gf.one();
      std::uint64_t c = code;
      for (std::size_t i = lead + 1; i < d; ++i) coeff[i] = gf.element(std::uint32_t(c % q)), c /= q;
      VecN<N> v{};
      for (std::size_t i = lead; i < d; ++i)
        for (std::size_t j = 0; j < N; ++j) v[j] = gf.add(v[j], gf.mul(coeff[i], basis[i][j]));
      out.push_back(canonical_projective(gf, v));
    }
  }
  return out;
}

template <std::size_t N>
using MatN = std::array<VecN<N>, N>;

template <std::size_t N>
VecN<N> mat_vec(const GaloisField& gf, const MatN<N>& m, const VecN<N>& v) {
  VecN<N> out{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out[i] = gf.add(out[i], gf.mul(m[i][j], v[j]));
  return out;
}

template <std::size_t N>
MatN<N> mat_mul(const GaloisField& gf, const MatN<N>& a, const MatN<N>& b) {
  MatN<N> out{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t j = 0; j < N; ++j)
        out[i][j] = gf.add(out[i][j], gf.mul(a[i][k], b[k][j]));
  return out;
}

template <std::size_t N>
MatN<N> mat_transpose(const MatN<N>& m) {
  MatN<N> out{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out[j][i] = m[i][j];
  return out;
}

/// Gauss-Jordan inverse; nullopt when singular.
template <std::size_t N>
std::optional<MatN<N>> mat_inverse(const GaloisField& gf, MatN<N> m) {
  MatN<N> inv{};
  for (std::size_t i = 0; i < N; ++i) inv[i][i] = gf.one();
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t pivot = N;
    for (std::size_t r = col; r < N; ++r)
      if (!gf.is_zero(m[r][col])) { pivot = r; break; }
    if (pivot == N) return std::nullopt;
    std::swap(m[col], m[pivot]);
    std::swap(inv[col], inv[pivot]);
    const Fe s = gf.inv(m[col][col]);
    for (std::size_t j = 0; j < N; ++j) m[col][j] = gf.mul(s, m[col][j]), inv[col][j] = gf.mul(s, inv[col][j]);
    for (std::size_t r = 0; r < N; ++r) {
      if (r == col) continue;
      const Fe c = m[r][col];
      if (gf.is_zero(c)) continue;
      for (std::size_t j = 0; j < N; ++j) {
        m[r][j] = gf.sub(m[r][j], gf.mul(c, m[col][j]));
        inv[r][j] = gf.sub(inv[r][j], gf.mul(c, inv[col][j]));
      }
    }
  }
  return inv;
}

}  // namespace ddforge
