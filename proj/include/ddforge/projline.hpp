#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ddforge/ring.hpp"

namespace ddforge {

enum class PointKind : std::uint8_t { Affine, Ideal };

/// Point of P(R) in canonical form: Affine x stands for R(x,1), Ideal z for
/// R(1,z) with z in the ideal I.
struct ProjPoint {
  PointKind kind;
  Re coord;
  constexpr auto operator<=>(const ProjPoint&) const = default;
};

/// 2x2 matrix over R, row-major. Used as an element of GL_2(R) after an
/// invertibility check.
struct Mat2 {
  std::array<std::array<Re, 2>, 2> m{};
  constexpr auto operator<=>(const Mat2&) const = default;
};

/// The projective line P(R) over the twisted dual numbers, its parallelism,
/// and the right action of GL_2(R) on it. Points are indexed densely:
/// the q^2 affine points first (by ring-element order of the coordinate),
/// then the q ideal points (by order of the eps-part).
class ProjectiveLine {
 public:
  explicit ProjectiveLine(TwistedDualRing ring) : ring_(std::move(ring)) {}

  const TwistedDualRing& ring() const { return ring_; }
  const GaloisField& field() const { return ring_.field(); }
  std::uint32_t q() const { return ring_.q(); }

  /// v = q^2 + q.
  std::uint32_t v() const { return ring_.size() + q(); }
  std::uint32_t num_classes() const { return q() + 1; }
  std::uint32_t class_size() const { return q(); }

  ProjPoint point(std::uint32_t idx) const {
    const std::uint32_t q2 = ring_.size();
    if (idx < q2) return {PointKind::Affine, ring_.element(idx)};
    if (idx < v()) return {PointKind::Ideal, ring_.make(field().zero(), field().element(idx - q2))};
    throw std::out_of_range("point index out of range");
  }

  std::uint32_t index(const ProjPoint& p) const {
    if (p.kind == PointKind::Affine) return ring_.code(p.coord);
    if (!ring_.in_ideal(p.coord)) throw std::invalid_argument("ideal point coordinate not in I");
    return ring_.size() + p.coord.b.v;
  }

  /// R(1,0), R(0,1) and R(1,1) as point indices.
  std::uint32_t infinity() const { return ring_.size(); }
  std::uint32_t zero() const { return 0; }
  std::uint32_t one() const { return ring_.code(ring_.one()); }

  /// Admissible representative pair of a point: (x,1) for Affine x,
  /// (1,z) for Ideal z.
  std::pair<Re, Re> representative(std::uint32_t idx) const {
    const ProjPoint p = point(idx);
    if (p.kind == PointKind::Affine) return {p.coord, ring_.one()};
    return {ring_.one(), p.coord};
  }

  /// Left-scales an admissible pair (a,b) to its canonical form: by b^-1 if b
  /// is a unit (affine), else by a^-1 (ideal). Throws when both entries lie
  /// in I, i.e. the pair is not a point of P(R).
  ProjPoint canonicalize(Re a, Re b) const {
    if (ring_.is_unit(b)) return {PointKind::Affine, ring_.mul(ring_.inv(b), a)};
    if (ring_.is_unit(a)) return {PointKind::Ideal, ring_.mul(ring_.inv(a), b)};
    throw std::invalid_argument("pair is not unimodular");
  }

  /// Parallel class id: the scalar part of an affine coordinate (0..q-1),
  /// q for the ideal class. Two points are parallel iff their class ids agree.
  std::uint32_t parallel_class_of(std::uint32_t idx) const {
    const ProjPoint p = point(idx);
    return p.kind == PointKind::Affine ? p.coord.a.v : q();
  }

  bool parallel(std::uint32_t i, std::uint32_t j) const {
    return parallel_class_of(i) == parallel_class_of(j);
  }

  /// Parallelism straight from the definition: the representative rows do
  /// not form an invertible matrix. Used to cross-check the explicit rule.
  bool parallel_by_determinant(std::uint32_t i, std::uint32_t j) const {
    const auto [a, b] = representative(i);
    const auto [c, d] = representative(j);
    Mat2 g;
    g.m = {{{a, b}, {c, d}}};
    return !is_invertible(g);
  }

  const std::vector<std::vector<std::uint32_t>>& parallel_classes() const {
    if (classes_.empty()) {
      classes_.assign(num_classes(), {});
      for (std::uint32_t i = 0; i < v(); ++i) classes_[parallel_class_of(i)].push_back(i);
    }
    return classes_;
  }

  /// Residue-field criterion: over the local ring R, g is invertible iff its
  /// image mod I is invertible over K.
  bool is_invertible(const Mat2& g) const {
    const GaloisField& k = field();
    const Fe det = k.sub(k.mul(g.m[0][0].a, g.m[1][1].a), k.mul(g.m[0][1].a, g.m[1][0].a));
    return !k.is_zero(det);
  }

  Mat2 mul(const Mat2& x, const Mat2& y) const {
    Mat2 out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        out.m[i][j] = ring_.add(ring_.mul(x.m[i][0], y.m[0][j]), ring_.mul(x.m[i][1], y.m[1][j]));
    return out;
  }

  Mat2 identity() const {
    Mat2 g;
    g.m = {{{ring_.one(), ring_.zero()}, {ring_.zero(), ring_.one()}}};
    return g;
  }

  /// Two-sided inverse over the (noncommutative) ring, via a row swap to get
  /// a unit pivot and the 1x1 Schur complement. Both products are checked.
  std::optional<Mat2> try_invert(const Mat2& g) const {
    if (!is_invertible(g)) return std::nullopt;
    const bool swap = !ring_.is_unit(g.m[0][0]);
    Mat2 base = g;
    if (swap) std::swap(base.m[0], base.m[1]);
    const Re a = base.m[0][0], b = base.m[0][1], c = base.m[1][0], d = base.m[1][1];
    const Re ai = ring_.inv(a);
    const Re s = ring_.sub(d, ring_.mul(ring_.mul(c, ai), b));
    if (!ring_.is_unit(s)) return std::nullopt;
    const Re si = ring_.inv(s);
    Mat2 inv;
    inv.m[0][0] = ring_.add(ai, ring_.mul(ring_.mul(ring_.mul(ring_.mul(ai, b), si), c), ai));
    inv.m[0][1] = ring_.neg(ring_.mul(ring_.mul(ai, b), si));
    inv.m[1][0] = ring_.neg(ring_.mul(ring_.mul(si, c), ai));
    inv.m[1][1] = si;
    if (swap) {
      // g = P * base with P the row swap, so g^-1 = base^-1 * P (a column swap).
      for (int i = 0; i < 2; ++i) std::swap(inv.m[i][0], inv.m[i][1]);
    }
    if (mul(g, inv) != identity() || mul(inv, g) != identity())
      throw std::logic_error("matrix inversion failed");
    return inv;
  }

  Mat2 invert(const Mat2& g) const {
    auto inv = try_invert(g);
    if (!inv) throw std::domain_error("matrix is not invertible");
    return *inv;
  }

  /// Right action: a representative row (a,b) of p maps to (a,b)*g, then
  /// canonicalize. Satisfies act(g*h, p) = act(h, act(g, p)).
  std::uint32_t act(const Mat2& g, std::uint32_t idx) const {
    if (!is_invertible(g)) throw std::domain_error("matrix is not invertible");
    return act_unchecked(g, idx);
  }

  /// Point permutation table of an invertible g.
  std::vector<std::uint32_t> permutation(const Mat2& g) const {
    if (!is_invertible(g)) throw std::domain_error("matrix is not invertible");
    std::vector<std::uint32_t> perm(v());
    for (std::uint32_t i = 0; i < v(); ++i) perm[i] = act_unchecked(g, i);
    return perm;
  }

  /// g in GL_2(R) with act(g, infinity) = p1, act(g, 0) = p2, act(g, 1) = p3,
  /// built by solving (a3,b3) = lambda*(a1,b1) + mu*(a2,b2) over R and taking
  /// rows lambda*(a1,b1), mu*(a2,b2). Throws when the triple has a parallel
  /// pair. The postcondition is checked by applying the action.
  Mat2 map_standard_triple(std::uint32_t p1, std::uint32_t p2, std::uint32_t p3) const {
    const auto [a1, b1] = representative(p1);
    const auto [a2, b2] = representative(p2);
    const auto [a3, b3] = representative(p3);
    Mat2 m12;
    m12.m = {{{a1, b1}, {a2, b2}}};
    const auto m12_inv = try_invert(m12);
    if (!m12_inv) throw std::invalid_argument("triple contains parallel points");
    // (lambda, mu) = (a3, b3) * m12^-1.
    const Re lambda = ring_.add(ring_.mul(a3, m12_inv->m[0][0]), ring_.mul(b3, m12_inv->m[1][0]));
    const Re mu = ring_.add(ring_.mul(a3, m12_inv->m[0][1]), ring_.mul(b3, m12_inv->m[1][1]));
    if (!ring_.is_unit(lambda) || !ring_.is_unit(mu))
      throw std::invalid_argument("triple contains parallel points");
    Mat2 g;
    g.m[0][0] = ring_.mul(lambda, a1);
    g.m[0][1] = ring_.mul(lambda, b1);
    g.m[1][0] = ring_.mul(mu, a2);
    g.m[1][1] = ring_.mul(mu, b2);
    if (act(g, infinity()) != p1 || act(g, zero()) != p2 || act(g, one()) != p3)
      throw std::logic_error("standard triple mapping failed");
    return g;
  }

 private:
  std::uint32_t act_unchecked(const Mat2& g, std::uint32_t idx) const {
    const auto [a, b] = representative(idx);
    const Re x = ring_.add(ring_.mul(a, g.m[0][0]), ring_.mul(b, g.m[1][0]));
    const Re y = ring_.add(ring_.mul(a, g.m[0][1]), ring_.mul(b, g.m[1][1]));
    return index(canonicalize(x, y));
  }

  TwistedDualRing ring_;
  mutable std::vector<std::vector<std::uint32_t>> classes_;
};

/// Test oracle: decides invertibility by searching R^2 for each column of a
/// right inverse of g and checking the assembled matrix from the left too.
/// Equivalent to scanning all candidate inverse matrices, organized per
/// column. Quadratic in |R|, test use only.
inline bool invertible_by_exhaustive_search(const ProjectiveLine& line, const Mat2& g) {
  const TwistedDualRing& r = line.ring();
  const std::uint32_t n = r.size();
  std::array<std::array<Re, 2>, 2> cols;  // columns of the right inverse
  for (int col = 0; col < 2; ++col) {
    const Re target0 = col == 0 ? r.one() : r.zero();
    const Re target1 = col == 0 ? r.zero() : r.one();
    bool found = false;
    for (std::uint32_t i = 0; i < n && !found; ++i)
      for (std::uint32_t j = 0; j < n && !found; ++j) {
        const Re x = r.element(i), y = r.element(j);
        if (r.add(r.mul(g.m[0][0], x), r.mul(g.m[0][1], y)) == target0 &&
            r.add(r.mul(g.m[1][0], x), r.mul(g.m[1][1], y)) == target1) {
          cols[col] = {x, y};
          found = true;
        }
      }
    if (!found) return false;
  }
  Mat2 h;
  h.m = {{{cols[0][0], cols[1][0]}, {cols[0][1], cols[1][1]}}};
  return line.mul(h, g) == line.identity();
}

}  // namespace ddforge
