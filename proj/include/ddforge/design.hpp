#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ddforge/parallel.hpp"
#include "ddforge/projline.hpp"
#include "ddforge/report.hpp"

namespace ddforge {

/// Block of the design: sorted vector of point indices.
using Block = std::vector<std::uint16_t>;

struct BlockHash {
  std::size_t operator()(const Block& b) const {
    std::size_t h = 0xcbf29ce484222325ull;  // FNV-1a
    for (const std::uint16_t x : b) h = (h ^ x) * 0x100000001b3ull;
    return h;
  }
};

/// Reduced fraction with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool is_integer() const { return den == 1; }
  constexpr auto operator<=>(const Rational&) const = default;
};

namespace detail {

inline Rational make_rational(__int128 num, __int128 den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) num = -num, den = -den;
  __int128 a = num < 0 ? -num : num, b = den;
  while (b) { const __int128 t = a % b; a = b; b = t; }
  if (a) num /= a, den /= a;
  if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
    throw std::overflow_error("rational out of range");
  return {std::int64_t(num), std::int64_t(den)};
}

}  // namespace detail

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > INT64_MAX) throw std::overflow_error("binomial overflow");
  }
  return std::uint64_t(r);
}

/// Spera's parameter formula for an orbit design:
/// lambda_t = |G|/|G_B0| * C(k,t) / (C(v/s,t) * s^t), evaluated exactly.
/// A non-integral result signals inconsistent inputs; callers inspect
/// is_integer().
inline Rational spera_lambda(std::uint64_t order_g, std::uint64_t order_stab, std::uint64_t v,
                             std::uint64_t s, std::uint64_t k, std::uint64_t t) {
  if (order_g == 0 || order_stab == 0 || v == 0 || s == 0 || k == 0 || t == 0)
    throw std::invalid_argument("spera_lambda arguments must be positive");
  if (v % s != 0) throw std::invalid_argument("s must divide v");
  if (t > k) throw std::invalid_argument("t must not exceed k");
  __int128 num = __int128(order_g) * binomial(k, t);
  __int128 den = __int128(order_stab) * binomial(v / s, t);
  for (std::uint64_t i = 0; i < t; ++i) den *= s;
  return detail::make_rational(num, den);
}

/// Transversal special case: lambda_3 = b / s^3 with b = |G|/|G_B0|.
inline Rational lambda3_transversal(std::uint64_t block_count, std::uint64_t s) {
  return detail::make_rational(__int128(block_count), __int128(s) * s * s);
}

/// A generating set of GL_2(R): the four transvections with off-diagonal
/// entry 1 or eps, diag(g,1) for g a multiplicative generator of K*, and
/// diag(1+c*eps,1) for c running over a GF(p)-basis of K. The set is
/// heuristic; its correctness is certified downstream by the orbit closure
/// count and, for q <= 4, by the all-matrices oracle.
inline std::vector<Mat2> group_generators(const ProjectiveLine& line) {
  const TwistedDualRing& r = line.ring();
  const GaloisField& k = line.field();
  std::vector<Mat2> gens;
  auto push = [&](Re a, Re b, Re c, Re d) {
    Mat2 g;
    g.m[0][0] = a, g.m[0][1] = b, g.m[1][0] = c, g.m[1][1] = d;
    gens.push_back(g);
  };
  for (const Re off : {r.one(), r.eps()}) {
    push(r.one(), off, r.zero(), r.one());
    push(r.one(), r.zero(), off, r.one());
  }
  if (k.q() > 2) push(r.scalar(k.generator()), r.zero(), r.zero(), r.one());
  std::uint32_t basis = 1;
  for (std::uint32_t i = 0; i < k.n(); ++i, basis *= k.p())
    push(r.make(k.one(), k.element(basis)), r.zero(), r.zero(), r.one());
  for (const Mat2& g : gens)
    if (!line.is_invertible(g)) throw std::logic_error("generator not invertible");
  return gens;
}

/// Breadth-first closure of a base block under a generator set: apply each
/// generator point-wise, sort, deduplicate, until fixpoint. The returned
/// block list is sorted, so the output is deterministic.
inline std::vector<Block> orbit_blocks(const ProjectiveLine& line, const Block& base,
                                       const std::vector<Mat2>& gens) {
  std::vector<std::vector<std::uint32_t>> perms;
  perms.reserve(gens.size());
  for (const Mat2& g : gens) perms.push_back(line.permutation(g));

  std::unordered_set<Block, BlockHash> known;
  Block start = base;
  std::sort(start.begin(), start.end());
  known.insert(start);
  std::vector<Block> frontier{start};
  while (!frontier.empty()) {
    std::vector<std::vector<Block>> produced(worker_count());
    parallel_chunks(frontier.size(), [&](std::size_t chunk, std::size_t begin, std::size_t end) {
      auto& out = produced[chunk];
      for (std::size_t i = begin; i < end; ++i)
        for (const auto& perm : perms) {
          Block img(frontier[i].size());
          for (std::size_t j = 0; j < img.size(); ++j)
            img[j] = std::uint16_t(perm[frontier[i][j]]);
          std::sort(img.begin(), img.end());
          out.push_back(std::move(img));
        }
    });
    std::vector<Block> next;
    for (auto& chunk : produced)
      for (auto& img : chunk)
        if (known.insert(img).second) next.push_back(std::move(img));
    frontier = std::move(next);
  }
  std::vector<Block> blocks(known.begin(), known.end());
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

struct OracleResult {
  std::vector<Block> blocks;
  std::uint64_t invertible_count = 0;
};

/// Brute-force block set: every invertible 2x2 matrix over R applied to the
/// base block. |R|^4 matrices, so the guard refuses q > 4.
inline OracleResult exhaustive_blocks_oracle(const ProjectiveLine& line) {
  const TwistedDualRing& r = line.ring();
  if (r.q() > 4) throw std::invalid_argument("exhaustive block oracle is limited to q <= 4");
  const std::uint64_t n = r.size();
  Block base;
  for (std::uint32_t x = 0; x < r.q(); ++x)
    base.push_back(std::uint16_t(line.index({PointKind::Affine, r.scalar(line.field().element(x))})));
  base.push_back(std::uint16_t(line.infinity()));
  std::sort(base.begin(), base.end());

  OracleResult result;
  std::unordered_set<Block, BlockHash> seen;
  for (std::uint64_t code = 0; code < n * n * n * n; ++code) {
    Mat2 g;
    std::uint64_t c = code;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g.m[i][j] = r.element(std::uint32_t(c % n)), c /= n;
    if (!line.is_invertible(g)) continue;
    ++result.invertible_count;
    Block img;
    img.reserve(base.size());
    for (const std::uint16_t p : base) img.push_back(std::uint16_t(line.act(g, p)));
    std::sort(img.begin(), img.end());
    seen.insert(std::move(img));
  }
  result.blocks.assign(seen.begin(), seen.end());
  std::sort(result.blocks.begin(), result.blocks.end());
  return result;
}

/// Result of the divisible-design axiom check.
struct DesignVerification {
  std::uint32_t t = 0;
  std::uint64_t lambda_min = 0, lambda_max = 0;
  std::uint64_t tuples_checked = 0;
  bool sampled = false;
  CheckReport report;
  double seconds = 0;
  bool ok() const { return report.all_pass(); }
};

struct TraceResult {
  Block trace;
  Mat2 witness;  ///< maps (infinity, 0, 1) to the triple; trace = P(F)^witness
};

/// The chain geometry Sigma = (P, B, ||): the orbit of P(K) under GL_2(R),
/// with verification queries against the stored block set. Blocks are kept
/// sorted; a per-point inverted index answers containment queries.
class ChainDesign {
 public:
  /// Builds the block set as the orbit of the base block and certifies the
  /// closure count (q^4 when sigma != id, q^3 when sigma = id).
  static ChainDesign generate(const ProjectiveLine& line) {
    ChainDesign d(line, orbit_blocks(line, base_block(line), group_generators(line)));
    const std::uint64_t q = line.q();
    const std::uint64_t expected = line.ring().sigma().is_identity() ? q * q * q : q * q * q * q;
    if (d.blocks().size() != expected)
      throw std::logic_error("orbit closure count does not match the design block count");
    return d;
  }

  /// Wraps an externally supplied block set (e.g. parsed from a design file).
  /// Indices are bounds-checked and each block is sorted; every axiom is left
  /// to verify().
  ChainDesign(ProjectiveLine line, std::vector<Block> blocks)
      : line_(std::move(line)), blocks_(std::move(blocks)) {
    for (auto& b : blocks_) {
      std::sort(b.begin(), b.end());
      for (const std::uint16_t p : b)
        if (p >= line_.v()) throw std::invalid_argument("block contains an out-of-range point index");
    }
    std::sort(blocks_.begin(), blocks_.end());
    postings_.assign(line_.v(), {});
    for (std::uint32_t id = 0; id < blocks_.size(); ++id)
      for (const std::uint16_t p : blocks_[id]) postings_[p].push_back(id);
  }

  const ProjectiveLine& line() const { return line_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const std::vector<std::uint32_t>& blocks_of_point(std::uint32_t p) const {
    return postings_.at(p);
  }

  std::uint32_t v() const { return line_.v(); }
  std::uint32_t s() const { return line_.class_size(); }
  std::uint32_t k() const { return line_.q() + 1; }

  /// lambda_3 from the transversal form of Spera's formula, b / s^3.
  std::uint64_t lambda3() const {
    const Rational r = lambda3_transversal(blocks_.size(), s());
    if (!r.is_integer()) throw std::domain_error("block count is not divisible by s^3");
    return std::uint64_t(r.num);
  }

  /// B0 = P(K): the affine points with coordinate in K, plus R(1,0).
  static Block base_block(const ProjectiveLine& line) {
    Block base;
    for (std::uint32_t x = 0; x < line.q(); ++x) {
      const ProjPoint p{PointKind::Affine, line.ring().scalar(line.field().element(x))};
      base.push_back(std::uint16_t(line.index(p)));
    }
    base.push_back(std::uint16_t(line.infinity()));
    std::sort(base.begin(), base.end());
    for (std::size_t i = 0; i < base.size(); ++i)
      for (std::size_t j = i + 1; j < base.size(); ++j)
        if (line.parallel(base[i], base[j])) throw std::logic_error("base block has parallel points");
    return base;
  }

  Block base_block() const { return base_block(line_); }

  /// Ids of all blocks containing every point of pts.
  std::vector<std::uint32_t> blocks_through(std::span<const std::uint32_t> pts) const {
    if (pts.empty()) throw std::invalid_argument("empty point set");
    std::vector<std::uint32_t> acc = postings_[pts[0]];
    for (std::size_t i = 1; i < pts.size() && !acc.empty(); ++i)
      acc = intersect(acc, postings_[pts[i]]);
    return acc;
  }

  /// Complete (or seeded-sample) check of the four DD axioms; lambda_t is
  /// reported as the [min,max] interval over the enumerated t-sets of
  /// pairwise non-parallel points.
  DesignVerification verify(std::uint32_t t, bool exhaustive = true, std::uint64_t seed = 0,
                            std::uint64_t samples = 20000) const {
    if (t == 0) throw std::invalid_argument("t must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    DesignVerification res;
    res.t = t;
    res.report.title = "divisible design axioms (t = " + std::to_string(t) + ")";

    const auto& classes = line_.parallel_classes();
    bool class_sizes_ok = true;
    for (const auto& c : classes) class_sizes_ok = class_sizes_ok && c.size() == s();
    res.report.add("parallel-class-size", class_sizes_ok,
                   "every parallel class has s = " + std::to_string(s()) + " points");

    bool sizes_ok = true, nonparallel_ok = true, transversal_ok = true;
    for (const auto& b : blocks_) {
      sizes_ok = sizes_ok && b.size() == k();
      std::vector<std::uint32_t> cls;
      for (const std::uint16_t p : b) cls.push_back(line_.parallel_class_of(p));
      std::sort(cls.begin(), cls.end());
      const bool distinct = std::adjacent_find(cls.begin(), cls.end()) == cls.end();
      nonparallel_ok = nonparallel_ok && distinct;
      transversal_ok = transversal_ok && distinct && cls.size() == classes.size();
    }
    res.report.add("block-size", sizes_ok, "every block has k = " + std::to_string(k()) + " points");
    res.report.add("block-nonparallel", nonparallel_ok, "block points are pairwise non-parallel");
    res.report.add("transversal", transversal_ok && k() == v() / s(),
                   "k = v/s and each block meets every parallel class once");
    res.report.add("parameter-range", t <= k() && std::uint64_t(k()) <= v() / s(),
                   "t <= k <= v/s");

    if (t > classes.size()) {
      res.report.add("lambda-constant", false, "fewer than t parallel classes");
      return res;
    }

    if (exhaustive)
      lambda_exhaustive(t, res);
    else
      lambda_sampled(t, seed, samples, res);

    res.report.add("lambda-constant", res.lambda_min == res.lambda_max,
                   "lambda_" + std::to_string(t) + " in [" + std::to_string(res.lambda_min) + ", " +
                       std::to_string(res.lambda_max) + "] over " +
                       std::to_string(res.tuples_checked) + (res.sampled ? " sampled" : "") +
                       " tuples");
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
  }

  /// The blocks through a pairwise non-parallel triple, by transport of the
  /// standard-triple description: q blocks (B0^omega)^g with
  /// omega = diag(1+b*eps, 1+b*eps) when sigma != id, the single block B0^g
  /// when sigma = id.
  std::vector<Block> blocks_through_triple(std::uint32_t p1, std::uint32_t p2,
                                           std::uint32_t p3) const {
    const Mat2 g = line_.map_standard_triple(p1, p2, p3);
    const TwistedDualRing& r = line_.ring();
    const Block base = base_block();
    std::vector<Block> out;
    const std::uint32_t count = r.sigma().is_identity() ? 1 : line_.q();
    for (std::uint32_t bcode = 0; bcode < count; ++bcode) {
      Mat2 omega;
      const Re u = r.make(line_.field().one(), line_.field().element(bcode));
      omega.m[0][0] = u, omega.m[0][1] = r.zero(), omega.m[1][0] = r.zero(), omega.m[1][1] = u;
      Block img;
      img.reserve(base.size());
      for (const std::uint16_t p : base)
        img.push_back(std::uint16_t(line_.act(g, line_.act(omega, p))));
      std::sort(img.begin(), img.end());
      out.push_back(std::move(img));
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
      throw std::logic_error("blocks through the standard triple are not distinct");
    return out;
  }

  /// Trace of a pairwise non-parallel triple: the intersection of all blocks
  /// through it, together with the witness g such that trace = P(F)^g.
  /// |trace| = m + 1 is checked.
  TraceResult trace(std::uint32_t p1, std::uint32_t p2, std::uint32_t p3) const {
    TraceResult res;
    res.witness = line_.map_standard_triple(p1, p2, p3);
    const auto through = blocks_through_triple(p1, p2, p3);
    Block acc = through.front();
    for (std::size_t i = 1; i < through.size(); ++i) {
      Block next;
      std::set_intersection(acc.begin(), acc.end(), through[i].begin(), through[i].end(),
                            std::back_inserter(next));
      acc = std::move(next);
    }
    const FrobeniusAut& sigma = line_.ring().sigma();
    Block pf_image;
    for (std::uint32_t x = 0; x < line_.q(); ++x) {
      const Fe e = line_.field().element(x);
      if (!sigma.fixes(e)) continue;
      const ProjPoint p{PointKind::Affine, line_.ring().scalar(e)};
      pf_image.push_back(std::uint16_t(line_.act(res.witness, line_.index(p))));
    }
    pf_image.push_back(std::uint16_t(line_.act(res.witness, line_.infinity())));
    std::sort(pf_image.begin(), pf_image.end());
    if (acc != pf_image) throw std::logic_error("trace is not an image of P(F)");
    if (acc.size() != sigma.fixed_field_order() + 1)
      throw std::logic_error("trace size is not m + 1");
    res.trace = std::move(acc);
    return res;
  }

  /// Number of blocks through (p1,p2,p3,x), predicted by the trichotomy
  /// (q / 0 / 1 as x lies in the trace T, is parallel to a point of T, or
  /// neither) and verified against direct counting over the block set.
  /// Admissible x: a point of T, or a point non-parallel to the whole
  /// triple. Requires sigma != id.
  std::uint32_t classify_fourth_point(std::uint32_t p1, std::uint32_t p2, std::uint32_t p3,
                                      std::uint32_t x) const {
    if (line_.ring().sigma().is_identity())
      throw std::domain_error("fourth-point trichotomy requires sigma != id");
    const Block t = trace(p1, p2, p3).trace;
    const bool in_trace = std::binary_search(t.begin(), t.end(), std::uint16_t(x));
    if (!in_trace)
      for (const std::uint32_t p : {p1, p2, p3})
        if (line_.parallel(x, p))
          throw std::invalid_argument("x must lie in the trace or be non-parallel to the triple");
    std::uint32_t predicted = 1;
    if (in_trace)
      predicted = line_.q();
    else {
      for (const std::uint16_t tp : t)
        if (line_.parallel(x, tp)) { predicted = 0; break; }
    }
    const std::uint32_t pts[4] = {p1, p2, p3, x};
    const std::uint32_t counted = std::uint32_t(blocks_through(pts).size());
    if (counted != predicted)
      throw std::logic_error("block count through quadruple contradicts the trichotomy");
    return counted;
  }

  struct TrichotomySweep {
    std::uint64_t triples = 0, quadruples = 0;
    std::uint64_t q_branch = 0, zero_branch = 0, one_branch = 0;
    bool consistent = true;
    bool sampled = false;
    bool q_branch_vacuous() const { return q_branch == 0; }
    bool zero_branch_vacuous() const { return zero_branch == 0; }
    bool one_branch_vacuous() const { return one_branch == 0; }
  };

  /// Walks (all or sampled) pairwise non-parallel triples; per triple checks
  /// the trace (P(F)^g witness and size m+1, inside trace()) and, for every
  /// admissible fourth point x, that the count of blocks through the
  /// quadruple matches the q/0/1 trichotomy. Branch witness counts expose
  /// vacuous branches. Requires sigma != id.
  TrichotomySweep sweep_trichotomy(bool exhaustive = true, std::uint64_t seed = 0,
                                   std::uint64_t max_triples = 200) const {
    if (line_.ring().sigma().is_identity())
      throw std::domain_error("fourth-point trichotomy requires sigma != id");
    TrichotomySweep sweep;
    sweep.sampled = !exhaustive;
    const auto& classes = line_.parallel_classes();
    const std::uint32_t nc = std::uint32_t(classes.size());

    const auto visit_triple = [&](std::uint32_t p1, std::uint32_t p2, std::uint32_t p3) {
      ++sweep.triples;
      const Block t = trace(p1, p2, p3).trace;
      const std::uint32_t triple_pts[3] = {p1, p2, p3};
      const auto through = blocks_through(triple_pts);
      for (std::uint32_t x = 0; x < line_.v(); ++x) {
        const bool in_t = std::binary_search(t.begin(), t.end(), std::uint16_t(x));
        if (!in_t && (line_.parallel(x, p1) || line_.parallel(x, p2) || line_.parallel(x, p3)))
          continue;
        std::uint32_t predicted = 1;
        if (in_t)
          predicted = line_.q();
        else
          for (const std::uint16_t tp : t)
            if (line_.parallel(x, tp)) { predicted = 0; break; }
        std::uint32_t counted = 0;
        for (const std::uint32_t id : through)
          if (std::binary_search(blocks_[id].begin(), blocks_[id].end(), std::uint16_t(x)))
            ++counted;
        ++sweep.quadruples;
        sweep.consistent = sweep.consistent && counted == predicted;
        if (predicted == line_.q()) ++sweep.q_branch;
        else if (predicted == 0) ++sweep.zero_branch;
        else ++sweep.one_branch;
      }
    };

    if (exhaustive) {
      for (std::uint32_t c1 = 0; c1 < nc; ++c1)
        for (std::uint32_t c2 = c1 + 1; c2 < nc; ++c2)
          for (std::uint32_t c3 = c2 + 1; c3 < nc; ++c3)
            for (const std::uint32_t p1 : classes[c1])
              for (const std::uint32_t p2 : classes[c2])
                for (const std::uint32_t p3 : classes[c3]) visit_triple(p1, p2, p3);
    } else {
      std::mt19937_64 rng(seed);
      for (std::uint64_t i = 0; i < max_triples; ++i) {
        std::uint32_t cls[3];
        cls[0] = std::uint32_t(rng() % nc);
        do cls[1] = std::uint32_t(rng() % nc); while (cls[1] == cls[0]);
        do cls[2] = std::uint32_t(rng() % nc); while (cls[2] == cls[0] || cls[2] == cls[1]);
        const auto pick = [&](std::uint32_t c) {
          return classes[c][rng() % classes[c].size()];
        };
        visit_triple(pick(cls[0]), pick(cls[1]), pick(cls[2]));
      }
    }
    return sweep;
  }

 private:
  static std::vector<std::uint32_t> intersect(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  void lambda_exhaustive(std::uint32_t t, DesignVerification& res) const {
    const auto& classes = line_.parallel_classes();
    const std::uint32_t nc = std::uint32_t(classes.size());
    // Enumerate t-subsets of parallel classes; a t-set of pairwise
    // non-parallel points is one point per chosen class.
    std::vector<std::vector<std::uint32_t>> combos;
    std::vector<std::uint32_t> combo(t);
    const auto gen = [&](auto&& self, std::uint32_t start, std::uint32_t depth) -> void {
      if (depth == t) { combos.push_back(combo); return; }
      for (std::uint32_t c = start; c < nc; ++c) {
        combo[depth] = c;
        self(self, c + 1, depth + 1);
      }
    };
    gen(gen, 0, 0);

    const std::size_t chunks = worker_count();
    std::vector<std::uint64_t> mins(chunks, UINT64_MAX), maxs(chunks, 0), counts(chunks, 0);
    parallel_chunks(combos.size(), [&](std::size_t chunk, std::size_t begin, std::size_t end) {
      for (std::size_t ci = begin; ci < end; ++ci) {
        const auto& cls = combos[ci];
        // depth-first product over the chosen classes with incremental
        // posting-list intersection
        const auto walk = [&](auto&& self, std::uint32_t depth,
                              const std::vector<std::uint32_t>& current) -> void {
          if (depth == t) {
            const std::uint64_t n = current.size();
            mins[chunk] = std::min(mins[chunk], n);
            maxs[chunk] = std::max(maxs[chunk], n);
            ++counts[chunk];
            return;
          }
          for (const std::uint32_t p : classes[cls[depth]]) {
            if (depth == 0)
              self(self, 1, postings_[p]);
            else
              self(self, depth + 1, intersect(current, postings_[p]));
          }
        };
        walk(walk, 0, {});
      }
    });
    res.lambda_min = UINT64_MAX;
    for (std::size_t c = 0; c < chunks; ++c) {
      res.lambda_min = std::min(res.lambda_min, mins[c]);
      res.lambda_max = std::max(res.lambda_max, maxs[c]);
      res.tuples_checked += counts[c];
    }
    res.sampled = false;
  }

  void lambda_sampled(std::uint32_t t, std::uint64_t seed, std::uint64_t samples,
                      DesignVerification& res) const {
    const auto& classes = line_.parallel_classes();
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> ids(classes.size());
    std::iota(ids.begin(), ids.end(), 0);
    res.lambda_min = UINT64_MAX;
    res.lambda_max = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
      std::shuffle(ids.begin(), ids.end(), rng);
      std::vector<std::uint32_t> pts;
      for (std::uint32_t j = 0; j < t; ++j) {
        const auto& cls = classes[ids[j]];
        pts.push_back(cls[rng() % cls.size()]);
      }
      const std::uint64_t n = blocks_through(pts).size();
      res.lambda_min = std::min(res.lambda_min, n);
      res.lambda_max = std::max(res.lambda_max, n);
      ++res.tuples_checked;
    }
    res.sampled = true;
  }

  ProjectiveLine line_;
  std::vector<Block> blocks_;
  std::vector<std::vector<std::uint32_t>> postings_;
};

}  // namespace ddforge
