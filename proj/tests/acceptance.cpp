// Acceptance suite: reproduces every combinatorial and geometric claim the
// library is supposed to certify, at the exact parameters, with zero
// tolerance. Prints one PASS/FAIL line per criterion and exits nonzero if
// any fails.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ddforge/design.hpp"
#include "ddforge/io.hpp"
#include "ddforge/klein.hpp"

using namespace ddforge;

namespace {

int failures = 0;

ProjectiveLine line_for(std::uint32_t q, std::uint32_t m) {
  const auto [p, n] = detail::factor_prime_power(q);
  return ProjectiveLine({GaloisField(p, n), m});
}

void criterion(int number, const std::string& title, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << number << "  " << title;
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << std::endl;
  if (!pass) ++failures;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

}  // namespace

int main() {
  // 1. Twisted case, sigma != id: a transversal 3-DD with
  //    v = q^2+q, s = q, k = q+1, lambda_3 = q, by complete triple enumeration.
  {
    Timer t;
    bool pass = true;
    std::ostringstream detail;
    for (const auto& [q, m] : {std::pair<std::uint32_t, std::uint32_t>{4, 2}, {8, 2}, {9, 3}}) {
      const auto d = ChainDesign::generate(line_for(q, m));
      const auto res = d.verify(3);
      pass = pass && res.ok() && !res.sampled && d.v() == q * q + q && d.s() == q &&
             d.k() == q + 1 && res.lambda_min == q && res.lambda_max == q;
      detail << "(" << q << "," << m << ") lambda3=" << res.lambda_min << " ";
    }
    detail << t.seconds() << "s";
    criterion(1, "transversal 3-DD parameters, sigma != id, at (4,2) (8,2) (9,3)", pass,
              detail.str());
  }

  // 2. sigma = id: the Miquelian Laguerre plane, lambda_3 = 1 and q^3 blocks.
  {
    Timer t;
    const auto d = ChainDesign::generate(line_for(4, 4));
    const auto res = d.verify(3);
    const bool pass = res.ok() && res.lambda_min == 1 && res.lambda_max == 1 &&
                      d.blocks().size() == 64;
    criterion(2, "sigma = id gives lambda_3 = 1 with q^3 = 64 blocks",
              pass, std::to_string(t.seconds()) + "s");
  }

  // 3. 4-DD corollary: lambda_4 = 1 over all quadruples for even q, m = 2.
  {
    Timer t;
    bool pass = true;
    std::ostringstream detail;
    for (const std::uint32_t q : {4u, 8u}) {
      const auto d = ChainDesign::generate(line_for(q, 2));
      const auto res = d.verify(4);
      pass = pass && res.ok() && !res.sampled && res.lambda_min == 1 && res.lambda_max == 1;
      detail << "(" << q << ",2) tuples=" << res.tuples_checked << " ";
    }
    detail << t.seconds() << "s";
    criterion(3, "lambda_4 = 1 at (4,2) and (8,2), exhaustive quadruples", pass, detail.str());
  }

  // 4. Block counts: |B| = q^4 for sigma != id; orbit closure equals the
  //    all-matrices oracle at q = 4.
  {
    Timer t;
    bool pass = true;
    for (const auto& [q, m] : {std::pair<std::uint32_t, std::uint32_t>{4, 2}, {8, 2}, {9, 3}}) {
      const auto d = ChainDesign::generate(line_for(q, m));
      pass = pass && d.blocks().size() == std::uint64_t(q) * q * q * q;
    }
    const auto line = line_for(4, 2);
    const auto oracle = exhaustive_blocks_oracle(line);
    const auto d = ChainDesign::generate(line);
    pass = pass && oracle.blocks == d.blocks() && oracle.blocks.size() == 256 &&
           oracle.invertible_count == 46080;
    criterion(4, "block count q^4; orbit equals the exhaustive matrix oracle at q = 4", pass,
              std::to_string(t.seconds()) + "s");
  }

  // 5. Spera's formula fed with |G|/|G_B0| = |B| reproduces the counted
  //    lambda_3 for every tested (q, m).
  {
    bool pass = true;
    for (const auto& [q, m] :
         {std::pair<std::uint32_t, std::uint32_t>{4, 2}, {8, 2}, {9, 3}, {4, 4}}) {
      const auto d = ChainDesign::generate(line_for(q, m));
      const auto res = d.verify(3);
      const Rational r = spera_lambda(d.blocks().size(), 1, d.v(), d.s(), d.k(), 3);
      pass = pass && r.is_integer() && std::uint64_t(r.num) == res.lambda_min &&
             res.lambda_min == res.lambda_max && lambda3_transversal(d.blocks().size(), d.s()) == r;
    }
    criterion(5, "Spera's lambda formula is consistent with counting", pass, "");
  }

  // 6. Fourth-point trichotomy over all admissible (triple, x) pairs at
  //    (4,2) and (9,3); vacuous branches reported, not silently skipped.
  {
    Timer t;
    const auto d42 = ChainDesign::generate(line_for(4, 2));
    const auto s42 = d42.sweep_trichotomy(true);
    const bool pass42 = s42.consistent && !s42.sampled && s42.q_branch > 0 &&
                        s42.zero_branch_vacuous() && s42.one_branch > 0;
    const auto d93 = ChainDesign::generate(line_for(9, 3));
    const auto s93 = d93.sweep_trichotomy(true);
    const bool pass93 = s93.consistent && !s93.sampled && s93.q_branch > 0 &&
                        s93.zero_branch > 0 && s93.one_branch > 0;
    std::ostringstream detail;
    detail << "(4,2) q/0/1=" << s42.q_branch << "/" << s42.zero_branch << "/" << s42.one_branch
           << (s42.zero_branch_vacuous() ? " 0-branch vacuous" : "") << "; (9,3) q/0/1="
           << s93.q_branch << "/" << s93.zero_branch << "/" << s93.one_branch << "; "
           << t.seconds() << "s";
    criterion(6, "fourth-point trichotomy, all admissible pairs at (4,2) and (9,3)",
              pass42 && pass93, detail.str());
  }

  // 7. Traces: |T| = m+1 with an explicit witness g such that T = P(F)^g,
  //    for every pairwise non-parallel triple at (4,2), (8,2), (9,3).
  //    trace() verifies both facts internally and the sweep walks all
  //    triples; (4,2) and (9,3) are covered by criterion 6's sweeps.
  {
    Timer t;
    bool pass = true;
    std::uint64_t triples = 0;
    try {
      const auto d82 = ChainDesign::generate(line_for(8, 2));
      const auto s82 = d82.sweep_trichotomy(true);
      pass = s82.consistent && !s82.sampled;
      triples = s82.triples;
    } catch (const std::exception& e) {
      pass = false;
    }
    criterion(7, "trace size m+1 and P(F)^g witness on all triples at (4,2), (8,2), (9,3)", pass,
              std::to_string(triples) + " triples at (8,2); " + std::to_string(t.seconds()) + "s");
  }

  // 8. Klein model: images on the quadric, parallel iff line-on-quadric,
  //    cone/cap/span lemmas, blocks <-> complements bijection with count q^4,
  //    Baer elliptic quadric (m^2+1 points) where q = m^2.
  {
    Timer t;
    bool pass = true;
    std::ostringstream detail;
    for (const auto& [q, m] : {std::pair<std::uint32_t, std::uint32_t>{4, 2}, {8, 2}, {9, 3}}) {
      const auto line = line_for(q, m);
      const KleinModel model(line);
      const auto design = ChainDesign::generate(line);
      bool here = model.verify_embedding().all_pass() && model.verify_cone().all_pass() &&
                  model.verify_cap().all_pass() &&
                  model.verify_blocks_geometric(design).all_pass();
      if (q == m * m) {
        const auto baer = model.verify_baer();
        here = here && baer.all_pass();
        for (const auto& item : baer.items)
          if (item.name == "elliptic-point-count") here = here && item.pass;
      } else {
        bool rejected = false;
        try {
          model.verify_baer();
        } catch (const std::domain_error&) {
          rejected = true;
        }
        here = here && rejected;  // (8,2): sigma^2 != id, reported not applicable
      }
      detail << "(" << q << "," << m << (here ? ") ok " : ") FAIL ");
      pass = pass && here;
    }
    detail << t.seconds() << "s";
    criterion(8, "Klein quadric model certifies all geometric lemmas", pass, detail.str());
  }

  // 9. Algebra property suite, exhaustive for q <= 9: semidirect
  //    decomposition, U normal, normalizer closed form, eps-commutation,
  //    the U-hat conjugation formula, and regularity on non-fixed classes.
  {
    Timer t;
    bool pass = true;
    for (const auto& [q, m] :
         {std::pair<std::uint32_t, std::uint32_t>{4, 2}, {8, 2}, {9, 3}, {4, 4}}) {
      const auto line = line_for(q, m);
      const TwistedDualRing& r = line.ring();
      const GaloisField& k = line.field();
      const FrobeniusAut& sigma = r.sigma();

      bool algebra = true;
      // normalizer: computed exhaustively, checked against the closed form
      try {
        const auto n = r.normalizer_of_field_units();
        algebra = algebra && n.size() == (sigma.is_identity() ? std::size_t(q) * (q - 1) : q - 1);
      } catch (const std::exception&) {
        algebra = false;
      }
      for (std::uint32_t x = 0; x < q && algebra; ++x) {
        const Fe e = k.element(x);
        algebra = r.mul(r.eps(), r.scalar(e)) == r.mul(r.scalar(sigma.apply(e)), r.eps());
      }
      for (std::uint32_t uc = 0; uc < r.size() && algebra; ++uc) {
        const Re u = r.element(uc);
        if (!r.is_unit(u)) continue;
        const auto [kk, ww] = r.decompose_unit(u);  // throws unless u = kk * ww exactly
        algebra = algebra && !k.is_zero(kk) && r.in_subgroup_U(ww);
        for (std::uint32_t wc = 0; wc < q && algebra; ++wc)
          algebra = r.in_subgroup_U(
              r.mul(r.mul(r.inv(u), r.make(k.one(), k.element(wc))), u));
      }
      // U-hat conjugation formula and regular action on non-fixed classes
      for (std::uint32_t bc = 0; bc < q && algebra; ++bc) {
        const Re u = r.make(k.one(), k.element(bc));
        Mat2 omega;
        omega.m = {{{u, r.zero()}, {r.zero(), u}}};
        for (std::uint32_t xc = 0; xc < r.size() && algebra; ++xc) {
          const Re x = r.element(xc);
          const Fe drift = k.mul(k.element(bc), k.sub(x.a, sigma.apply(x.a)));
          algebra = line.act(omega, line.index({PointKind::Affine, x})) ==
                    line.index({PointKind::Affine, r.add(x, r.make(k.zero(), drift))});
        }
        for (std::uint32_t zc = 0; zc < q && algebra; ++zc)
          algebra = line.act(omega, r.size() + zc) == r.size() + zc;
      }
      for (std::uint32_t x1 = 0; x1 < q && algebra; ++x1) {
        const Fe e = k.element(x1);
        if (sigma.fixes(e)) continue;
        std::set<std::uint32_t> images;
        for (std::uint32_t bc = 0; bc < q; ++bc) {
          const Re u = r.make(k.one(), k.element(bc));
          Mat2 omega;
          omega.m = {{{u, r.zero()}, {r.zero(), u}}};
          images.insert(line.act(omega, line.index({PointKind::Affine, r.scalar(e)})));
        }
        algebra = algebra && images.size() == q;
      }
      pass = pass && algebra;
    }
    criterion(9, "algebra property suite, exhaustive at (4,2) (8,2) (9,3) (4,4)", pass,
              std::to_string(t.seconds()) + "s");
  }

  // 10. Determinism: independently repeated builds give byte-identical JSON
  //     and incidence text.
  {
    bool pass = true;
    for (const auto& [q, m] : {std::pair<std::uint32_t, std::uint32_t>{4, 2}, {9, 3}}) {
      const auto a = ChainDesign::generate(line_for(q, m));
      const auto b = ChainDesign::generate(line_for(q, m));
      pass = pass && design_text(a) == design_text(b) && incidence_text(a) == incidence_text(b);
    }
    {
      const KleinModel m1(line_for(4, 2)), m2(line_for(4, 2));
      pass = pass && model_certificate(m1, {m1.verify_cone()}).dump() ==
                         model_certificate(m2, {m2.verify_cone()}).dump();
    }
    criterion(10, "repeated runs produce byte-identical artifacts", pass, "");
  }

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria FAILED")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
