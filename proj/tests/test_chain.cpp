#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "annular/chain.hpp"
#include "annular/entire_function.hpp"
#include "annular/errors.hpp"
#include "annular/partition.hpp"
#include "annular/radial_moduli.hpp"

using namespace annular;

TEST_CASE("seed entry") {
  ChainEntry s = seed_entry(WideReal(2.0), desk_relaxed());
  CHECK(s.t.to_double() == doctest::Approx(2.0));
  double d = 1.0 / std::sqrt(2.0);
  CHECK(s.delta.to_double() == doctest::Approx(d));
  CHECK(s.km1.to_double() == doctest::Approx(3.0 * d)); // k0 = 1 + 3 delta
  CHECK(s.origin == Origin::Seed);
  ChainEntry o = seed_entry(WideReal(2.0), desk_relaxed(), 2.5);
  CHECK(o.km1.to_double() == doctest::Approx(1.5));
}

TEST_CASE("absorbing_step on exp reports the min-modulus failure") {
  auto e = make_exp();
  auto r = absorbing_step(e, seed_entry(WideReal(2.0), desk_relaxed()),
                          desk_relaxed());
  REQUIRE(std::holds_alternative<MinModFailure>(r));
  WideReal ts = std::get<MinModFailure>(r).t_s;
  CHECK(ts.to_double() >= 2.0);
}

TEST_CASE("absorbing chain on a zero-free harness follows the recurrences") {
  // z^12 with the strict profile: growth 9 < 12 and sqrt(log r) = 80 at
  // t = 6400 hold with room
  auto m = make_monomial("1", 12);
  AbsorbingChain c =
      build_absorbing_chain(m, WideReal(6400.0), 6, paper_strict(), 1.25);
  CHECK(c.terminal == ChainTerminal::Budget);
  REQUIRE(c.entries.size() == 6);

  for (size_t n = 0; n + 1 < c.entries.size(); ++n) {
    const ChainEntry& a = c.entries[n];
    const ChainEntry& b = c.entries[n + 1];
    double dn = a.delta.to_double();
    // t' = mu(t)
    WideReal expect_t = mu(m, a.t);
    CHECK(std::abs(((b.t - expect_t) / expect_t).to_double()) < 1e-9);
    // k't' = (1 - 2 pi delta) mu((k - 2 delta) t)
    WideReal kt = b.kt();
    WideReal expect_kt =
        mu(m, a.kt() - a.delta * a.t * 2.0) * (1.0 - 2.0 * M_PI * dn);
    CHECK(std::abs(((kt - expect_kt) / expect_kt).to_double()) < 1e-6);
    // k_{n+1} >= k_n (1 - 9 delta_n)
    CHECK(b.k() >= a.k() * (1.0 - 9.0 * dn) - 1e-6);
    // widths shrink but stay positive
    CHECK(b.km1.sign() == 1);
  }
}

TEST_CASE("gap annuli interleave for a wider monomial seed") {
  auto m = make_monomial("1", 12);
  AbsorbingChain c =
      build_absorbing_chain(m, WideReal(6400.0), 6, paper_strict(), 2.0);
  GapAnnuli g = gap_annuli(c, m);
  CHECK(g.interleaving_ok);
  REQUIRE(g.entries.size() >= 4);
  for (const auto& a : g.entries) CHECK(a.t_in < a.t_out);

  // the default seed is too thin: the first gap annulus degenerates
  AbsorbingChain thin =
      build_absorbing_chain(m, WideReal(6400.0), 6, paper_strict(), 1.25);
  CHECK_THROWS_AS(gap_annuli(thin, m), DegenerateInnerAnnulus);
}

TEST_CASE("flagship chain: exp, t0 = 2, desk-relaxed, 5 blocks") {
  auto e = make_exp();
  AnnuliChain chain = build_Bn_sequence(e, WideReal(2.0), 5, desk_relaxed());
  REQUIRE(chain.entries.size() == 5);
  CHECK(chain.profile == "desk-relaxed");

  // t ladder: 2, e^2, e^{e^2}, ...
  CHECK(chain.entries[0].t.to_double() == doctest::Approx(2.0));
  CHECK(chain.entries[1].t.to_double() == doctest::Approx(7.38905609893065));
  CHECK(chain.entries[2].t.to_double() ==
        doctest::Approx(1618.17799191265).epsilon(1e-10));
  CHECK(chain.entries[3].t.approx_log10() == doctest::Approx(702.766).epsilon(1e-4));
  CHECK(chain.entries[4].t.exp2() > BigInt(1) << 2000);

  CHECK(chain.entries[0].origin == Origin::Seed);
  for (size_t n = 1; n < 5; ++n) CHECK(chain.entries[n].origin == Origin::BohrS);

  // every block is a backjump with empty exception set
  CHECK(chain.n_j == std::vector<int>{0, 1, 2, 3, 4});
  for (const auto& I : chain.I_j) CHECK(I.empty());

  // consecutive covering certificates all pass
  REQUIRE(chain.certs.size() == 4);
  for (const auto& c : chain.certs) {
    CHECK(c.verdict == Verdict::Covers);
    CHECK(c.margin > 0);
  }

  // deep entries: k - 1 underflows any double but stays positive and exact
  CHECK(chain.entries[3].km1.to_double() == 0.0);
  CHECK(chain.entries[3].km1.sign() == 1);
  CHECK(chain.entries[3].km1.approx_log10() < -300);
}

TEST_CASE("flagship partition alignment: B_n inside A_n") {
  auto e = make_exp();
  AnnuliChain chain = build_Bn_sequence(e, WideReal(2.0), 5, desk_relaxed());
  WideReal logR = align_partition(chain, e);
  CHECK(logR.to_double() == doctest::Approx(6.8158483930249677).epsilon(1e-12));

  Partition p = build_partition(e, logR, 6);
  // B_0 inside the disc A_0, B_n inside the annulus A_n
  CHECK(chain.entries[0].kt() < p.levels[0]);
  for (size_t n = 1; n < chain.entries.size(); ++n) {
    CHECK(p.levels[n - 1] <= chain.entries[n].t);
    if (n < p.levels.size())
      CHECK(chain.entries[n].kt() < p.levels[n]);
    else
      CHECK(p.saturated_at.has_value()); // last cell is unbounded
  }
  // every block lands in its own cell
  for (size_t n = 0; n < chain.entries.size(); ++n)
    CHECK(annulus_index(p, chain.entries[n].t + chain.entries[n].km1 * chain.entries[n].t * 0.5) ==
          static_cast<int>(n));
}

TEST_CASE("bohr extension separates S' from T") {
  auto e = make_exp();
  AnnuliChain chain = build_Bn_sequence(e, WideReal(2.0), 2, desk_relaxed());
  auto r = absorbing_step(e, chain.entries[0], desk_relaxed());
  REQUIRE(std::holds_alternative<MinModFailure>(r));
  BohrExtension ext = extend_chain_bohr(e, {chain.entries[0]},
                                        std::get<MinModFailure>(r).t_s,
                                        desk_relaxed());
  // T = S^{1+2 f delta}: strictly above S with at least log 2 separation
  CHECK(ext.nextT.t > ext.nextS.t);
  CHECK((ext.nextT.t - ext.nextS.t).to_double() > std::log(2.0));
  CHECK(ext.exception.size() <= 1);
}

TEST_CASE("prefer_T override takes the second candidate when both cover") {
  auto e = make_exp();
  AnnuliChain s_chain = build_Bn_sequence(e, WideReal(2.0), 3, desk_relaxed());
  AnnuliChain t_chain =
      build_Bn_sequence(e, WideReal(2.0), 3, desk_relaxed(), std::nullopt, true);
  // identical seeds, different level-1 block when the choice was Both
  CHECK(t_chain.entries[1].t >= s_chain.entries[1].t);
  if (t_chain.entries[1].origin == Origin::BohrT)
    CHECK(t_chain.entries[1].t > s_chain.entries[1].t);
}

TEST_CASE("certify_cover composes boundary moduli with the branch decider") {
  auto e = make_exp();
  // f(B(t=2 block)) covers the next block upward
  ChainEntry a = seed_entry(WideReal(2.0), desk_relaxed());
  Annulus src{a.t, a.kt(), a.km1 * a.t};
  Annulus tgt{WideReal(8.0), WideReal(15.0), WideReal(0)};
  CoveringCertificate c = certify_cover(e, src, tgt);
  CHECK(c.verdict == Verdict::Covers);

  auto m = make_monomial("1", 2);
  Annulus msrc{WideReal(2.0), WideReal(4.0), WideReal(0)};
  Annulus mtgt{WideReal(5.0), WideReal(7.0), WideReal(0)};
  CHECK(certify_cover(m, msrc, mtgt).verdict == Verdict::Covers);
}

TEST_CASE("hypothesis profile gates") {
  // z^8 under desk-relaxed: the seed factor leaves (1-2pi d)(k-2d) < 1,
  // the k-degeneracy guard must fire rather than produce a shrinking chain
  auto m = make_monomial("1", 8);
  CHECK_THROWS_AS(
      build_absorbing_chain(m, WideReal(6400.0), 4, desk_relaxed()),
      HypothesisFailed);
}
