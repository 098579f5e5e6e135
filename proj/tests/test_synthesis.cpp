#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "annular/chain.hpp"
#include "annular/entire_function.hpp"
#include "annular/errors.hpp"
#include "annular/partition.hpp"
#include "annular/synthesis.hpp"

using namespace annular;

namespace {

// Independent oracle: enumerate every sequence over {0..cap} starting at s0
// and count those accepted by admissible_check.
BigInt brute_count(const TransitionSystem& ts, int len, int s0, int cap) {
  if (len <= 0 || s0 < 0 || s0 > cap) return 0;
  BigInt total = 0;
  std::vector<int> seq{s0};
  std::function<void()> go = [&]() {
    if (static_cast<int>(seq.size()) == len) {
      if (admissible_check(seq, ts)) ++total;
      return;
    }
    for (int v = 0; v <= cap; ++v) {
      seq.push_back(v);
      go();
      seq.pop_back();
    }
  };
  go();
  return total;
}

TransitionSystem dense_ts(int horizon) {
  TransitionSystem ts;
  ts.horizon = horizon;
  for (int i = 0; i < horizon; ++i) {
    ts.n_j.push_back(i);
    ts.I_j.emplace_back();
  }
  return ts;
}

AnnuliChain flagship() {
  static AnnuliChain chain =
      build_Bn_sequence(make_exp(), WideReal(2.0), 5, desk_relaxed());
  return chain;
}

} // namespace

TEST_CASE("count_admissible equals exhaustive enumeration on fixed systems") {
  // no backjumps: only the strict climb survives
  TransitionSystem none;
  none.horizon = 5;
  CHECK(count_admissible(none, 5, 0, 5) == 1);
  CHECK(count_admissible(none, 5, 0, 3) == 0); // climb would exceed the cap

  TransitionSystem d = dense_ts(6);
  CHECK(count_admissible(d, 6, 2, 4) == brute_count(d, 6, 2, 4));

  // one excluded landing level changes the count
  TransitionSystem ex = dense_ts(4);
  ex.I_j[1] = {0};
  CHECK(count_admissible(ex, 4, 1, 3) == brute_count(ex, 4, 1, 3));
  CHECK(count_admissible(ex, 4, 1, 3) < count_admissible(dense_ts(4), 4, 1, 3));
}

TEST_CASE("count_admissible equals exhaustive enumeration on random systems") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    int len = 3 + static_cast<int>(rng() % 6);  // 3..8
    int cap = 2 + static_cast<int>(rng() % 4);  // 2..5
    int s0 = static_cast<int>(rng() % (cap + 1));
    TransitionSystem ts;
    ts.horizon = len;
    for (int n = 0; n + 1 < len; ++n) {
      if (rng() % 2 == 0) continue;
      ts.n_j.push_back(n);
      std::vector<int> excl;
      if (rng() % 3 == 0) excl.push_back(static_cast<int>(rng() % (cap + 1)));
      ts.I_j.push_back(excl);
    }
    CAPTURE(trial);
    REQUIRE(count_admissible(ts, len, s0, cap) == brute_count(ts, len, s0, cap));
  }
}

TEST_CASE("flagship transition system count is stable") {
  TransitionSystem ts = ts_from_chain(flagship(), 6);
  REQUIRE(ts.n_j.size() == 6); // dense pattern extends to the horizon
  CHECK(count_admissible(ts, 6, 2, 4) == 507);
  CHECK(count_admissible(ts, 6, 2, 4) == brute_count(ts, 6, 2, 4));
}

TEST_CASE("gen_periodic produces admissible sequences or honest failures") {
  TransitionSystem d = dense_ts(6);
  auto r = gen_periodic(d, 3, 0);
  REQUIRE(std::holds_alternative<std::vector<int>>(r));
  auto seq = std::get<std::vector<int>>(r);
  CHECK(seq == std::vector<int>{0, 1, 2, 0, 1, 2});
  CHECK(admissible_check(seq, d));

  // no backjump available at the period boundary
  TransitionSystem none;
  none.horizon = 6;
  auto bad = gen_periodic(none, 2, 0);
  REQUIRE(std::holds_alternative<Unrealizable>(bad));
  CHECK(std::get<Unrealizable>(bad).at_index == 1);

  // the landing level is excluded at the boundary
  TransitionSystem ex = dense_ts(6);
  ex.I_j[2] = {0};
  auto blk = gen_periodic(ex, 3, 0);
  REQUIRE(std::holds_alternative<Unrealizable>(blk));
  CHECK(std::get<Unrealizable>(blk).blocking == std::vector<int>{0});

  CHECK_THROWS_AS(gen_periodic(d, 0, 0), DomainError);
}

TEST_CASE("gen_bounded sequences stay in the band and pass the automaton") {
  TransitionSystem d = dense_ts(5);
  auto r = gen_bounded(d, 0, 2, 5);
  REQUIRE(std::holds_alternative<std::vector<std::vector<int>>>(r));
  auto seqs = std::get<std::vector<std::vector<int>>>(r);
  REQUIRE(seqs.size() == 5);
  std::set<std::vector<int>> uniq(seqs.begin(), seqs.end());
  CHECK(uniq.size() == 5);
  for (const auto& s : seqs) {
    CHECK(s.size() == 5);
    CHECK(admissible_check(s, d));
    for (int v : s) {
      CHECK(v >= 0);
      CHECK(v <= 2);
    }
  }

  // without backjumps only the single climb fits a 3-step band
  TransitionSystem none;
  none.horizon = 3;
  auto few = gen_bounded(none, 0, 2, 2);
  REQUIRE(std::holds_alternative<Unrealizable>(few));

  CHECK_THROWS_AS(gen_bounded(d, 0, 1, 1), DomainError);
}

TEST_CASE("gen_oscillating follows the peak schedule") {
  TransitionSystem d = dense_ts(9);
  auto r = gen_oscillating(d, 0, {2, 3});
  REQUIRE(std::holds_alternative<std::vector<int>>(r));
  auto seq = std::get<std::vector<int>>(r);
  REQUIRE(seq.size() == 9);
  CHECK(admissible_check(seq, d));
  CHECK(*std::max_element(seq.begin(), seq.end()) == 3);
  CHECK(std::count(seq.begin(), seq.end(), 0) >= 2); // returns to the floor
}

TEST_CASE("gen_slow_escape loiters until the rate crosses each level") {
  auto e = make_exp();
  Partition p = build_partition(e, WideReal(1.0), 6);
  TransitionSystem ts = ts_from_chain(flagship(), 30);
  RateSpec rate;
  rate.logR0 = WideReal(1.0);
  for (int n = 0; n < 25; ++n) rate.log_a.push_back(WideReal(std::pow(2.0, n)));
  SlowEscape se = gen_slow_escape(ts, rate, p);
  REQUIRE(!se.symbols.empty());
  CHECK(se.symbols.front() == 0);
  for (size_t n = 0; n + 1 < se.symbols.size(); ++n) {
    int d = se.symbols[n + 1] - se.symbols[n];
    CHECK(d >= 0);
    CHECK(d <= 1);
  }
  CHECK(se.symbols.back() == 3);
  CHECK(admissible_check(se.symbols, ts));
  // the doubling rate crosses e, then e^e, then e^{e^e}
  REQUIRE(se.loiter_lengths.size() == 3);
  CHECK(se.loiter_lengths[0] == 2);
  CHECK(se.loiter_lengths[1] == 1);
  CHECK(se.loiter_lengths[2] == 17);
  CHECK(!se.truncated);
}

TEST_CASE("prescribed_rate_plan on the slow half-step rate") {
  auto e = make_exp();
  AnnuliChain chain = flagship();
  RateSpec rate;
  rate.logR0 = WideReal(2.0);
  for (int n = 0; n < 6; ++n) rate.log_a.push_back(WideReal(2.0 + 0.5 * n));

  PrescribedPlan plan = prescribed_rate_plan(e, rate, chain, PlanMode::MC);
  CHECK(plan.bound_kind == BoundKind::M2);
  CHECK(plan.targets == std::vector<int>{0, 1, 1, 1, 1, 1});
  CHECK(plan.n_j_out == std::vector<int>{1, 2, 3, 4});
  REQUIRE(plan.upper_bounds.size() == 4);
  CHECK(plan.bounds_ok);
  // M2 bound at n=1: mu(mu(2.5)) comfortably above k_1 t_1
  CHECK(plan.upper_bounds[0] > chain.entries[1].kt());

  // the power-law bound cannot clear the first block's outer radius
  PrescribedPlan weak = prescribed_rate_plan(e, rate, chain, PlanMode::NoMC);
  CHECK(weak.bound_kind == BoundKind::Power1Eps);
  CHECK(!weak.bounds_ok);
}

TEST_CASE("prescribed_rate_plan rejects infeasible rates") {
  auto e = make_exp();
  AnnuliChain chain = flagship();
  RateSpec below;
  below.logR0 = WideReal(2.0);
  below.log_a = {WideReal(2.0), WideReal(1.5)};
  CHECK_THROWS_AS(prescribed_rate_plan(e, below, chain, PlanMode::MC),
                  RateViolation);
  RateSpec fast;
  fast.logR0 = WideReal(2.0);
  fast.log_a = {WideReal(2.0), WideReal(100.0)}; // mu(2) = e^2 < 100
  CHECK_THROWS_AS(prescribed_rate_plan(e, fast, chain, PlanMode::MC),
                  RateViolation);
}

TEST_CASE("branching_witness doubles at every free backjump") {
  auto e = make_exp();
  AnnuliChain chain = flagship();
  RateSpec rate;
  rate.logR0 = WideReal(2.0);
  rate.log_a.assign(6, WideReal(2.0)); // constant rate: maximal slowness
  auto prefixes = branching_witness(e, rate, chain, 4);
  CHECK(prefixes.size() == 16);
  std::set<std::vector<int>> uniq(prefixes.begin(), prefixes.end());
  CHECK(uniq.size() == 16);
  TransitionSystem ts = ts_from_chain(chain, 6);
  for (const auto& s : prefixes) {
    CHECK(s.size() == 6);
    CHECK(admissible_check(s, ts));
  }

  // a strictly increasing rate leaves no room to fork four times
  RateSpec inc;
  inc.logR0 = WideReal(2.0);
  for (int n = 0; n < 6; ++n) inc.log_a.push_back(WideReal(2.0 + 0.5 * n));
  CHECK_THROWS_AS(branching_witness(e, inc, chain, 4), InsufficientBranching);
}
