#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "annular/entire_function.hpp"
#include "annular/errors.hpp"
#include "annular/partition.hpp"

using namespace annular;

TEST_CASE("build_partition on exp matches independent exponentiation") {
  auto e = make_exp();
  Partition p = build_partition(e, WideReal(1.0), 4);
  REQUIRE(p.levels.size() == 4);
  CHECK(p.levels[0].to_double() == doctest::Approx(1.0));
  CHECK(p.levels[1].to_double() == doctest::Approx(2.718281828459045).epsilon(1e-13));
  CHECK(p.levels[2].to_double() == doctest::Approx(15.154262241479262).epsilon(1e-13));
  CHECK(p.levels[3].to_double() == doctest::Approx(3814279.104760220).epsilon(1e-12));
  for (size_t n = 1; n < p.levels.size(); ++n) CHECK(p.levels[n] > p.levels[n - 1]);

  // logR = 0 is still valid for exp: mu(0) = 1 > 0
  Partition p0 = build_partition(e, WideReal(0.0), 4);
  CHECK(p0.levels[0].is_zero());
  CHECK(p0.levels[2].to_double() == doctest::Approx(2.718281828459045));
}

TEST_CASE("InvalidR below the escape threshold") {
  // z^2: mu(t) = 2t <= t for t <= 0
  auto m = make_monomial("1", 2);
  CHECK_THROWS_AS(build_partition(m, WideReal(-1.0), 3), InvalidR);
  CHECK_THROWS_AS(build_partition(m, WideReal(0.0), 3), InvalidR);
  CHECK_NOTHROW(build_partition(m, WideReal(0.5), 3));
}

TEST_CASE("partition truncates at saturation and stays decidable above it") {
  auto e = make_exp();
  Partition p = build_partition(e, WideReal(6.8158483930249677), 8);
  REQUIRE(p.saturated_at.has_value());
  CHECK(p.levels.size() == static_cast<size_t>(*p.saturated_at));
  // membership above the last stored level is still decidable: the next
  // boundary exceeds every representable value
  WideReal above = exp_w(exp_w(WideReal(1618.0)));
  CHECK(annulus_index(p, above) == static_cast<int>(p.levels.size()));
}

TEST_CASE("annulus_index edges") {
  auto e = make_exp();
  Partition p = build_partition(e, WideReal(1.0), 4);
  CHECK(annulus_index(p, WideReal(0.5)) == 0);
  CHECK(annulus_index(p, WideReal(1.0)) == 1);  // half-open cells
  CHECK(annulus_index(p, WideReal(2.0)) == 1);
  CHECK(annulus_index(p, WideReal(3.0)) == 2);
  CHECK(annulus_index(p, WideReal(100.0)) == 3);
  CHECK_THROWS_AS(annulus_index(p, WideReal(1e7)), IndexBeyondDepth);
}

TEST_CASE("itinerary transition rule s_{n+1} <= s_n + 1 on random points") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> um(-3.0, 3.0);
  auto cat = builtin_catalog();
  for (const char* id : {"exp", "sin", "cosh", "zexpz"}) {
    const auto& f = *find_function(cat, id);
    Partition p = build_partition(f, WideReal(1.5), 6);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
      ComplexPoint z = ComplexPoint::cartesian(Real(um(rng)), Real(um(rng)));
      Itinerary it = compute_itinerary(f, z, p, 8);
      if (it.ambiguous) continue;
      ++checked;
      for (size_t n = 0; n + 1 < it.symbols.size(); ++n)
        REQUIRE(it.symbols[n + 1] <= it.symbols[n] + 1);
    }
    CHECK(checked > 200);
  }
}

TEST_CASE("itinerary of the flagship orbit climbs one level per step") {
  auto e = make_exp();
  Partition p = build_partition(e, WideReal(1.0), 6);
  ComplexPoint z = ComplexPoint::cartesian(Real(2), Real(0));
  Itinerary it = compute_itinerary(e, z, p, 6);
  REQUIRE(it.symbols.size() >= 4);
  for (size_t n = 1; n < it.symbols.size(); ++n)
    CHECK(it.symbols[n] == it.symbols[n - 1] + 1);
  CHECK(classify_fast_escaping(it, 4));
}

TEST_CASE("itinerary truncation when the orbit outruns the partition") {
  auto e = make_exp();
  Partition p = build_partition(e, WideReal(1.0), 3);
  ComplexPoint z = ComplexPoint::cartesian(Real(16), Real(0));
  Itinerary it = compute_itinerary(e, z, p, 10);
  CHECK(it.truncated);
  CHECK(it.reason == TruncationReason::RangeExceeded);
}

TEST_CASE("relabel_offset confined to {p, p+1}") {
  auto e = make_exp();
  Partition p1 = build_partition(e, WideReal(1.0), 6);
  Partition p2 = build_partition(e, WideReal(2.0), 6);
  std::mt19937 rng(999);
  std::uniform_real_distribution<double> um(-2.5, 2.5);
  int done = 0;
  for (int trial = 0; trial < 200 && done < 100; ++trial) {
    ComplexPoint z = ComplexPoint::cartesian(Real(um(rng)), Real(um(rng)));
    Itinerary a = compute_itinerary(e, z, p1, 6);
    Itinerary b = compute_itinerary(e, z, p2, 6);
    if (a.ambiguous || b.ambiguous || a.symbols.size() < 2 || b.symbols.size() < 2)
      continue;
    CHECK_NOTHROW(relabel_offset(a, b));
    ++done;
  }
  CHECK(done == 100);
}

TEST_CASE("classify_fast_escaping rejects non-climbing tails") {
  Itinerary it;
  it.symbols = {0, 1, 2, 2, 3};
  CHECK(!classify_fast_escaping(it, 4));
  it.symbols = {0, 1, 2, 3, 4};
  CHECK(classify_fast_escaping(it, 4));
  CHECK(!classify_fast_escaping(it, 10)); // window longer than the orbit
}
