#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "annular/entire_function.hpp"
#include "annular/errors.hpp"
#include "annular/point.hpp"

using namespace annular;

TEST_CASE("catalog contents and declared attributes") {
  auto cat = builtin_catalog();
  for (const char* id : {"exp", "aexpb", "sin", "cosh", "zexpz"})
    CHECK(find_function(cat, id) != nullptr);
  CHECK(find_function(cat, "no-such-fn") == nullptr);

  const auto& e = *find_function(cat, "exp");
  CHECK(e.has_exact_logM());
  CHECK(e.has_inverse_branch());
  CHECK(e.mc == MCClass::NoMC);
  const auto& s = *find_function(cat, "sin");
  CHECK(!s.has_exact_logM()); // oracle path exercised
  CHECK(s.mc == MCClass::NoMC);
}

TEST_CASE("exact modulus overrides") {
  auto f = make_exp();
  auto lm = exact_log_max_modulus<Real>(f, WideReal(2.0));
  REQUIRE(lm.has_value());
  CHECK(lm->to_double() == doctest::Approx(7.38905609893065).epsilon(1e-14));
  auto lo = exact_log_min_modulus<Real>(f, WideReal(2.0));
  REQUIRE(lo.has_value());
  CHECK(lo->to_double() == doctest::Approx(-7.38905609893065).epsilon(1e-14));

  auto m = make_monomial("2", 3); // 2 z^3: log M(e^t) = 3t + log 2
  auto mm = exact_log_max_modulus<Real>(m, WideReal(5.0));
  REQUIRE(mm.has_value());
  CHECK(mm->to_double() == doctest::Approx(15.0 + std::log(2.0)).epsilon(1e-14));
  CHECK(!exact_log_max_modulus<Real>(make_sin(), WideReal(2.0)).has_value());
}

TEST_CASE("plain evaluation matches closed forms") {
  std::complex<Real> z(Real("1.5"), Real("-0.25"));
  auto close = [](const std::complex<Real>& a, const std::complex<Real>& b) {
    return abs(a - b) < Real(1e-35) * (Real(1) + abs(b));
  };
  CHECK(close(eval_plain(make_exp(), z), exp(z)));
  CHECK(close(eval_plain(make_sin(), z), sin(z)));
  CHECK(close(eval_plain(make_cosh(), z), cosh(z)));
  CHECK(close(eval_plain(make_zexpz(), z), z * exp(z)));
  CHECK(close(eval_plain(make_aexpb("2", "3"), z), Real(2) * exp(z) + Real(3)));
  CHECK(close(eval_plain(make_monomial("1", 4), z), z * z * z * z));
  CHECK(close(deriv_plain(make_sin(), z), cos(z)));
  CHECK(close(deriv_plain(make_zexpz(), z), (std::complex<Real>(1) + z) * exp(z)));
}

TEST_CASE("series function from coefficient file") {
  std::string path = "series_fixture.txt";
  {
    std::ofstream out(path);
    out << "# z^2\n2 1 0\n";
  }
  auto f = load_series(path);
  std::complex<Real> z(Real(3), Real(4));
  auto w = eval_plain(f, z);
  CHECK(abs(w - z * z) < Real(1e-30));
  auto d = deriv_plain(f, z);
  CHECK(abs(d - Real(2) * z) < Real(1e-30));
  CHECK(!f.has_log_eval());
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_series("no-such-file.txt"), AnnularError);
}

TEST_CASE("hybrid evaluation: plain and log-polar agree near the switch") {
  auto f = make_exp();
  // moderate point: both paths are exact enough to cross-check
  ComplexPoint p = ComplexPoint::cartesian(Real(3), Real(1));
  ComplexPoint plain = evaluate(f, p);
  ComplexPoint lp = ComplexPoint::polar(p.logmod, p.arg);
  lp.plain = false; // force the asymptotic path
  ComplexPoint wide = evaluate(f, lp);
  CHECK(((plain.logmod - wide.logmod) / abs(plain.logmod)).to_double() ==
        doctest::Approx(0.0).epsilon(1e-25));
  CHECK(static_cast<double>(abs(plain.arg - wide.arg)) ==
        doctest::Approx(0.0).epsilon(1e-25));
}

TEST_CASE("evaluation beyond plain range keeps the log-polar form") {
  auto f = make_exp();
  // |z| = e^1618: cartesian form impossible in double, fine in log-polar
  ComplexPoint p = ComplexPoint::polar(WideReal(1618.1779919126535), Real(0.5));
  ComplexPoint q = evaluate(f, p);
  CHECK(q.logmod.exp2() > BigInt(2300)); // log|e^z| = Re z ~ e^1618
  CHECK(!q.arg_known); // Im z ~ e^1618 overwhelms 2*pi reduction at 40 digits

  // with the argument gone the orbit must truncate
  CHECK_THROWS_AS(evaluate(f, q), RangeExceeded);

  // on the positive real axis the argument survives to any height
  ComplexPoint pr = ComplexPoint::polar(WideReal(1618.1779919126535), Real(0));
  ComplexPoint qr = evaluate(f, pr);
  CHECK(qr.arg_known);
  CHECK(static_cast<double>(qr.arg) == doctest::Approx(0.0));
}

TEST_CASE("monomial log-polar evaluation is exact at any width") {
  auto f = make_monomial("1", 12);
  ComplexPoint p = ComplexPoint::polar(exp_w(WideReal(100.0)), Real(0.5));
  ComplexPoint q = evaluate(f, p);
  WideReal expect = p.logmod * 12.0;
  CHECK(((q.logmod - expect) / expect).to_double() ==
        doctest::Approx(0.0).epsilon(1e-25));
  CHECK(static_cast<double>(q.arg) == doctest::Approx(reduce_arg(Real(6.0)).convert_to<double>()));
}

TEST_CASE("aexpb dominant-term branches") {
  auto f = make_aexpb("2", "3");
  // Re z = +e^200 >> log|b|: the exponential term dominates, |w| ~ 2 e^{Re z}
  ComplexPoint hi{Real(0), Real(0), WideReal(200.0), Real(0), false, true};
  ComplexPoint qh = evaluate(f, hi);
  WideReal expect = exp_w(WideReal(200.0)) + std::log(2.0);
  CHECK(((qh.logmod - expect) / expect).to_double() ==
        doctest::Approx(0.0).epsilon(1e-20));
  // Re z = -e^200 << -log|b|: the constant dominates, w ~ b
  ComplexPoint lo{Real(0), Real(0), WideReal(200.0),
                  boost::math::constants::pi<Real>(), false, true};
  ComplexPoint ql = evaluate(f, lo);
  CHECK(ql.plain);
  CHECK(static_cast<double>(ql.re) == doctest::Approx(3.0));
}
