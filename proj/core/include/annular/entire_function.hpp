#pragma once

#include <algorithm>
#include <complex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "annular/errors.hpp"
#include "annular/point.hpp"
#include "annular/precision.hpp"
#include "annular/wide_real.hpp"

namespace annular {

enum class MCClass { HasMC, NoMC, Unknown };

enum class FnKind { Exp, AExpB, Sin, Cosh, ZExpZ, Series, Monomial };

// An evaluatable entire function. Parameters are stored as decimal strings so
// the same function can be re-instantiated at any working precision without
// rounding through a fixed-width type.
struct EntireFunction {
  std::string id;
  FnKind kind = FnKind::Exp;
  MCClass mc = MCClass::Unknown;
  std::string pa = "1"; // AExpB: a; Monomial: coefficient
  std::string pb = "0"; // AExpB: b
  int degree = 1;       // Monomial
  std::vector<std::tuple<long, std::string, std::string>> coeffs; // Series: (index, re, im)

  bool has_exact_logM() const { return kind == FnKind::Exp || kind == FnKind::Monomial; }
  bool has_exact_logm() const { return kind == FnKind::Exp || kind == FnKind::Monomial; }
  bool has_log_eval() const { return kind != FnKind::Series; }
  bool has_inverse_branch() const { return kind == FnKind::Exp; }
};

EntireFunction make_exp();
EntireFunction make_aexpb(const std::string& a, const std::string& b);
EntireFunction make_sin();
EntireFunction make_cosh();
EntireFunction make_zexpz();
EntireFunction make_monomial(const std::string& coeff, int degree);
EntireFunction make_exp_plus(const std::string& b);
EntireFunction load_series(const std::string& path);
std::vector<EntireFunction> builtin_catalog(const std::string& series_path = "");
const EntireFunction* find_function(const std::vector<EntireFunction>& cat,
                                    const std::string& id);

template <typename R>
R parse_real(const std::string& s) {
  return R(s);
}

// Largest |exponent argument| fed to a plain exp/sin at working precision;
// beyond this the log-polar path takes over.
template <typename R>
R plain_exp_limit() {
  static const R v = R("1e18");
  return v;
}

// Largest argument fed to a plain exponential along its growth direction.
// mpfr's default exponent cap overflows exp(x) to infinity near x ~ 7.4e8
// regardless of mantissa precision, so this stays well below that.
template <typename R>
R plain_growth_limit() {
  static const R v = R("6e8");
  return v;
}

// Largest argument fed to a plain sin/cos along the oscillatory direction.
// mpfr reduces trig arguments exactly; the cost is proportional to the
// argument's exponent, so this stays where the reduction is still cheap.
template <typename R>
R plain_trig_limit() {
  static const R v = R("1e100");
  return v;
}

template <typename R>
std::complex<R> eval_plain(const EntireFunction& f, const std::complex<R>& z) {
  using C = std::complex<R>;
  switch (f.kind) {
    case FnKind::Exp:
      return exp(z);
    case FnKind::AExpB:
      return parse_real<R>(f.pa) * exp(z) + parse_real<R>(f.pb);
    case FnKind::Sin:
      return sin(z);
    case FnKind::Cosh:
      return cosh(z);
    case FnKind::ZExpZ:
      return z * exp(z);
    case FnKind::Monomial: {
      C w = parse_real<R>(f.pa);
      for (int i = 0; i < f.degree; ++i) w *= z;
      return w;
    }
    case FnKind::Series: {
      C acc(0);
      for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) {
        // Horner over the sparse index list
        long idx = std::get<0>(*it);
        long next = (it + 1 == f.coeffs.rend()) ? 0 : std::get<0>(*(it + 1));
        acc += C(parse_real<R>(std::get<1>(*it)), parse_real<R>(std::get<2>(*it)));
        for (long i = next; i < idx; ++i) acc *= z;
      }
      return acc;
    }
  }
  throw DomainError("unknown function kind");
}

template <typename R>
std::complex<R> deriv_plain(const EntireFunction& f, const std::complex<R>& z) {
  using C = std::complex<R>;
  switch (f.kind) {
    case FnKind::Exp:
      return exp(z);
    case FnKind::AExpB:
      return parse_real<R>(f.pa) * exp(z);
    case FnKind::Sin:
      return cos(z);
    case FnKind::Cosh:
      return sinh(z);
    case FnKind::ZExpZ:
      return (C(1) + z) * exp(z);
    case FnKind::Monomial: {
      if (f.degree == 0) return C(0);
      C w = parse_real<R>(f.pa) * R(f.degree);
      for (int i = 0; i < f.degree - 1; ++i) w *= z;
      return w;
    }
    case FnKind::Series: {
      C acc(0);
      for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) {
        long idx = std::get<0>(*it);
        if (idx == 0) continue;
        C term(parse_real<R>(std::get<1>(*it)), parse_real<R>(std::get<2>(*it)));
        term *= R(idx);
        C p(1);
        for (long i = 0; i < idx - 1; ++i) p *= z;
        acc += term * p;
      }
      return acc;
    }
  }
  throw DomainError("unknown function kind");
}

namespace detail {

// Reduce a wide magnitude w mod 2*pi when it carries enough absolute
// precision to make the residue meaningful; otherwise report unknown.
template <typename R>
bool reduce_wide_arg(const WideRealT<R>& w, R& out) {
  if (w.is_zero()) {
    out = 0;
    return true;
  }
  if (w.saturated() || !w.fits_real()) return false;
  // need ulp(|w|) << 2*pi: exponent must leave fractional bits
  if (w.exp2() > mantissa_bits<R>() - 24) return false;
  out = reduce_arg(w.to_real());
  return true;
}

} // namespace detail

// Hybrid evaluation: plain complex arithmetic while representable, log-polar
// asymptotics beyond that. Throws RangeExceeded when neither form suffices —
// the caller truncates the orbit.
template <typename R>
ComplexPointT<R> evaluate(const EntireFunction& f, const ComplexPointT<R>& p) {
  using W = WideRealT<R>;
  if (!p.arg_known) throw RangeExceeded("argument of input no longer known");

  if (p.plain) {
    bool safe = true;
    switch (f.kind) {
      case FnKind::Exp:
      case FnKind::AExpB:
      case FnKind::Cosh:
      case FnKind::ZExpZ:
        safe = abs(p.re) < plain_growth_limit<R>() && abs(p.im) < plain_trig_limit<R>();
        break;
      case FnKind::Sin:
        safe = abs(p.im) < plain_growth_limit<R>() && abs(p.re) < plain_trig_limit<R>();
        break;
      case FnKind::Monomial:
      case FnKind::Series: {
        long dmax = f.degree;
        for (const auto& c : f.coeffs) dmax = std::max(dmax, std::get<0>(c));
        if (p.is_zero()) {
          safe = true;
        } else {
          W ld = p.logmod * R(std::max<long>(1, dmax));
          safe = !ld.saturated() && ld.fits_real() &&
                 abs(ld.to_real()) < plain_growth_limit<R>();
        }
        break;
      }
    }
    if (safe) return ComplexPointT<R>::cartesian(eval_plain(f, p.to_complex()));
  }

  if (!f.has_log_eval()) throw RangeExceeded("no log-domain evaluation for " + f.id);

  // log-polar asymptotics; |z| here is astronomically large so dominant-term
  // error is far below working precision.
  const W& L = p.logmod;
  if (L.saturated()) throw RangeExceeded("input modulus saturated");
  W mod = exp_w(L);
  R c = cos(p.arg), s = sin(p.arg);
  W x = mod * c; // Re z
  W y = mod * s; // Im z

  switch (f.kind) {
    case FnKind::Exp: {
      R a;
      bool ok = detail::reduce_wide_arg(y, a);
      return ComplexPointT<R>::polar(x, ok ? a : R(0), ok);
    }
    case FnKind::AExpB: {
      R av = parse_real<R>(f.pa);
      R bv = parse_real<R>(f.pb);
      W logb = bv == 0 ? W::saturated_value(-1) : W::from_real(log(abs(bv)));
      if (x > logb + 60.0) {
        R a;
        bool ok = detail::reduce_wide_arg(y, a);
        if (ok && av < 0) a = reduce_arg(a + boost::math::constants::pi<R>());
        return ComplexPointT<R>::polar(x + log(abs(av)), ok ? a : R(0), ok);
      }
      if (bv != 0 && x < logb - 60.0)
        return ComplexPointT<R>::cartesian(bv, R(0));
      throw RangeExceeded("aexpb: no dominant term at this magnitude");
    }
    case FnKind::Sin: {
      if (abs(y) < W(60.0)) throw RangeExceeded("sin: imaginary part too small for asymptotics");
      // sin z ~ exp(|y|)/2 with phase +-(pi/2) -+ x
      R a;
      bool ok = detail::reduce_wide_arg(x, a);
      R half_pi = boost::math::constants::half_pi<R>();
      R ph = 0;
      if (ok) ph = y.sign() > 0 ? reduce_arg(half_pi - a) : reduce_arg(a - half_pi);
      return ComplexPointT<R>::polar(abs(y) - log(R(2)), ph, ok);
    }
    case FnKind::Cosh: {
      if (abs(x) < W(60.0)) throw RangeExceeded("cosh: real part too small for asymptotics");
      R a;
      bool ok = detail::reduce_wide_arg(y, a);
      R ph = 0;
      if (ok) ph = x.sign() > 0 ? a : reduce_arg(-a);
      return ComplexPointT<R>::polar(abs(x) - log(R(2)), ph, ok);
    }
    case FnKind::ZExpZ: {
      R a;
      bool ok = detail::reduce_wide_arg(y, a);
      return ComplexPointT<R>::polar(L + x, ok ? reduce_arg(p.arg + a) : R(0), ok);
    }
    case FnKind::Monomial: {
      R cf = parse_real<R>(f.pa);
      W lm = L * R(f.degree) + log(abs(cf));
      R a = reduce_arg(p.arg * f.degree);
      if (cf < 0) a = reduce_arg(a + boost::math::constants::pi<R>());
      return ComplexPointT<R>::polar(lm, a, true);
    }
    case FnKind::Series:
      break;
  }
  throw RangeExceeded("no evaluation path for " + f.id);
}

template <typename R>
ComplexPointT<R> derivative(const EntireFunction& f, const ComplexPointT<R>& p) {
  if (!p.plain) throw RangeExceeded("derivative requires plain-representable input");
  return ComplexPointT<R>::cartesian(deriv_plain(f, p.to_complex()));
}

// Closed-form overrides for log M(e^t) / log m(e^t), valid at any width.
template <typename R>
std::optional<WideRealT<R>> exact_log_max_modulus(const EntireFunction& f,
                                                  const WideRealT<R>& t) {
  switch (f.kind) {
    case FnKind::Exp:
      return exp_w(t);
    case FnKind::Monomial:
      return t * R(f.degree) + log(abs(parse_real<R>(f.pa)));
    default:
      return std::nullopt;
  }
}

template <typename R>
std::optional<WideRealT<R>> exact_log_min_modulus(const EntireFunction& f,
                                                  const WideRealT<R>& t) {
  switch (f.kind) {
    case FnKind::Exp:
      return -exp_w(t);
    case FnKind::Monomial:
      return t * R(f.degree) + log(abs(parse_real<R>(f.pa)));
    default:
      return std::nullopt;
  }
}

} // namespace annular
