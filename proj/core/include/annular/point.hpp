#pragma once

#include <complex>

#include <boost/math/constants/constants.hpp>

#include "annular/precision.hpp"
#include "annular/wide_real.hpp"

namespace annular {

template <typename R>
R two_pi() {
  static const R v = 2 * boost::math::constants::pi<R>();
  return v;
}

template <typename R>
R reduce_arg(const R& a) {
  R t = fmod(a, two_pi<R>());
  if (t < 0) t += two_pi<R>();
  return t;
}

// A point of the plane carrying both a Cartesian form (when representable)
// and a log-polar form (always, for the modulus; the argument may be unknown
// after an evaluation whose input modulus exceeded argument-reduction
// precision).
template <typename R>
struct ComplexPointT {
  R re{0}, im{0};
  WideRealT<R> logmod = WideRealT<R>::saturated_value(-1); // log|0| = -inf
  R arg{0};
  bool plain = true;     // re/im valid
  bool arg_known = true; // arg valid

  static ComplexPointT cartesian(const R& re, const R& im) {
    ComplexPointT p;
    p.re = re;
    p.im = im;
    if (re != 0 || im != 0) {
      p.logmod = WideRealT<R>::from_real(log(hypot(re, im)));
      p.arg = reduce_arg(atan2(im, re));
    }
    return p;
  }

  static ComplexPointT cartesian(const std::complex<R>& z) {
    return cartesian(z.real(), z.imag());
  }

  // Construct from log-polar; fills the Cartesian form when the modulus is
  // representable as a plain number.
  static ComplexPointT polar(const WideRealT<R>& logmod, const R& arg,
                             bool arg_known = true) {
    ComplexPointT p;
    p.logmod = logmod;
    p.arg = reduce_arg(arg);
    p.arg_known = arg_known;
    if (logmod.fits_real() && !logmod.saturated()) {
      R lm = logmod.to_real();
      // exp(lm) must stay inside mpfr's exponent range (emax ~ 2^30, so the
      // modulus overflows to infinity past lm ~ 7.4e8)
      if (abs(lm) < R("6e8")) {
        R m = exp(lm);
        p.re = m * cos(p.arg);
        p.im = m * sin(p.arg);
        return p;
      }
    }
    p.plain = false;
    return p;
  }

  std::complex<R> to_complex() const { return {re, im}; }

  bool is_zero() const { return plain && re == 0 && im == 0; }

  template <typename R2>
  ComplexPointT<R2> to() const {
    ComplexPointT<R2> q;
    q.re = static_cast<R2>(re);
    q.im = static_cast<R2>(im);
    q.logmod = logmod.template to<R2>();
    q.arg = static_cast<R2>(arg);
    q.plain = plain;
    q.arg_known = arg_known;
    return q;
  }
};

using ComplexPoint = ComplexPointT<Real>;

} // namespace annular
