#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/fpclassify.hpp>

#include "annular/precision.hpp"

namespace annular {

// A floating value m * 2^e with |m| in [1,2) and an arbitrary-precision
// exponent. Radii in this code base are doubly-exponential in the iteration
// depth, so log-radii routinely overflow any fixed-width exponent; this type
// carries them until the exponent itself exceeds `exponent_bit_cap`, at which
// point the value saturates and the flag propagates through all arithmetic.
//
// Saturated values order like +/- infinity, which keeps downstream
// comparisons (annulus membership, min-modulus predicates) meaningful on
// truncated data.
template <typename R>
class WideRealT {
public:
  // ~2^65536; enough for five max-modulus iterations of exp from a moderate
  // seed, after which a sixth would need a multi-kilobyte exponent.
  static constexpr unsigned exponent_bit_cap = 1u << 16;

  WideRealT() : mant_(0), exp2_(0), sat_(false) {}

  WideRealT(double v) { *this = from_real(R(v)); }
  WideRealT(int v) { *this = from_real(R(v)); }
  WideRealT(long v) { *this = from_real(R(v)); }
  WideRealT(const R& v) { *this = from_real(v); }

  static WideRealT from_real(const R& x) {
    WideRealT w;
    if (x == 0) return w;
    if (!boost::math::isfinite(x)) return saturated_value(x > 0 ? +1 : -1);
    long e = 0;
    R m = frexp(x, &e); // |m| in [0.5,1)
    w.mant_ = m * 2;
    w.exp2_ = e - 1;
    return w;
  }

  static WideRealT from_bigint(const BigInt& v) {
    if (v == 0) return WideRealT();
    if (mp::msb(abs(v)) + 1 > exponent_bit_cap * 8) // absurdly large input
      return saturated_value(v > 0 ? +1 : -1);
    return from_real(static_cast<R>(v));
  }

  static WideRealT saturated_value(int sign) {
    WideRealT w;
    w.mant_ = sign >= 0 ? 1 : -1;
    w.sat_ = true;
    return w;
  }

  bool saturated() const { return sat_; }
  bool is_zero() const { return !sat_ && mant_ == 0; }
  int sign() const {
    if (mant_ > 0) return 1;
    if (mant_ < 0) return -1;
    return 0;
  }

  const R& mantissa() const { return mant_; }
  const BigInt& exp2() const { return exp2_; }

  // Exact when the exponent fits mpfr's range (emax defaults to 2^30 - 1;
  // some slack is kept for downstream arithmetic on the converted value).
  bool fits_real() const {
    return !sat_ && (is_zero() || abs(exp2_) < (BigInt(1) << 30) - 4096);
  }

  R to_real() const {
    if (sat_ || !fits_real())
      return sign() >= 0 ? std::numeric_limits<R>::infinity()
                         : -std::numeric_limits<R>::infinity();
    if (is_zero()) return R(0);
    return ldexp(mant_, static_cast<long>(exp2_));
  }

  double to_double() const {
    if (is_zero()) return 0.0;
    if (sat_ || exp2_ > 1020)
      return sign() >= 0 ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
    if (exp2_ < -1060) return 0.0;
    return std::ldexp(static_cast<double>(mant_), static_cast<int>(exp2_));
  }

  template <typename R2>
  WideRealT<R2> to() const {
    WideRealT<R2> w;
    if (sat_) return WideRealT<R2>::saturated_value(sign());
    if (is_zero()) return w;
    return WideRealT<R2>::make_raw(static_cast<R2>(mant_), exp2_);
  }

  static WideRealT make_raw(const R& mant, const BigInt& e2) {
    WideRealT w = from_real(mant);
    if (!w.is_zero() && !w.sat_) {
      w.exp2_ += e2;
      w.check_cap();
    }
    return w;
  }

  WideRealT operator-() const {
    WideRealT w = *this;
    w.mant_ = -w.mant_;
    return w;
  }

  friend WideRealT abs(const WideRealT& a) {
    WideRealT w = a;
    w.mant_ = abs(w.mant_);
    return w;
  }

  friend WideRealT operator+(const WideRealT& a, const WideRealT& b) {
    if (a.sat_) return a;
    if (b.sat_) return b;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // Align to the larger exponent; a shift beyond the mantissa width makes
    // the smaller operand invisible.
    const WideRealT* hi = &a;
    const WideRealT* lo = &b;
    if (b.exp2_ > a.exp2_) std::swap(hi, lo);
    BigInt d = hi->exp2_ - lo->exp2_;
    if (d > mantissa_bits<R>() + 8) return *hi;
    R sum = hi->mant_ + ldexp(lo->mant_, -static_cast<long>(d));
    return make_raw(sum, hi->exp2_);
  }

  friend WideRealT operator-(const WideRealT& a, const WideRealT& b) {
    return a + (-b);
  }

  friend WideRealT operator*(const WideRealT& a, const WideRealT& b) {
    if (a.sat_ || b.sat_) {
      int s = a.sign() * b.sign();
      return saturated_value(s == 0 ? 1 : s);
    }
    if (a.is_zero() || b.is_zero()) return WideRealT();
    WideRealT w = make_raw(a.mant_ * b.mant_, a.exp2_ + b.exp2_);
    return w;
  }

  friend WideRealT operator/(const WideRealT& a, const WideRealT& b) {
    if (b.is_zero()) throw std::domain_error("WideReal division by zero");
    if (a.sat_ || b.sat_) {
      int s = a.sign() * b.sign();
      return saturated_value(s == 0 ? 1 : s);
    }
    if (a.is_zero()) return WideRealT();
    return make_raw(a.mant_ / b.mant_, a.exp2_ - b.exp2_);
  }

  friend WideRealT operator*(const WideRealT& a, const R& s) {
    return a * from_real(s);
  }
  friend WideRealT operator*(const R& s, const WideRealT& a) {
    return a * from_real(s);
  }
  friend WideRealT operator*(const WideRealT& a, double s) {
    return a * from_real(R(s));
  }
  friend WideRealT operator*(double s, const WideRealT& a) {
    return a * from_real(R(s));
  }
  friend WideRealT operator/(const WideRealT& a, double s) {
    return a / from_real(R(s));
  }
  friend WideRealT operator+(const WideRealT& a, double s) {
    return a + from_real(R(s));
  }
  friend WideRealT operator-(const WideRealT& a, double s) {
    return a - from_real(R(s));
  }

  // Three-way compare; saturated values behave like signed infinities.
  friend int cmp(const WideRealT& a, const WideRealT& b) {
    int sa = a.sign(), sb = b.sign();
    if (a.sat_ || b.sat_) {
      double va = a.sat_ ? (sa >= 0 ? 2.0 : -2.0) : (sa > 0 ? 1.0 : (sa < 0 ? -1.0 : 0.0));
      double vb = b.sat_ ? (sb >= 0 ? 2.0 : -2.0) : (sb > 0 ? 1.0 : (sb < 0 ? -1.0 : 0.0));
      return va < vb ? -1 : (va > vb ? 1 : 0);
    }
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    if (a.exp2_ != b.exp2_) {
      bool lt = a.exp2_ < b.exp2_;
      if (sa > 0) return lt ? -1 : 1;
      return lt ? 1 : -1;
    }
    if (a.mant_ == b.mant_) return 0;
    return a.mant_ < b.mant_ ? -1 : 1;
  }

  friend bool operator<(const WideRealT& a, const WideRealT& b) { return cmp(a, b) < 0; }
  friend bool operator>(const WideRealT& a, const WideRealT& b) { return cmp(a, b) > 0; }
  friend bool operator<=(const WideRealT& a, const WideRealT& b) { return cmp(a, b) <= 0; }
  friend bool operator>=(const WideRealT& a, const WideRealT& b) { return cmp(a, b) >= 0; }
  friend bool operator==(const WideRealT& a, const WideRealT& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const WideRealT& a, const WideRealT& b) { return cmp(a, b) != 0; }

  // exp of a wide value. For arguments within mpfr's comfort zone this is a
  // straight call; beyond that the integer part of x*log2(e) becomes the new
  // exponent directly.
  friend WideRealT exp_w(const WideRealT& x) {
    if (x.sat_) return x.sign() >= 0 ? x : saturated_value(-1);
    if (x.is_zero()) return WideRealT(1.0);
    // mpfr overflows exp(x) for x beyond ~0.69 * 2^30; stay well inside.
    if (x.fits_real() && x.exp2_ < 29) {
      R xr = x.to_real();
      return from_real(exp(xr));
    }
    bool neg = x.sign() < 0;
    WideRealT ax = abs(x);
    WideRealT y = ax * from_real(log2_e());
    // y = m*2^E with E >= ~57, so the integer part dominates.
    BigInt E = y.exp2_;
    // N below has ~E bits; bail before materializing anything enormous.
    if (E > exponent_bit_cap)
      return neg ? WideRealT() : saturated_value(+1);
    const long P = mantissa_bits<R>() - 2;
    BigInt N;
    R frac(0);
    if (E <= P) {
      R scaled = ldexp(y.mant_, static_cast<long>(E));
      R fl = floor(scaled);
      N = floor_to_bigint(fl);
      frac = scaled - fl;
    } else {
      // The fractional part of y sits entirely below the mantissa: unknown,
      // and irrelevant at this magnitude.
      R scaled = ldexp(y.mant_, P);
      N = floor_to_bigint(floor(scaled));
      N <<= static_cast<unsigned long>(E - P);
    }
    if (mp::msb(N) + 1 > exponent_bit_cap)
      return neg ? WideRealT() : saturated_value(+1);
    R m = pow(R(2), frac); // in [1,2)
    WideRealT r = make_raw(m, N);
    if (neg) return WideRealT(1.0) / r;
    return r;
  }

  friend WideRealT log_w(const WideRealT& x) {
    if (x.sat_) {
      if (x.sign() < 0) throw std::domain_error("log of negative saturated value");
      return x;
    }
    if (x.sign() <= 0) throw std::domain_error("log of non-positive WideReal");
    if (x.fits_real()) return from_real(log(x.to_real()));
    WideRealT e = from_bigint(x.exp2_);
    return e * from_real(ln_2()) + from_real(log(x.mant_));
  }

  friend WideRealT sqrt_w(const WideRealT& x) {
    if (x.sat_) {
      if (x.sign() < 0) throw std::domain_error("sqrt of negative saturated value");
      return x;
    }
    if (x.sign() < 0) throw std::domain_error("sqrt of negative WideReal");
    if (x.is_zero()) return x;
    BigInt e = x.exp2_;
    R m = x.mant_;
    if (e % 2 != 0) {
      m *= 2;
      e -= 1;
    }
    return make_raw(sqrt(m), e / 2);
  }

  // Canonical, deterministic serialization. Values whose exponent fits a
  // double print as plain scientific notation; wider ones use an exact
  // "<mantissa>p<exp2>" power-of-two form.
  std::string str() const {
    if (sat_) return sign() >= 0 ? "sat+" : "sat-";
    if (is_zero()) return "0";
    if (exp2_ >= -1020 && exp2_ <= 1020) {
      R v = to_real();
      return v.str(0, std::ios_base::scientific);
    }
    return mant_.str(0, std::ios_base::scientific) + "p" + exp2_.str();
  }

  static WideRealT parse(const std::string& s) {
    if (s == "sat+") return saturated_value(+1);
    if (s == "sat-") return saturated_value(-1);
    if (s == "0") return WideRealT();
    auto p = s.find('p');
    if (p == std::string::npos) return from_real(R(s));
    R m(s.substr(0, p));
    BigInt e(s.substr(p + 1));
    return make_raw(m, e);
  }

  // log10 of |value| as a double, for human-facing summaries; +-inf when
  // saturated.
  double approx_log10() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    if (sat_) return std::numeric_limits<double>::infinity();
    double e = static_cast<double>(static_cast<R>(exp2_));
    return e * 0.30102999566398120 +
           static_cast<double>(log10(abs(mant_)));
  }

private:
  // mpfr -> cpp_int has no direct numeric conversion; round-trip through a
  // fixed-notation string (exact, the input is an integer).
  static BigInt floor_to_bigint(const R& fl) {
    std::string s = fl.str(0, std::ios_base::fixed);
    auto dot = s.find('.');
    if (dot != std::string::npos) s.resize(dot);
    return BigInt(s);
  }

  static const R& log2_e() {
    static const R v = R(1) / log(R(2));
    return v;
  }
  static const R& ln_2() {
    static const R v = log(R(2));
    return v;
  }

  void check_cap() {
    if (is_zero() || sat_) return;
    BigInt a = abs(exp2_);
    if (a != 0 && mp::msb(a) + 1 > exponent_bit_cap) {
      sat_ = true;
    }
  }

  R mant_;
  BigInt exp2_;
  bool sat_;
};

using WideReal = WideRealT<Real>;

} // namespace annular
