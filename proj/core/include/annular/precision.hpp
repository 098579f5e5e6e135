#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace annular {

namespace mp = boost::multiprecision;

// Working real for oracle sampling and chain arithmetic. 40 decimal digits
// (~133 mantissa bits); the mpfr exponent spans +-2^62, wider magnitudes go
// through WideReal.
using Real = mp::number<mp::mpfr_float_backend<40>, mp::et_off>;

// High-precision tiers for the backward-orbit realizer, where verifying a
// forward orbit requires reducing numbers of size exp(2000) mod 2*pi.
using RealHP = mp::number<mp::mpfr_float_backend<1250>, mp::et_off>;
using RealHP2 = mp::number<mp::mpfr_float_backend<2500>, mp::et_off>;

using BigInt = mp::cpp_int;

template <typename R>
constexpr long mantissa_bits() {
  return static_cast<long>(std::numeric_limits<R>::digits);
}

} // namespace annular
