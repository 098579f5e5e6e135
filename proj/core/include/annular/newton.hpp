#pragma once

#include <complex>
#include <optional>

#include "annular/entire_function.hpp"
#include "annular/point.hpp"

namespace annular {

template <typename R>
std::optional<std::complex<R>> newton_root(const EntireFunction& f,
                                           const std::complex<R>& w,
                                           std::complex<R> z, double tol_rel,
                                           int max_iter = 80) {
  using C = std::complex<R>;
  R scale = std::max(R(1), abs(w));
  for (int i = 0; i < max_iter; ++i) {
    C fv = eval_plain(f, z) - w;
    if (abs(fv) <= R(tol_rel) * scale) return z;
    C dv = deriv_plain(f, z);
    if (abs(dv) == 0) return std::nullopt;
    C step = fv / dv;
    // damp wild steps to keep the iterate in a sane region
    R sl = abs(step);
    if (sl > R(10)) step *= R(10) / sl;
    z -= step;
  }
  return std::nullopt;
}

// Multistart over a log-polar seed grid in the annulus t_in < log|z| < t_out;
// returns a root inside the (slightly padded) annulus if any start converges.
template <typename R>
std::optional<std::complex<R>> newton_multistart_annulus(
    const EntireFunction& f, const std::complex<R>& w, const R& t_in,
    const R& t_out, int seeds, double tol_rel, double region_pad = 1e-9) {
  for (int i = 0; i < seeds; ++i) {
    for (int j = 0; j < seeds; ++j) {
      R lt = t_in + (t_out - t_in) * R(i + 1) / R(seeds + 1);
      R th = two_pi<R>() * R(j) / R(seeds);
      std::complex<R> z0 = exp(lt) * std::complex<R>(cos(th), sin(th));
      auto z = newton_root(f, w, z0, tol_rel);
      if (!z) continue;
      R lm = log(abs(*z));
      if (lm > t_in - R(region_pad) && lm < t_out + R(region_pad)) return z;
    }
  }
  return std::nullopt;
}

} // namespace annular
