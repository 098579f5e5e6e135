#include "annular/covering.hpp"

#include <algorithm>
#include <cmath>

#include "annular/errors.hpp"
#include "annular/newton.hpp"
#include "annular/parallel.hpp"
#include "annular/point.hpp"
#include "annular/radial_moduli.hpp"

namespace annular {

namespace {

using C = std::complex<Real>;

const Real& pi_r() {
  static const Real v = boost::math::constants::pi<Real>();
  return v;
}

double wide_margin(const WideReal& d) {
  double v = d.to_double();
  if (std::isinf(v)) v = v > 0 ? 1e300 : -1e300;
  return v;
}

// ---- winding of f - w along a circle, adaptive argument tracking ----

struct WindAcc {
  Real total = 0;
  bool near_boundary = false;
  bool imprecise = false;
};

Real arg_diff(const C& a, const C& b) {
  // principal argument of b/a
  return atan2(b.imag() * a.real() - b.real() * a.imag(),
               b.real() * a.real() + b.imag() * a.imag());
}

void wind_arc(const EntireFunction& f, const Real& r, const C& w, const Real& th_a,
              const Real& th_b, const C& fa, const C& fb, int depth, WindAcc& acc,
              const Real& near_tol) {
  Real d = arg_diff(fa, fb);
  if (abs(d) <= pi_r() / 2 || depth >= 24) {
    if (abs(d) > pi_r() / 2) acc.imprecise = true;
    acc.total += d;
    return;
  }
  Real mid = (th_a + th_b) / 2;
  C z(r * cos(mid), r * sin(mid));
  C fm = eval_plain(f, z) - w;
  if (abs(fm) < near_tol) acc.near_boundary = true;
  wind_arc(f, r, w, th_a, mid, fa, fm, depth + 1, acc, near_tol);
  wind_arc(f, r, w, mid, th_b, fm, fb, depth + 1, acc, near_tol);
}

WindAcc circle_winding(const EntireFunction& f, const Real& t, const C& w) {
  const int n0 = 64;
  Real r = exp(t);
  std::vector<C> vals(n0);
  Real maxm = 0;
  for (int i = 0; i < n0; ++i) {
    Real th = two_pi<Real>() * i / n0;
    C z(r * cos(th), r * sin(th));
    vals[i] = eval_plain(f, z) - w;
    maxm = std::max(maxm, Real(abs(vals[i])));
  }
  Real near_tol = maxm * Real("1e-25");
  WindAcc acc;
  for (int i = 0; i < n0; ++i) {
    if (abs(vals[i]) < near_tol) acc.near_boundary = true;
    Real a = two_pi<Real>() * i / n0;
    Real b = two_pi<Real>() * (i + 1) / n0;
    wind_arc(f, r, w, a, b, vals[i], vals[(i + 1) % n0], 0, acc, near_tol);
  }
  return acc;
}

} // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Covers: return "covers";
    case Verdict::Fails: return "fails";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

CoveringCertificate verify_annulus_covering(const EntireFunction& f,
                                            const Annulus& source,
                                            const Annulus& target, double tol) {
  if (!(source.t_in < source.t_out) || !(target.t_in < target.t_out))
    throw DomainError("annulus requires t_in < t_out");
  CoveringCertificate c;
  c.source = source;
  c.target = target;
  try {
    c.inner_logM = log_max_modulus(f, source.t_in);
    auto m = log_min_modulus(f, source.t_out);
    c.outer_logm = m.zero_on_circle ? WideReal::saturated_value(-1) : m.logm;
    double m1 = wide_margin(target.t_in - c.inner_logM);
    double m2 = wide_margin(c.outer_logm - target.t_out);
    c.margin = std::min(m1, m2);
    if (c.margin > tol)
      c.verdict = Verdict::Covers;
    else if (c.margin < -tol)
      c.verdict = Verdict::Fails;
    else
      c.verdict = Verdict::Indeterminate;
  } catch (const RangeExceeded&) {
    c.verdict = Verdict::Indeterminate;
  }
  return c;
}

std::optional<WideReal> find_small_min_modulus(const EntireFunction& f,
                                               const WideReal& t_lo,
                                               const WideReal& t_hi, double tol,
                                               int n_grid) {
  if (!(t_lo < t_hi)) throw DomainError("find_small_min_modulus: t_lo >= t_hi");
  WideReal best_t = t_lo;
  WideReal best_m = WideReal::saturated_value(+1);
  WideReal span = t_hi - t_lo;
  for (int i = 0; i < n_grid; ++i) {
    WideReal t = t_lo + span * ((i + 0.5) / n_grid);
    auto m = log_min_modulus(f, t, tol, 256);
    WideReal lm = m.zero_on_circle ? WideReal::saturated_value(-1) : m.logm;
    if (lm < best_m) {
      best_m = lm;
      best_t = t;
    }
  }
  if (best_m <= WideReal(0.0)) return best_t;
  if (best_m < WideReal(tol))
    throw Indeterminate("sampled min modulus within tol of 1");
  return std::nullopt;
}

PointCover decide_preimage_in_annulus(const EntireFunction& f, const Annulus& src,
                                      const WideReal& w_logmod, double w_arg,
                                      double tol) {
  if (f.has_inverse_branch()) {
    // exp: z = log w + i(arg w + 2 pi k); pick k to land log|z| in the band.
    if (w_logmod.saturated() && w_logmod.sign() < 0) return PointCover::Uncovered;
    bool moderate = w_logmod.fits_real() && src.t_out.fits_real() &&
                    src.t_out < WideReal(1e8) &&
                    abs(w_logmod) < WideReal(1e15);
    if (!moderate) {
      // log-dominant: a preimage with Re z = log w, Im z = arg w + 2 pi k
      // exists whenever |log w| clears the outer radius; the 2 pi k ladder is
      // relatively negligible at this scale, and the imaginary part alone can
      // reach any |z| up to exp(t_out), so only the outer bound can fail.
      // Compare |log w| against exp(t_out) directly: targets can sit within a
      // sub-representable relative distance of exp(t_in) in log scale, so a
      // comparison of log|log w| against t_out would round to the wrong side.
      WideReal aw = abs(w_logmod);
      WideReal lim = src.log_width.is_zero()
                         ? exp_w(src.t_out)
                         : exp_w(src.t_in) * exp_w(src.log_width);
      if (lim.saturated() && lim.sign() > 0) return PointCover::Covered;
      if (aw < lim * (1.0 - 1e-9)) return PointCover::Covered;
      if (aw > lim * (1.0 + 1e-9)) return PointCover::Uncovered;
      return PointCover::Indeterminate;
    }
    Real lw = w_logmod.to_real();
    Real ti = src.t_in.to_real(), to = src.t_out.to_real();
    Real r_lo = exp(ti), r_hi = exp(to);
    if (abs(lw) >= r_hi) return PointCover::Uncovered;
    Real y_hi = sqrt(r_hi * r_hi - lw * lw);
    Real y_lo = abs(lw) >= r_lo ? Real(0) : sqrt(r_lo * r_lo - lw * lw);
    Real wa = Real(w_arg);
    auto try_y = [&](const Real& y) -> int {
      Real az = hypot(lw, y);
      if (az <= 0) return 0;
      Real lz = log(az);
      if (lz > ti + Real(tol) && lz < to - Real(tol)) return 1;
      if (lz > ti - Real(tol) && lz < to + Real(tol)) return 2; // near boundary
      return 0;
    };
    bool near = false;
    // candidate k just above +y_lo and just below -y_lo (and y = wa itself
    // when the low bound is 0)
    std::vector<Real> cands;
    cands.push_back(wa + two_pi<Real>() * ceil((y_lo - wa) / two_pi<Real>()));
    cands.push_back(wa + two_pi<Real>() * floor((-y_lo - wa) / two_pi<Real>()));
    cands.push_back(wa + two_pi<Real>() * ceil((-y_hi - wa) / two_pi<Real>()));
    // ladder points deep inside the band, for bands that dwarf the 2 pi step
    for (int q = 1; q <= 3; ++q) {
      Real lz_mid = ti + (to - ti) * q / 4;
      Real y_mid = exp(lz_mid);
      if (y_mid > abs(lw) * 2 && y_mid > two_pi<Real>() * 4)
        cands.push_back(wa + two_pi<Real>() * round((y_mid - wa) / two_pi<Real>()));
    }
    for (const Real& y : cands) {
      if (abs(y) > y_hi && abs(y) > y_lo) {
        // next step inward may still fit
        continue;
      }
      int v = try_y(y);
      if (v == 1) return PointCover::Covered;
      if (v == 2) near = true;
    }
    // also probe one step further in from each candidate
    for (const Real& y0 : cands) {
      for (int s = -2; s <= 2; ++s) {
        Real y = y0 + two_pi<Real>() * s;
        int v = try_y(y);
        if (v == 1) return PointCover::Covered;
        if (v == 2) near = true;
      }
    }
    return near ? PointCover::Indeterminate : PointCover::Uncovered;
  }

  // generic path: winding count, then Newton confirmation
  if (!src.t_out.fits_real() || !(src.t_out < WideReal(1e4)) ||
      !w_logmod.fits_real() || !(abs(w_logmod) < WideReal(1e15)))
    return PointCover::Indeterminate;
  Real lw = w_logmod.to_real();
  C w = exp(lw) * C(cos(Real(w_arg)), sin(Real(w_arg)));
  try {
    int n = winding_count(f, src, w);
    return n > 0 ? PointCover::Covered : PointCover::Uncovered;
  } catch (const AnnularError&) {
    auto z = newton_multistart_annulus<Real>(f, w, src.t_in.to_real(),
                                             src.t_out.to_real(), 8, tol);
    if (z) return PointCover::Covered;
    return PointCover::Indeterminate;
  }
}

PointCover annulus_covered(const EntireFunction& f, const Annulus& src,
                           const Annulus& target, int n_mod, int n_arg) {
  bool indet = false;
  WideReal span = target.t_out - target.t_in;
  for (int j = 0; j < n_mod; ++j) {
    WideReal lw = target.t_in + span * ((j + 0.5) / n_mod);
    for (int i = 0; i < n_arg; ++i) {
      double a = 2 * M_PI * (i + 0.5) / n_arg;
      PointCover pc = decide_preimage_in_annulus(f, src, lw, a);
      if (pc == PointCover::Uncovered) return PointCover::Uncovered;
      if (pc == PointCover::Indeterminate) indet = true;
    }
  }
  return indet ? PointCover::Indeterminate : PointCover::Covered;
}

int winding_count(const EntireFunction& f, const Annulus& a, const C& w) {
  if (!a.t_in.fits_real() || !a.t_out.fits_real())
    throw RangeExceeded("winding_count: annulus not plainly representable");
  WindAcc out = circle_winding(f, a.t_out.to_real(), w);
  WindAcc in = circle_winding(f, a.t_in.to_real(), w);
  if (out.near_boundary || in.near_boundary) throw BoundaryZero();
  Real total = (out.total - in.total) / two_pi<Real>();
  double td = static_cast<double>(total);
  double rounded = std::round(td);
  if (std::abs(td - rounded) > 0.1 || out.imprecise || in.imprecise)
    throw NonIntegerResidual(td - rounded);
  return static_cast<int>(rounded);
}

int count_zeros_annulus(const EntireFunction& f, const Annulus& a) {
  // deterministic perturbation sequence for boundary zeros
  unsigned long state = 0x9e3779b97f4a7c15ull;
  Annulus cur = a;
  for (int attempt = 0; attempt < 6; ++attempt) {
    try {
      return winding_count(f, cur, C(0));
    } catch (const BoundaryZero&) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      double u = 0.5 + (double)(state >> 11) / 9.0071993e15; // in [0.5, 1.5)
      double v = 0.5 + (double)((state * 2862933555777941757ull) >> 11) / 9.0071993e15;
      cur.t_in = a.t_in - WideReal(1e-6 * u);
      cur.t_out = a.t_out + WideReal(1e-6 * v);
    }
  }
  throw BoundaryZero();
}

HarnackReport harnack_analyze(const EntireFunction& f, const WideReal& t, double k,
                              const HypothesisProfile& profile, double tol) {
  if (!(k > 1)) throw DomainError("harnack_analyze: k must be > 1");
  HarnackReport rep;
  rep.t = t.to_double();
  rep.k = k;
  rep.profile = profile.name;
  rep.delta = delta_of(t);
  double d = rep.delta;

  WideReal mu_t = mu(f, t);
  rep.hyp_growth = mu_t > t * profile.growth_exponent;
  rep.hyp_sqrt = sqrt_w(t).to_double() >= profile.min_sqrt_logr;
  rep.hyp_delta = !profile.enforce_delta_caps ||
                  d < std::min(1.0 / (2 * M_PI), (k - 1) / 4.0);
  auto witness = find_small_min_modulus(f, t * (1.0 + d), t * (k - d));
  rep.hyp_mbig = !witness.has_value();

  std::vector<std::string> failed;
  if (!rep.hyp_growth) failed.push_back("growth");
  if (!rep.hyp_sqrt) failed.push_back("sqrt_logr");
  if (!rep.hyp_delta) failed.push_back("delta_cap");
  if (!rep.hyp_mbig) failed.push_back("mbig");
  if (!failed.empty()) throw HypothesisFailed(failed);

  // part (a): log m(s) >= (1 - 2 pi delta) log M(s) on a log-grid of s
  {
    WideReal s_lo = t * (1.0 + 2 * d), s_hi = t * (k - 2 * d);
    double margin = 1e300;
    int N = 9;
    for (int i = 0; i < N; ++i) {
      WideReal s = s_lo + (s_hi - s_lo) * (double(i) / (N - 1));
      auto mm = log_min_modulus(f, s);
      WideReal lm = mm.zero_on_circle ? WideReal::saturated_value(-1) : mm.logm;
      WideReal lM = log_max_modulus(f, s);
      margin = std::min(margin, wide_margin(lm - lM * (1.0 - 2 * M_PI * d)));
    }
    rep.part_a_margin = margin;
  }

  // part (b): R = M(r), R^K = M(r^{k-2d})^{1-2 pi d}, f(A(r, r^{k-2d})) >= A(R, R^K)
  rep.logR_out = mu_t;
  WideReal logRK = mu(f, t * (k - 2 * d)) * (1.0 - 2 * M_PI * d);
  rep.K = (logRK / mu_t).to_double();
  {
    Annulus src{t, t * (k - 2 * d)};
    // pad the certified target slightly inward: the raw target's inner edge
    // equals M(r) exactly, which would make the margin identically zero
    Annulus tgt{mu_t * (1.0 + 1e-6), logRK * (1.0 - 1e-6)};
    if (tgt.t_in < tgt.t_out)
      rep.outer_cert = verify_annulus_covering(f, src, tgt, tol);
    else {
      rep.outer_cert.source = src;
      rep.outer_cert.target = tgt;
      rep.outer_cert.verdict = Verdict::Indeterminate;
    }
  }

  // part (c): f(A(r^{1+6pd}, r^{k(1-6pd)})) inside A(R^{1+6pd(R)}, R^{K(1-6pd(R))})
  {
    double p6 = 6 * M_PI * d;
    WideReal a_in = t * (1.0 + p6), a_out = t * (k * (1.0 - p6));
    if (a_in < a_out) {
      rep.inside_applicable = true;
      double dR = delta_of(rep.logR_out);
      WideReal lim_lo = rep.logR_out * (1.0 + 6 * M_PI * dR);
      WideReal lim_hi = rep.logR_out * (rep.K * (1.0 - 6 * M_PI * dR));
      bool ok = true;
      for (int side = 0; side < 2 && ok; ++side) {
        WideReal lt = side == 0 ? a_in : a_out;
        for (int i = 0; i < 64 && ok; ++i) {
          auto p = ComplexPoint::polar(lt, two_pi<Real>() * i / 64);
          try {
            auto w = evaluate(f, p);
            if (w.logmod < lim_lo || w.logmod > lim_hi) ok = false;
          } catch (const RangeExceeded&) {
            ok = false;
          }
        }
      }
      rep.inside_ok = ok;
    }
  }
  return rep;
}

BohrReport bohr_analyze(const EntireFunction& f, const WideReal& t,
                        const BohrGridSpec& grid, double C0, double C1) {
  BohrReport rep;
  rep.t = t.to_double();
  static const Real ln2 = log(Real(2));
  auto sw = find_small_min_modulus(f, t + WideReal::from_real(ln2),
                                   t + WideReal::from_real(2 * ln2));
  if (!sw) throw HypothesisFailed({"no s in (2r,4r) with m(s) <= 1"});
  rep.s_witness = *sw;
  rep.grid_size = grid.n_mod * grid.n_arg;

  double r = exp(t.to_real()).convert_to<double>();
  WideReal logM = mu(f, t);
  double hi = grid.auto_range ? logM.to_double() : grid.log_hi;
  double lo = grid.auto_range ? -10.0 * std::max(1.0, r) : grid.log_lo;

  Annulus src{t, t + WideReal::from_real(3 * ln2)}; // A(r, 8r)

  std::vector<int> res(static_cast<size_t>(grid.n_mod) * grid.n_arg);
  parallel_for(res.size(), [&](size_t idx) {
    int j = static_cast<int>(idx) / grid.n_arg;
    int i = static_cast<int>(idx) % grid.n_arg;
    double lw = lo + (hi - lo) * (j + 0.5) / grid.n_mod;
    double a = 2 * M_PI * (i + 0.5) / grid.n_arg;
    res[idx] = static_cast<int>(decide_preimage_in_annulus(f, src, WideReal(lw), a));
  });
  double cx = 0, cy = 0;
  for (size_t idx = 0; idx < res.size(); ++idx) {
    int j = static_cast<int>(idx) / grid.n_arg;
    int i = static_cast<int>(idx) % grid.n_arg;
    double lw = lo + (hi - lo) * (j + 0.5) / grid.n_mod;
    double a = 2 * M_PI * (i + 0.5) / grid.n_arg;
    auto pc = static_cast<PointCover>(res[idx]);
    if (pc == PointCover::Uncovered) {
      rep.uncovered.push_back({lw, a});
      cx += std::exp(lw) * std::cos(a);
      cy += std::exp(lw) * std::sin(a);
    } else if (pc == PointCover::Indeterminate) {
      ++rep.indeterminate;
    }
  }
  rep.eps_bound = lambda_eps(f, t, C0, C1).eps;
  if (rep.uncovered.empty()) {
    rep.verdict = BohrVerdict::FullCover;
    return rep;
  }
  cx /= rep.uncovered.size();
  cy /= rep.uncovered.size();
  double cm = std::hypot(cx, cy);
  rep.w1_logmod = cm > 0 ? std::log(cm) : -1e300;
  rep.w1_arg = cm > 0 ? std::atan2(cy, cx) : 0.0;
  double radius = rep.eps_bound * std::max(cm, 1.0);
  bool all_in = true;
  for (const auto& u : rep.uncovered) {
    double ux = std::exp(u.logmod) * std::cos(u.arg);
    double uy = std::exp(u.logmod) * std::sin(u.arg);
    if (std::hypot(ux - cx, uy - cy) > radius) all_in = false;
  }
  rep.verdict = all_in ? BohrVerdict::OneDiscException : BohrVerdict::Violation;
  return rep;
}

CoverChoice corollary_cover_choice(const EntireFunction& f, const WideReal& t,
                                   const WideReal& logS, const WideReal& logSp,
                                   const WideReal& logT, const WideReal& logTp) {
  static const Real ln2 = log(Real(2));
  WideReal l2 = WideReal::from_real(ln2);
  if (!(logS > l2)) throw DomainError("corollary_cover_choice: requires S > 2");
  if (!(logS < logSp) || !(logT < logTp))
    throw DomainError("corollary_cover_choice: degenerate target annulus");
  if (!(logSp <= logT - l2))
    throw DomainError("corollary_cover_choice: S' > T/2 (disjointness violated)");
  auto sw = find_small_min_modulus(f, t + l2, t + l2 * 2.0);
  if (!sw) throw HypothesisFailed({"no s in (2r,4r) with m(s) <= 1"});

  Annulus src{t, t + l2 * 3.0};
  PointCover first = annulus_covered(f, src, Annulus{logS, logSp});
  PointCover second = annulus_covered(f, src, Annulus{logT, logTp});
  bool c1 = first == PointCover::Covered;
  bool c2 = second == PointCover::Covered;
  if (c1 && c2) return CoverChoice::Both;
  if (c1) return CoverChoice::First;
  if (c2) return CoverChoice::Second;
  throw NeitherCovered();
}

} // namespace annular
