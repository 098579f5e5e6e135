#include "annular/realize.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "annular/errors.hpp"
#include "annular/newton.hpp"

namespace annular {

namespace {

Annulus block_annulus(const ChainEntry& e) {
  Annulus a;
  a.t_in = e.t;
  a.t_out = e.kt();
  a.log_width = e.km1 * e.t;
  return a;
}

template <typename R>
struct WAnnulus {
  WideRealT<R> t_in, t_out, width;
};

template <typename R>
WAnnulus<R> widen(const Annulus& a) {
  return {a.t_in.template to<R>(), a.t_out.template to<R>(),
          a.width().template to<R>()};
}

template <typename R>
bool in_annulus(const WAnnulus<R>& a, const WideRealT<R>& lm, double slack) {
  WideRealT<R> tol = abs(a.t_in) * R(slack) + R(slack);
  return lm >= a.t_in - tol && lm <= a.t_out + tol;
}

// Relative distance from lm to [t_in, t_out]; 0 when inside.
template <typename R>
double rel_residual(const WAnnulus<R>& a, const WideRealT<R>& lm) {
  WideRealT<R> scale = abs(a.t_in);
  if (scale < WideRealT<R>(R(1))) scale = WideRealT<R>(R(1));
  WideRealT<R> below = (a.t_in - lm) / scale;
  WideRealT<R> above = (lm - a.t_out) / scale;
  double r = 0;
  if (below.sign() > 0) r = std::max(r, below.to_double());
  if (above.sign() > 0) r = std::max(r, above.to_double());
  return r;
}

// Preimage under exp of the log-polar point P, landing with log-modulus in E:
// z = log|w| + i (arg w + 2 pi k). k = 0 is tried first; otherwise k is aimed
// so |z| hits the middle of E. When log|w| itself is beyond plain range the
// imaginary part is negligible against it and only k = 0 is meaningful.
template <typename R>
ComplexPointT<R> exp_log_preimage(const ComplexPointT<R>& P,
                                  const WAnnulus<R>& E) {
  using W = WideRealT<R>;
  const W& X = P.logmod;
  if (X.saturated()) throw NoPreimageFound("target modulus saturated");
  if (X.is_zero()) throw NoPreimageFound("target is zero: no exp preimage");

  if (!X.fits_real() || abs(X.to_real()) > plain_exp_limit<R>()) {
    if (X.sign() < 0)
      throw NoPreimageFound("target modulus underflows the branch");
    ComplexPointT<R> z;
    z.plain = false;
    z.logmod = log_w(X);
    z.arg = 0;
    z.arg_known = true;
    if (!in_annulus(E, z.logmod, 1e-9))
      throw NoPreimageFound("wide-branch preimage misses the target annulus");
    return z;
  }

  R X0 = X.to_real();
  R base = P.arg_known ? P.arg : R(0);
  if (base > boost::math::constants::pi<R>()) base -= two_pi<R>();

  auto try_im = [&](const R& y) -> std::optional<ComplexPointT<R>> {
    ComplexPointT<R> z = ComplexPointT<R>::cartesian(X0, y);
    if (in_annulus(E, z.logmod, 1e-9)) return z;
    return std::nullopt;
  };

  if (auto z = try_im(base)) return *z;

  // winding branch: |Im z| = sqrt(T^2 - X0^2) puts |z| at the middle of E
  W midw = E.t_in + E.width * R(0.5);
  if (midw.fits_real() && !midw.saturated()) {
    R lmid = midw.to_real();
    if (abs(lmid) < plain_growth_limit<R>() / 2) { // T*T below must stay finite
      R T = exp(lmid);
      if (T > abs(X0)) {
        R Y = sqrt(T * T - X0 * X0);
        for (int s : {1, -1}) {
          R k = round((R(s) * Y - base) / two_pi<R>());
          for (int dk : {0, 1, -1}) {
            R y = base + two_pi<R>() * (k + R(dk));
            if (auto z = try_im(y)) return *z;
          }
        }
      }
    }
  }
  throw NoPreimageFound("no exp branch lands in the target annulus");
}

template <typename R>
ComplexPointT<R> newton_preimage(const EntireFunction& f,
                                 const ComplexPointT<R>& P, const WAnnulus<R>& E,
                                 int seeds, double tol_rel) {
  if (!P.plain)
    throw NoPreimageFound("target beyond plain range and no inverse branch");
  if (!E.t_in.fits_real() || !E.t_out.fits_real() ||
      abs(E.t_in.to_real()) > plain_exp_limit<R>() ||
      abs(E.t_out.to_real()) > plain_exp_limit<R>())
    throw NoPreimageFound("annulus beyond plain range and no inverse branch");
  auto z = newton_multistart_annulus<R>(f, P.to_complex(), E.t_in.to_real(),
                                        E.t_out.to_real(), seeds, tol_rel);
  if (!z) throw NoPreimageFound("Newton multistart found no root in the annulus");
  return ComplexPointT<R>::cartesian(*z);
}

template <typename R>
ComplexPointT<R> preimage_step(const EntireFunction& f,
                               const ComplexPointT<R>& P, const WAnnulus<R>& E,
                               NewtonStats& stats) {
  ++stats.iterations;
  if (f.has_inverse_branch()) return exp_log_preimage(P, E);
  return newton_preimage(f, P, E, 8, 1e-30);
}

template <typename R>
struct Attempt {
  ComplexPointT<R> z0;
  int verified_len = 0;
  std::vector<double> residuals;
  std::vector<WideReal> orbit_logmod;
  bool complete = false;
  std::string note;
};

template <typename R>
Attempt<R> attempt_realize(const EntireFunction& f,
                           const std::vector<Annulus>& blocks,
                           const Partition& part, const std::vector<int>& seq,
                           int depth, double frac, NewtonStats& stats) {
  using W = WideRealT<R>;
  Attempt<R> a;

  std::vector<WAnnulus<R>> E(depth + 1);
  for (int n = 0; n <= depth; ++n) E[n] = widen<R>(blocks[seq[n]]);

  // backward inverse iteration from a point at radius fraction `frac` of the
  // final block, on the positive real axis in log-polar form
  W tgt_lm = E[depth].t_in + E[depth].width * R(frac);
  ComplexPointT<R> cur = ComplexPointT<R>::polar(tgt_lm, R(0));
  try {
    for (int n = depth; n > 0; --n) cur = preimage_step(f, cur, E[n - 1], stats);
  } catch (const NoPreimageFound& e) {
    a.note = e.what();
    return a;
  }
  a.z0 = cur;

  // forward verification against the aligned partition
  for (int n = 0; n <= depth; ++n) {
    WideReal lm = cur.logmod.template to<Real>();
    a.orbit_logmod.push_back(lm);
    int idx;
    try {
      idx = annulus_index(part, lm);
    } catch (const IndexBeyondDepth&) {
      a.note = "orbit left the partition range at step " + std::to_string(n);
      return a;
    }
    if (idx != seq[n]) {
      a.note = "forward symbol " + std::to_string(idx) + " != requested " +
               std::to_string(seq[n]) + " at step " + std::to_string(n);
      return a;
    }
    a.residuals.push_back(rel_residual(E[n], cur.logmod));
    ++a.verified_len;
    if (n == depth) break;
    try {
      cur = evaluate(f, cur);
    } catch (const RangeExceeded& e) {
      a.note = std::string("forward evaluation stopped: ") + e.what();
      return a;
    }
  }
  a.complete = (a.verified_len == depth + 1);
  return a;
}

template <typename R>
void adopt(RealizationResult& out, const Attempt<R>& a) {
  out.point = a.z0.template to<Real>();
  out.verified_len = a.verified_len;
  out.residuals = a.residuals;
  out.orbit_logmod = a.orbit_logmod;
  out.complete = a.complete;
  out.note = a.note;
}

} // namespace

ComplexPoint solve_preimage(const EntireFunction& f, const ComplexPoint& w,
                            const Annulus& region, int seeds, double tol_rel) {
  NewtonStats stats;
  WAnnulus<Real> E = widen<Real>(region);
  ComplexPoint z;
  if (f.has_inverse_branch())
    z = exp_log_preimage<Real>(w, E);
  else
    z = newton_preimage<Real>(f, w, E, seeds, tol_rel);

  ComplexPoint fz = evaluate(f, z);
  WideReal scale = abs(w.logmod);
  if (scale < WideReal(1.0)) scale = WideReal(1.0);
  WideReal dlm = abs(fz.logmod - w.logmod) / scale;
  if (!(dlm < WideReal(1e-20)))
    throw NoPreimageFound("re-evaluation modulus mismatch");
  if (fz.arg_known && w.arg_known) {
    Real da = abs(reduce_arg(fz.arg - w.arg));
    if (da > boost::math::constants::pi<Real>()) da = two_pi<Real>() - da;
    if (!(da < Real(1e-20) * std::max(Real(1), abs(w.arg)) + Real(1e-20)))
      throw NoPreimageFound("re-evaluation argument mismatch");
  }
  if (!in_annulus(E, z.logmod, 1e-9))
    throw NoPreimageFound("preimage outside the requested annulus");
  return z;
}

RealizationResult realize_itinerary(const EntireFunction& f,
                                    const AnnuliChain& chain,
                                    const WideReal& logR,
                                    const std::vector<int>& seq, int depth) {
  if (seq.empty()) throw DomainError("empty symbol sequence");
  if (depth >= static_cast<int>(seq.size())) depth = static_cast<int>(seq.size()) - 1;
  if (depth < 0) throw DomainError("negative realization depth");
  int max_sym = *std::max_element(seq.begin(), seq.end());
  int min_sym = *std::min_element(seq.begin(), seq.end());
  if (min_sym < 0 || max_sym >= static_cast<int>(chain.entries.size()))
    throw DomainError("symbol outside the chain's block range");
  if (!admissible_check(seq, ts_from_chain(chain, static_cast<int>(seq.size()))))
    throw DomainError("sequence is not admissible for this chain");

  std::vector<Annulus> blocks;
  blocks.reserve(chain.entries.size());
  for (const auto& e : chain.entries) blocks.push_back(block_annulus(e));

  Partition part = build_partition(f, logR, max_sym + 2);

  RealizationResult out;
  out.requested.assign(seq.begin(), seq.begin() + depth + 1);

  static const double fracs[] = {0.5, 0.35, 0.65, 0.25, 0.75, 0.45};
  bool have = false;
  for (int tier = 0; tier < 2; ++tier) {
    for (double frac : fracs) {
      if (have) ++out.stats.restarts;
      if (tier == 0) {
        Attempt<RealHP> a =
            attempt_realize<RealHP>(f, blocks, part, seq, depth, frac, out.stats);
        if (!have || a.verified_len > out.verified_len) adopt(out, a), have = true;
      } else {
        Attempt<RealHP2> a =
            attempt_realize<RealHP2>(f, blocks, part, seq, depth, frac, out.stats);
        if (!have || a.verified_len > out.verified_len) adopt(out, a), have = true;
      }
      if (out.complete) return out;
    }
    if (tier == 0) ++out.stats.escalations;
  }
  return out;
}

PrescribedReport realize_prescribed(const EntireFunction& f,
                                    const AnnuliChain& chain,
                                    const PrescribedPlan& plan, int depth) {
  if (plan.targets.empty()) throw DomainError("empty prescribed plan");
  if (depth >= static_cast<int>(plan.targets.size()))
    depth = static_cast<int>(plan.targets.size()) - 1;

  WideReal logR = align_partition(chain, f);
  PrescribedReport rep;
  rep.realization = realize_itinerary(f, chain, logR, plan.targets, depth);

  const auto& lm = rep.realization.orbit_logmod;
  for (size_t n = 0; n < lm.size() && n < plan.log_a.size(); ++n) {
    WideReal scale = abs(plan.log_a[n]);
    if (scale < WideReal(1.0)) scale = WideReal(1.0);
    double m = ((lm[n] - plan.log_a[n]) / scale).to_double();
    rep.lower_margins.push_back(m);
    if (m < -1e-9) rep.lower_ok = false;
  }
  for (size_t i = 0; i < plan.n_j_out.size() && i < plan.upper_bounds.size(); ++i) {
    size_t n = static_cast<size_t>(plan.n_j_out[i]) + 1;
    if (n >= lm.size()) break;
    WideReal scale = abs(plan.upper_bounds[i]);
    if (scale < WideReal(1.0)) scale = WideReal(1.0);
    double m = ((plan.upper_bounds[i] - lm[n]) / scale).to_double();
    rep.upper_margins.push_back(m);
    if (m < -1e-9) rep.upper_ok = false;
  }
  return rep;
}

} // namespace annular
