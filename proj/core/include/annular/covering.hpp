#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "annular/entire_function.hpp"
#include "annular/profile.hpp"
#include "annular/wide_real.hpp"

namespace annular {

struct Annulus {
  WideReal t_in, t_out; // log radii, t_in < t_out
  // Optional exact width in log scale; zero means "use t_out - t_in". Deep
  // chain annuli have relative widths far below any fixed mantissa, so
  // t_in + width rounds back to t_in and the difference carries no
  // information; the exact width does.
  WideReal log_width;
  WideReal width() const { return log_width.is_zero() ? t_out - t_in : log_width; }
};

enum class Verdict { Covers, Fails, Indeterminate };

std::string verdict_name(Verdict v);

// Boundary-moduli sufficiency for f(source) >= target: max|f| on the source
// inner circle stays inside the target, min|f| on the source outer circle
// stays outside. One-sided by design: "fails" means the sufficiency margin is
// violated, not that covering is disproved.
struct CoveringCertificate {
  Annulus source, target;
  WideReal inner_logM, outer_logm;
  double margin = 0;
  Verdict verdict = Verdict::Indeterminate;
};

CoveringCertificate verify_annulus_covering(const EntireFunction& f,
                                            const Annulus& source,
                                            const Annulus& target,
                                            double tol = 1e-9);

// Search (t_lo, t_hi) for a log-radius with m(s) <= 1. Returns the sampled
// argmin when found; nullopt when the sampled minimum clears 0 by tol.
std::optional<WideReal> find_small_min_modulus(const EntireFunction& f,
                                               const WideReal& t_lo,
                                               const WideReal& t_hi,
                                               double tol = 1e-9,
                                               int n_grid = 64);

struct HarnackReport {
  double t = 0, k = 0, delta = 0;
  std::string profile;
  bool hyp_growth = false, hyp_sqrt = false, hyp_delta = false, hyp_mbig = false;
  double part_a_margin = 0; // min over sampled s of log m(s) - (1-2pi d) log M(s)
  WideReal logR_out;
  double K = 0;
  CoveringCertificate outer_cert;
  bool inside_applicable = false;
  bool inside_ok = false;
};

HarnackReport harnack_analyze(const EntireFunction& f, const WideReal& t, double k,
                              const HypothesisProfile& profile, double tol = 1e-9);

enum class BohrVerdict { FullCover, OneDiscException, Violation };

struct BohrGridSpec {
  int n_mod = 64, n_arg = 64;
  double log_lo = 0, log_hi = 0; // log|w| range; 0,0 = auto [-10r, log M(r)]
  bool auto_range = true;
};

struct UncoveredPoint {
  double logmod, arg;
};

struct BohrReport {
  double t = 0;
  WideReal s_witness;
  int grid_size = 0;
  std::vector<UncoveredPoint> uncovered;
  int indeterminate = 0;
  double w1_logmod = 0, w1_arg = 0; // centroid of the uncovered cluster, log-polar
  double eps_bound = 0;
  BohrVerdict verdict = BohrVerdict::FullCover;
};

BohrReport bohr_analyze(const EntireFunction& f, const WideReal& t,
                        const BohrGridSpec& grid = {}, double C0 = 20.0,
                        double C1 = 50.0);

enum class CoverChoice { First, Second, Both };

CoverChoice corollary_cover_choice(const EntireFunction& f, const WideReal& t,
                                   const WideReal& logS, const WideReal& logSp,
                                   const WideReal& logT, const WideReal& logTp);

int count_zeros_annulus(const EntireFunction& f, const Annulus& a);

// --- lower-level deciders shared with the chain builder and realizer ---

enum class PointCover { Covered, Uncovered, Indeterminate };

// Does f(z) = w have a solution with log|z| in (src.t_in, src.t_out)?
// w given in log-polar so astronomically large targets stay representable.
PointCover decide_preimage_in_annulus(const EntireFunction& f, const Annulus& src,
                                      const WideReal& w_logmod, double w_arg,
                                      double tol = 1e-9);

// All-grid-points version over a target annulus.
PointCover annulus_covered(const EntireFunction& f, const Annulus& src,
                           const Annulus& target, int n_mod = 8, int n_arg = 12);

// Winding count of f - w around the annulus boundary = number of w-preimages.
// Throws BoundaryZero / NonIntegerResidual on pathological boundaries.
int winding_count(const EntireFunction& f, const Annulus& a,
                  const std::complex<Real>& w);

} // namespace annular
