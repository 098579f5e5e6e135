#pragma once

#include <string>
#include <vector>

#include "annular/chain.hpp"
#include "annular/covering.hpp"
#include "annular/partition.hpp"
#include "annular/point.hpp"
#include "annular/synthesis.hpp"

namespace annular {

struct NewtonStats {
  int iterations = 0;  // inverse steps performed (branch or Newton)
  int restarts = 0;    // target re-seeding retries
  int escalations = 0; // precision-tier escalations
};

struct RealizationResult {
  ComplexPoint point;             // z_0
  std::vector<int> requested;     // seq[0..depth]
  int verified_len = 0;           // forward-verified symbols (partition match)
  std::vector<double> residuals;  // relative log-modulus distance to B_{seq[n]}
  std::vector<WideReal> orbit_logmod; // log|f^n(z_0)| for n = 0..depth
  NewtonStats stats;
  bool complete = false;
  std::string note; // failure diagnostics when incomplete
};

// Solve f(z) = w with log|z| inside `region`. Uses the explicit logarithm
// branch when available, Newton multistart otherwise; the result is verified
// by re-evaluation before being returned.
ComplexPoint solve_preimage(const EntireFunction& f, const ComplexPoint& w,
                            const Annulus& region, int seeds = 8,
                            double tol_rel = 1e-30);

// Produce z_0 whose orbit visits B_{seq[0]}, ..., B_{seq[depth]} in order,
// verified forward against the partition aligned at logR. On failure after
// retries and one precision escalation the partial result is returned with
// complete = false.
RealizationResult realize_itinerary(const EntireFunction& f,
                                    const AnnuliChain& chain,
                                    const WideReal& logR,
                                    const std::vector<int>& seq, int depth);

struct PrescribedReport {
  RealizationResult realization;
  std::vector<double> lower_margins; // (log|f^n| - log a_n) / scale, per step
  std::vector<double> upper_margins; // (bound - log|f^{n+1}|) / scale at rule-1 steps
  bool lower_ok = true;
  bool upper_ok = true;
};

PrescribedReport realize_prescribed(const EntireFunction& f,
                                    const AnnuliChain& chain,
                                    const PrescribedPlan& plan, int depth);

} // namespace annular
