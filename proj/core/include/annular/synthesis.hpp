#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "annular/chain.hpp"
#include "annular/partition.hpp"
#include "annular/precision.hpp"
#include "annular/wide_real.hpp"

namespace annular {

// Admissibility automaton: backjumps are allowed exactly at the time indices
// in n_j, each with at most one excluded landing level.
struct TransitionSystem {
  std::vector<int> n_j;                // strictly increasing time indices
  std::vector<std::vector<int>> I_j;   // per backjump, <=1 excluded level
  int horizon = 0;

  // index into n_j when time n is a backjump, -1 otherwise
  int backjump_at(int n) const;
};

// The flagship chains backjump at every constructed index; extend that
// pattern to the requested horizon. Sparse patterns are kept as-is.
TransitionSystem ts_from_chain(const AnnuliChain& chain, int horizon);

bool admissible_check(const std::vector<int>& seq, const TransitionSystem& ts);

BigInt count_admissible(const TransitionSystem& ts, int len, int s0,
                        int level_cap);

struct Unrealizable {
  int at_index = -1;
  std::vector<int> blocking; // the I_j that bit, when applicable
  std::string reason;
};

using GenResult = std::variant<std::vector<int>, Unrealizable>;

GenResult gen_periodic(const TransitionSystem& ts, int period, int s_min);

std::variant<std::vector<std::vector<int>>, Unrealizable> gen_bounded(
    const TransitionSystem& ts, int s_min, int s_max, int count);

GenResult gen_oscillating(const TransitionSystem& ts, int s_min,
                          const std::vector<int>& peak_schedule);

struct RateSpec {
  std::vector<WideReal> log_a;
  WideReal logR0;
};

struct SlowEscape {
  std::vector<int> symbols;
  bool truncated = false;          // partition saturated before the rate did
  std::vector<int> loiter_lengths; // per completed loiter window
};

SlowEscape gen_slow_escape(const TransitionSystem& ts, const RateSpec& rate,
                           const Partition& partition);

enum class BoundKind { M2, Power1Eps };
enum class PlanMode { MC, NoMC };

struct PrescribedPlan {
  std::vector<int> targets;  // E_n = B_{targets[n]}
  std::vector<int> n_j_out;  // time indices where rule 1 fired
  BoundKind bound_kind = BoundKind::M2;
  std::vector<WideReal> log_a;
  std::vector<WideReal> upper_bounds; // aligned with n_j_out, log scale
  bool bounds_ok = true;
  double eps = 0.25; // exponent slack for the no-barrier upper bound
};

PrescribedPlan prescribed_rate_plan(const EntireFunction& f,
                                    const RateSpec& rate,
                                    const AnnuliChain& chain, PlanMode mode,
                                    double eps = 0.25);

std::vector<std::vector<int>> branching_witness(const EntireFunction& f,
                                                const RateSpec& rate,
                                                const AnnuliChain& chain,
                                                int depth);

} // namespace annular
