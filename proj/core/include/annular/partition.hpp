#pragma once

#include <optional>
#include <vector>

#include "annular/entire_function.hpp"
#include "annular/point.hpp"
#include "annular/wide_real.hpp"

namespace annular {

// The levels log M^n(R): levels[0] = logR, levels[n] = mu^n(logR),
// truncated when mu saturates.
struct Partition {
  WideReal logR;
  std::vector<WideReal> levels;
  int depth = 0;
  std::optional<int> saturated_at;
};

enum class TruncationReason { CompleteToDepth, RangeExceeded, LeftPartitionNever };

struct Itinerary {
  std::vector<int> symbols;
  bool truncated = false;
  TruncationReason reason = TruncationReason::CompleteToDepth;
  bool ambiguous = false; // some step's modulus fell within tol of a boundary
};

Partition build_partition(const EntireFunction& f, const WideReal& logR, int depth);

// 0 for logmod < levels[0]; else the unique n >= 1 with
// levels[n-1] <= logmod < levels[n] (half-open cells).
int annulus_index(const Partition& p, const WideReal& logmod);

Itinerary compute_itinerary(const EntireFunction& f, const ComplexPoint& z,
                            const Partition& p, int max_steps,
                            double boundary_tol = 1e-12);

// p = min over the common prefix of (s2_n - s1_n); every difference must be
// p or p+1.
int relabel_offset(const Itinerary& it1, const Itinerary& it2);

bool classify_fast_escaping(const Itinerary& it, int tail_window);

} // namespace annular
