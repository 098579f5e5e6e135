#pragma once

#include <string>

namespace annular {

// Threshold bundle for the covering-theorem hypotheses. "paper-strict" uses
// the proof-sufficient constants; "desk-relaxed" scales them down so the
// machinery runs at radii where evaluation is feasible. Every report carries
// the profile name it was produced under.
struct HypothesisProfile {
  std::string name;
  double growth_exponent;  // require M(r) > r^g at the step radius
  double min_sqrt_logr;    // require sqrt(log r) >= this on Harnack steps
  double seed_factor;      // k_0 = 1 + seed_factor * delta(r_0); also the
                           // Bohr S'/T exponent factor
  bool enforce_delta_caps; // delta(r) < min{1/(2pi), (k-1)/4}
};

inline HypothesisProfile paper_strict() {
  return {"paper-strict", 9.0, 80.0, 20.0, true};
}

inline HypothesisProfile desk_relaxed() {
  return {"desk-relaxed", 3.0, 1.0, 3.0, false};
}

inline HypothesisProfile profile_by_name(const std::string& name) {
  if (name == "paper-strict") return paper_strict();
  return desk_relaxed();
}

} // namespace annular
