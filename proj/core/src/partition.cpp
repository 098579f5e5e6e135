#include "annular/partition.hpp"

#include <algorithm>

#include "annular/errors.hpp"
#include "annular/radial_moduli.hpp"

namespace annular {

Partition build_partition(const EntireFunction& f, const WideReal& logR, int depth) {
  Partition p;
  p.logR = logR;
  p.depth = depth;
  WideReal t = logR;
  p.levels.push_back(t);
  {
    WideReal m = mu(f, t);
    if (!(m > t)) throw InvalidR();
  }
  for (int n = 1; n < depth; ++n) {
    WideReal next;
    try {
      next = mu(f, t);
    } catch (const RangeExceeded&) {
      p.saturated_at = n;
      break;
    }
    if (next.saturated()) {
      p.saturated_at = n;
      break;
    }
    p.levels.push_back(next);
    t = next;
  }
  return p;
}

int annulus_index(const Partition& p, const WideReal& logmod) {
  // A saturated modulus only says ">= the exponent cap"; comparing it against
  // a saturated next boundary is undecidable, so refuse rather than guess.
  if (logmod.saturated() && logmod.sign() > 0)
    throw IndexBeyondDepth(static_cast<int>(p.levels.size()) - 1);
  if (logmod < p.levels.front()) return 0;
  for (size_t n = 1; n < p.levels.size(); ++n)
    if (logmod < p.levels[n]) return static_cast<int>(n);
  // Past the last boundary: when the next level saturated, it exceeds every
  // representable value, so membership in the final annulus is decidable.
  if (p.saturated_at) return static_cast<int>(p.levels.size());
  throw IndexBeyondDepth(static_cast<int>(p.levels.size()) - 1);
}

Itinerary compute_itinerary(const EntireFunction& f, const ComplexPoint& z,
                            const Partition& p, int max_steps, double boundary_tol) {
  Itinerary it;
  ComplexPoint cur = z;
  for (int n = 0; n < max_steps; ++n) {
    int idx;
    try {
      idx = annulus_index(p, cur.logmod);
    } catch (const IndexBeyondDepth&) {
      it.truncated = true;
      it.reason = TruncationReason::RangeExceeded;
      return it;
    }
    for (const auto& lv : p.levels) {
      WideReal d = cur.logmod - lv;
      if (abs(d) < WideReal(boundary_tol)) {
        it.ambiguous = true;
        break;
      }
    }
    it.symbols.push_back(idx);
    if (n + 1 == max_steps) break;
    try {
      cur = evaluate(f, cur);
    } catch (const RangeExceeded&) {
      it.truncated = true;
      it.reason = TruncationReason::RangeExceeded;
      return it;
    }
    if (cur.is_zero()) {
      // orbit hit the origin; it stays comparable but log-polar form is gone
      cur = ComplexPoint::cartesian(Real(0), Real(0));
    }
  }
  it.reason = TruncationReason::CompleteToDepth;
  return it;
}

int relabel_offset(const Itinerary& it1, const Itinerary& it2) {
  size_t len = std::min(it1.symbols.size(), it2.symbols.size());
  if (len < 1) throw RelabelViolation("empty common prefix");
  int p = it2.symbols[0] - it1.symbols[0];
  for (size_t n = 1; n < len; ++n)
    p = std::min(p, it2.symbols[n] - it1.symbols[n]);
  for (size_t n = 0; n < len; ++n) {
    int d = it2.symbols[n] - it1.symbols[n];
    if (d != p && d != p + 1)
      throw RelabelViolation("difference " + std::to_string(d) + " at step " +
                             std::to_string(n) + " outside {p, p+1} with p = " +
                             std::to_string(p));
  }
  return p;
}

bool classify_fast_escaping(const Itinerary& it, int tail_window) {
  int n = static_cast<int>(it.symbols.size());
  if (n < tail_window || tail_window < 2) return false;
  for (int i = n - tail_window; i + 1 < n; ++i)
    if (it.symbols[i + 1] != it.symbols[i] + 1) return false;
  return true;
}

} // namespace annular
