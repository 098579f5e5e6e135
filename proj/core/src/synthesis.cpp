#include "annular/synthesis.hpp"

#include <algorithm>
#include <functional>

#include "annular/errors.hpp"
#include "annular/radial_moduli.hpp"

namespace annular {

namespace {

bool contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

} // namespace

int TransitionSystem::backjump_at(int n) const {
  auto it = std::lower_bound(n_j.begin(), n_j.end(), n);
  if (it == n_j.end() || *it != n) return -1;
  return static_cast<int>(it - n_j.begin());
}

TransitionSystem ts_from_chain(const AnnuliChain& chain, int horizon) {
  TransitionSystem ts;
  ts.horizon = horizon;
  int n = static_cast<int>(chain.entries.size());
  bool dense = static_cast<int>(chain.n_j.size()) == n;
  for (int i = 0; dense && i < n; ++i) dense = chain.n_j[i] == i;
  if (dense) {
    for (int i = 0; i < horizon; ++i) {
      ts.n_j.push_back(i);
      ts.I_j.push_back(i < n ? chain.I_j[i] : std::vector<int>{});
    }
  } else {
    ts.n_j = chain.n_j;
    ts.I_j = chain.I_j;
  }
  return ts;
}

bool admissible_check(const std::vector<int>& seq, const TransitionSystem& ts) {
  for (size_t n = 0; n + 1 < seq.size(); ++n) {
    if (seq[n + 1] == seq[n] + 1) continue;
    int j = ts.backjump_at(static_cast<int>(n));
    if (j < 0) return false;
    if (seq[n + 1] < 0 || seq[n + 1] > seq[n]) return false;
    if (contains(ts.I_j[j], seq[n + 1])) return false;
  }
  return true;
}

BigInt count_admissible(const TransitionSystem& ts, int len, int s0,
                        int level_cap) {
  if (len <= 0) return 0;
  if (s0 < 0 || s0 > level_cap) return 0;
  std::vector<BigInt> dp(level_cap + 1, 0);
  dp[s0] = 1;
  for (int n = 0; n + 1 < len; ++n) {
    std::vector<BigInt> nx(level_cap + 1, 0);
    int j = ts.backjump_at(n);
    for (int s = 0; s <= level_cap; ++s) {
      if (dp[s] == 0) continue;
      if (s + 1 <= level_cap) nx[s + 1] += dp[s];
      if (j >= 0)
        for (int sp = 0; sp <= s; ++sp)
          if (!contains(ts.I_j[j], sp)) nx[sp] += dp[s];
    }
    dp = std::move(nx);
  }
  BigInt total = 0;
  for (const auto& v : dp) total += v;
  return total;
}

GenResult gen_periodic(const TransitionSystem& ts, int period, int s_min) {
  if (period < 1) throw DomainError("gen_periodic: period must be >= 1");
  if (ts.horizon < 1) throw DomainError("gen_periodic: empty horizon");
  std::vector<int> seq{s_min};
  for (int n = 0; n + 1 < ts.horizon; ++n) {
    int cur = seq.back();
    int desired = cur == s_min + period - 1 ? s_min : cur + 1;
    if (desired == cur + 1) {
      seq.push_back(desired);
      continue;
    }
    int j = ts.backjump_at(n);
    if (j < 0)
      return Unrealizable{n, {}, "no backjump index at the period boundary"};
    if (contains(ts.I_j[j], s_min))
      return Unrealizable{n, ts.I_j[j], "period landing level excluded"};
    seq.push_back(s_min);
  }
  return seq;
}

std::variant<std::vector<std::vector<int>>, Unrealizable> gen_bounded(
    const TransitionSystem& ts, int s_min, int s_max, int count) {
  if (s_max < s_min + 2)
    throw DomainError("gen_bounded: requires s_max >= s_min + 2");
  std::vector<std::vector<int>> out;
  std::vector<int> seq;
  // lexicographically least first: depth-first with ascending candidates
  std::function<bool()> dfs = [&]() -> bool {
    if (static_cast<int>(seq.size()) == ts.horizon) {
      out.push_back(seq);
      return static_cast<int>(out.size()) >= count;
    }
    int n = static_cast<int>(seq.size()) - 1;
    int cur = seq.back();
    std::vector<int> cands;
    int j = ts.backjump_at(n);
    if (j >= 0)
      for (int sp = s_min; sp <= std::min(cur, s_max); ++sp)
        if (!contains(ts.I_j[j], sp)) cands.push_back(sp);
    if (cur + 1 <= s_max) cands.push_back(cur + 1);
    for (int c : cands) {
      seq.push_back(c);
      if (dfs()) return true;
      seq.pop_back();
    }
    return false;
  };
  for (int start = s_min; start <= s_max; ++start) {
    seq.assign(1, start);
    if (ts.horizon == 1) {
      out.push_back(seq);
      if (static_cast<int>(out.size()) >= count) break;
    } else if (dfs()) {
      break;
    }
  }
  if (static_cast<int>(out.size()) < count)
    return Unrealizable{-1, {}, "only " + std::to_string(out.size()) +
                                    " admissible sequences exist"};
  return out;
}

GenResult gen_oscillating(const TransitionSystem& ts, int s_min,
                          const std::vector<int>& peak_schedule) {
  if (ts.horizon < 1) throw DomainError("gen_oscillating: empty horizon");
  if (peak_schedule.empty())
    throw DomainError("gen_oscillating: empty peak schedule");
  std::vector<int> seq{s_min};
  size_t pi = 0;
  int peak = std::max(peak_schedule[0], s_min);
  for (int n = 0; n + 1 < ts.horizon; ++n) {
    int cur = seq.back();
    if (cur < peak) {
      seq.push_back(cur + 1);
      continue;
    }
    // at or past the peak: drop to s_min at the first permitted backjump
    int j = ts.backjump_at(n);
    if (j >= 0 && !contains(ts.I_j[j], s_min)) {
      seq.push_back(s_min);
      if (pi + 1 < peak_schedule.size()) ++pi;
      peak = std::max(peak_schedule[pi], s_min);
    } else {
      seq.push_back(cur + 1); // keep climbing until a backjump opens
    }
  }
  return seq;
}

SlowEscape gen_slow_escape(const TransitionSystem& ts, const RateSpec& rate,
                           const Partition& partition) {
  SlowEscape out;
  if (ts.horizon < 1 || ts.n_j.empty())
    throw DomainError("gen_slow_escape: empty horizon or no backjumps");
  size_t j = 0; // current loiter window, at level ts.n_j[j]
  int s = ts.n_j[0];
  out.symbols.push_back(s);
  int loiter = 0;
  for (int n = 0; n + 1 < ts.horizon &&
                  n < static_cast<int>(rate.log_a.size()); ++n) {
    if (j + 1 >= ts.n_j.size() ||
        ts.n_j[j + 1] >= static_cast<int>(partition.levels.size())) {
      out.truncated = true; // partition/chain ran out before the rate did
      break;
    }
    int next_level = ts.n_j[j + 1];
    const WideReal& threshold = partition.levels[next_level];
    int bj = ts.backjump_at(n);
    bool can_stay = s <= out.symbols.back() && bj >= 0 &&
                    !contains(ts.I_j[bj], s);
    if (rate.log_a[n] >= threshold || !can_stay) {
      out.symbols.push_back(s + 1);
      ++s;
      if (s == next_level) {
        ++j;
        out.loiter_lengths.push_back(loiter);
        loiter = 0;
      }
    } else {
      out.symbols.push_back(s);
      ++loiter;
    }
  }
  return out;
}

PrescribedPlan prescribed_rate_plan(const EntireFunction& f,
                                    const RateSpec& rate,
                                    const AnnuliChain& chain, PlanMode mode,
                                    double eps) {
  if (chain.entries.empty()) throw ChainTooShort("empty chain");
  const auto& a = rate.log_a;
  if (a.empty()) throw DomainError("prescribed_rate_plan: empty rate");
  for (size_t n = 0; n < a.size(); ++n) {
    if (a[n] < rate.logR0) throw RateViolation(static_cast<int>(n));
    if (n + 1 < a.size()) {
      try {
        if (!(a[n + 1] <= mu(f, a[n]) * (1.0 + 1e-12)))
          throw RateViolation(static_cast<int>(n));
      } catch (const RangeExceeded&) {
        // mu beyond range dwarfs any representable a_{n+1}
      }
    }
  }

  auto least_p = [&](const WideReal& bound) -> int {
    for (size_t p = 0; p < chain.entries.size(); ++p)
      if (chain.entries[p].t >= bound) return static_cast<int>(p);
    return -1;
  };
  auto backjump_of = [&](int m) -> int {
    auto it = std::lower_bound(chain.n_j.begin(), chain.n_j.end(), m);
    if (it == chain.n_j.end() || *it != m) return -1;
    return static_cast<int>(it - chain.n_j.begin());
  };

  PrescribedPlan plan;
  plan.log_a = a;
  plan.bound_kind = mode == PlanMode::MC ? BoundKind::M2 : BoundKind::Power1Eps;
  plan.eps = eps;
  int p0 = least_p(a[0]);
  if (p0 < 0) throw ChainTooShort("no chain level reaches log a_0");
  plan.targets.push_back(p0);
  for (size_t n = 0; n + 1 < a.size(); ++n) {
    int m = plan.targets.back();
    int bj = backjump_of(m);
    int p;
    if (bj >= 0) {
      p = least_p(a[n + 1]);
      if (p < 0) throw ChainTooShort("no chain level reaches log a_{n+1}");
      if (contains(chain.I_j[bj], p)) ++p; // skip the single excluded level
      if (p >= static_cast<int>(chain.entries.size()))
        throw ChainTooShort("excluded level pushed past the chain end");
      if (p <= m) {
        plan.n_j_out.push_back(static_cast<int>(n));
        WideReal bound;
        if (plan.bound_kind == BoundKind::M2) {
          try {
            bound = mu(f, mu(f, a[n]));
          } catch (const RangeExceeded&) {
            bound = WideReal::saturated_value(+1);
          }
        } else {
          bound = a[n] * (1.0 + eps);
        }
        plan.upper_bounds.push_back(bound);
        if (!(chain.entries[m].kt() <= bound)) plan.bounds_ok = false;
      }
    } else {
      p = m + 1;
      if (p >= static_cast<int>(chain.entries.size()))
        throw ChainTooShort("rule 2 advanced past the chain end");
    }
    plan.targets.push_back(p);
    if (!(chain.entries[p].t >= a[n + 1])) plan.bounds_ok = false;
  }
  return plan;
}

std::vector<std::vector<int>> branching_witness(const EntireFunction& f,
                                                const RateSpec& rate,
                                                const AnnuliChain& chain,
                                                int depth) {
  const auto& a = rate.log_a;
  if (chain.entries.empty()) throw ChainTooShort("empty chain");
  if (a.size() < 2) throw DomainError("branching_witness: rate too short");

  // slowness prerequisite (prefix form): some n has log a_{n+depth} below the
  // chain radius t_n
  if (depth > 0) {
    bool slow = false;
    for (size_t n = 0; n + depth < a.size(); ++n)
      if (a[n + depth] < chain.entries[std::min(n, chain.entries.size() - 1)].t) {
        slow = true;
        break;
      }
    if (!slow) throw InsufficientBranching(0, depth);
  }

  auto least_p = [&](const WideReal& bound) -> int {
    for (size_t p = 0; p < chain.entries.size(); ++p)
      if (chain.entries[p].t >= bound) return static_cast<int>(p);
    return -1;
  };
  auto is_backjump = [&](int m) {
    return std::binary_search(chain.n_j.begin(), chain.n_j.end(), m);
  };

  int p0 = least_p(a[0]);
  if (p0 < 0) throw ChainTooShort("no chain level reaches log a_0");

  std::vector<std::vector<int>> out;
  int shallowest = depth;
  std::function<void(size_t, std::vector<int>&, int)> walk =
      [&](size_t n, std::vector<int>& prefix, int used) {
        if (n + 1 >= a.size()) {
          shallowest = std::min(shallowest, used);
          out.push_back(prefix);
          return;
        }
        int m = prefix.back();
        if (is_backjump(m)) {
          int p = least_p(a[n + 1]);
          if (p < 0) throw ChainTooShort("no chain level reaches log a_{n+1}");
          bool can_up = m + 1 < static_cast<int>(chain.entries.size()) &&
                        chain.entries[m + 1].t >= a[n + 1];
          if (p <= m && can_up && used < depth) {
            // the proof's two choices: jump to the least feasible level, or
            // keep climbing
            prefix.push_back(p);
            walk(n + 1, prefix, used + 1);
            prefix.pop_back();
            prefix.push_back(m + 1);
            walk(n + 1, prefix, used + 1);
            prefix.pop_back();
            return;
          }
          prefix.push_back(p);
          walk(n + 1, prefix, used);
          prefix.pop_back();
          return;
        }
        if (m + 1 >= static_cast<int>(chain.entries.size()))
          throw ChainTooShort("rule 2 advanced past the chain end");
        prefix.push_back(m + 1);
        walk(n + 1, prefix, used);
        prefix.pop_back();
      };
  std::vector<int> prefix{p0};
  walk(0, prefix, 0);
  if (shallowest < depth) throw InsufficientBranching(shallowest, depth);
  return out;
}

} // namespace annular
