#include "annular/radial_moduli.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

#include "annular/errors.hpp"
#include "annular/parallel.hpp"
#include "annular/point.hpp"

namespace annular {

namespace {

std::string fn_key(const EntireFunction& f) {
  return f.id + "|" + f.pa + "|" + f.pb + "|" + std::to_string(f.degree);
}

// log|f| on the circle of log-radius t, as a function of the angle.
WideReal circle_logmod(const EntireFunction& f, const WideReal& t, const Real& theta) {
  auto p = ComplexPoint::polar(t, theta);
  auto w = evaluate(f, p);
  return w.logmod;
}

struct Bracket {
  Real lo, hi;
};

// Coarse scan, collect local-extremum brackets, golden-section refine.
// maximize = true finds the max of log|f|, false the min.
WideReal circle_extremum(const EntireFunction& f, const WideReal& t, bool maximize,
                         int n_coarse, double bracket_width) {
  const Real step = two_pi<Real>() / n_coarse;
  std::vector<WideReal> vals(static_cast<size_t>(n_coarse));
  parallel_for(vals.size(), [&](size_t i) {
    vals[i] = circle_logmod(f, t, step * static_cast<long>(i));
  });

  auto better = [&](const WideReal& a, const WideReal& b) {
    return maximize ? a > b : a < b;
  };

  std::vector<Bracket> brackets;
  for (int i = 0; i < n_coarse; ++i) {
    const WideReal& prev = vals[(i + n_coarse - 1) % n_coarse];
    const WideReal& next = vals[(i + 1) % n_coarse];
    if (!better(prev, vals[i]) && !better(next, vals[i]))
      brackets.push_back({step * (i - 1), step * (i + 1)});
  }
  if (brackets.empty()) // constant modulus (monomials)
    return vals[0];

  static const Real invphi = (sqrt(Real(5)) - 1) / 2;
  WideReal best = vals[0];
  bool have = false;
  std::vector<WideReal> refined(brackets.size());
  parallel_for(brackets.size(), [&](size_t bi) {
    Real a = brackets[bi].lo, b = brackets[bi].hi;
    Real c = b - (b - a) * invphi;
    Real d = a + (b - a) * invphi;
    WideReal fc = circle_logmod(f, t, c);
    WideReal fd = circle_logmod(f, t, d);
    while (b - a > Real(bracket_width)) {
      if (better(fc, fd)) {
        b = d;
        d = c;
        fd = fc;
        c = b - (b - a) * invphi;
        fc = circle_logmod(f, t, c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + (b - a) * invphi;
        fd = circle_logmod(f, t, d);
      }
    }
    refined[bi] = better(fc, fd) ? fc : fd;
  });
  for (const auto& v : refined) {
    if (!have || better(v, best)) {
      best = v;
      have = true;
    }
  }
  return best;
}

std::mutex g_mu_mutex;
std::map<std::tuple<std::string, std::string, double>, WideReal> g_mu_cache;

} // namespace

WideReal log_max_modulus(const EntireFunction& f, const WideReal& t, double tol,
                         int n_coarse) {
  if (t.saturated()) throw RangeExceeded("log_max_modulus: t saturated");
  if (auto ex = exact_log_max_modulus(f, t)) return *ex;
  (void)tol;
  return circle_extremum(f, t, true, n_coarse, 1e-20);
}

MinModResult log_min_modulus(const EntireFunction& f, const WideReal& t, double tol,
                             int n_coarse) {
  if (t.saturated()) throw RangeExceeded("log_min_modulus: t saturated");
  if (auto ex = exact_log_min_modulus(f, t)) return {*ex, false};
  (void)tol;
  // Deep refinement: a genuine zero on the circle drives the refined minimum
  // down with the bracket width, a positive minimum stalls. 1e-34 rad leaves
  // the two cases ~30 natural-log units apart at working precision.
  WideReal m = circle_extremum(f, t, false, n_coarse, 1e-34);
  WideReal M = log_max_modulus(f, t, tol, n_coarse);
  bool zero = m.saturated() ? m.sign() < 0 : (M - m) > WideReal(55.0);
  if (zero) return {WideReal::saturated_value(-1), true};
  return {m, false};
}

RadialModuli radial_moduli(const EntireFunction& f, const WideReal& t, double tol,
                           int n_coarse) {
  RadialModuli r;
  r.t = t;
  r.tol = tol;
  r.n_samples = n_coarse;
  r.logM = log_max_modulus(f, t, tol, n_coarse);
  auto m = log_min_modulus(f, t, tol, n_coarse);
  r.logm = m.logm;
  r.zero_on_circle = m.zero_on_circle;
  return r;
}

WideReal mu(const EntireFunction& f, const WideReal& t, double tol) {
  if (auto ex = exact_log_max_modulus(f, t)) return *ex; // cheap, skip cache
  auto key = std::make_tuple(fn_key(f), t.str(), tol);
  {
    std::lock_guard<std::mutex> lk(g_mu_mutex);
    auto it = g_mu_cache.find(key);
    if (it != g_mu_cache.end()) return it->second;
  }
  WideReal v = log_max_modulus(f, t, tol);
  std::lock_guard<std::mutex> lk(g_mu_mutex);
  g_mu_cache.emplace(std::move(key), v);
  return v;
}

void clear_moduli_cache() {
  std::lock_guard<std::mutex> lk(g_mu_mutex);
  g_mu_cache.clear();
}

double delta_of(const WideReal& t) {
  if (!(t > WideReal(1.0))) throw DomainError("delta(r) requires log r > 1");
  return (WideReal(1.0) / sqrt_w(t)).to_double();
}

HadamardReport hadamard_check(const EntireFunction& f,
                              const std::vector<WideReal>& t_grid,
                              const std::vector<double>& k_grid) {
  if (t_grid.empty() || k_grid.empty())
    throw DomainError("hadamard_check: empty grid");
  HadamardReport rep;
  static const Real ln2 = log(Real(2));
  for (const auto& t : t_grid) {
    double td = t.to_double();
    bool t_ok = true;
    for (double k : k_grid) {
      if (k <= 1) throw DomainError("hadamard_check: k must be > 1");
      HadamardPoint pt{td, k, 0.0, true};
      try {
        WideReal diff = mu(f, t) * k - mu(f, t * k);
        pt.violation = std::max(0.0, diff.to_double());
      } catch (const RangeExceeded&) {
        pt.ok = false;
        t_ok = false;
      }
      rep.points.push_back(pt);
    }
    try {
      WideReal g = mu(f, t + WideReal::from_real(ln2)) - mu(f, t);
      rep.growth.emplace_back(td, g.to_double());
    } catch (const RangeExceeded&) {
      (void)t_ok;
    }
  }
  // least grid t beyond which every evaluated (t, k) shows no violation
  double last_bad = -std::numeric_limits<double>::infinity();
  for (const auto& pt : rep.points)
    if (pt.ok && pt.violation > 0) last_bad = std::max(last_bad, pt.t);
  double r1 = t_grid.back().to_double();
  for (const auto& t : t_grid) {
    double td = t.to_double();
    if (td > last_bad) {
      r1 = td;
      break;
    }
  }
  rep.empirical_R1 = r1;
  return rep;
}

LambdaEps lambda_eps(const EntireFunction& f, const WideReal& t, double C0,
                     double C1) {
  if (C0 <= 1 || C1 <= 1) throw DomainError("lambda_eps: C0, C1 must be > 1");
  if (t.saturated()) throw RangeExceeded("lambda_eps: t saturated");
  static const Real ln2 = log(Real(2));
  WideReal d = mu(f, t + WideReal::from_real(ln2)) - mu(f, t);
  WideReal log_lambda;
  if (d > WideReal(50.0)) {
    log_lambda = d - WideReal::from_real(ln2); // log((e^d-1)/2) ~ d - log 2
  } else {
    Real dr = d.to_real();
    Real lam = (exp(dr) - 1) / 2;
    if (!(lam > 0)) return {WideReal::saturated_value(-1), 2 * C1};
    log_lambda = WideReal::from_real(log(lam));
  }
  WideReal expo = (WideReal(std::log(C1)) + log_lambda) / C0;
  double eps = 2 * C1 * std::exp(std::min(700.0, std::max(-700.0, -expo.to_double())));
  if (expo.to_double() > 700) eps = 0;
  return {log_lambda, std::max(0.0, eps)};
}

} // namespace annular
