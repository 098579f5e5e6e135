#pragma once

#include <utility>
#include <vector>

#include "annular/entire_function.hpp"
#include "annular/wide_real.hpp"

namespace annular {

struct MinModResult {
  WideReal logm;
  bool zero_on_circle = false; // logm is then a saturated-below sentinel
};

struct RadialModuli {
  WideReal t, logM, logm;
  double tol = 0;
  int n_samples = 0;
  bool zero_on_circle = false;
};

WideReal log_max_modulus(const EntireFunction& f, const WideReal& t,
                         double tol = 1e-12, int n_coarse = 1024);
MinModResult log_min_modulus(const EntireFunction& f, const WideReal& t,
                             double tol = 1e-12, int n_coarse = 1024);
RadialModuli radial_moduli(const EntireFunction& f, const WideReal& t,
                           double tol = 1e-12, int n_coarse = 1024);

// mu(t) = log M(e^t); memoized by (function, t, tol).
WideReal mu(const EntireFunction& f, const WideReal& t, double tol = 1e-12);
void clear_moduli_cache();

// delta(r) = 1 / sqrt(log r) with t = log r.
double delta_of(const WideReal& t);

struct HadamardPoint {
  double t, k;
  double violation; // max(0, k*mu(t) - mu(k*t))
  bool ok;          // false when evaluation exceeded range
};

struct HadamardReport {
  std::vector<HadamardPoint> points;
  std::vector<std::pair<double, double>> growth; // (t, mu(t+log2) - mu(t))
  double empirical_R1; // least grid t beyond which no violation occurs
};

HadamardReport hadamard_check(const EntireFunction& f,
                              const std::vector<WideReal>& t_grid,
                              const std::vector<double>& k_grid);

struct LambdaEps {
  WideReal log_lambda;
  double eps;
};

LambdaEps lambda_eps(const EntireFunction& f, const WideReal& t,
                     double C0 = 20.0, double C1 = 50.0);

} // namespace annular
