// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_INTEGRAND_HPP
#define FRACVAR_INTEGRAND_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "fracvar/grid.hpp"

namespace fracvar {

// Gradient argument of an integrand: one entry per space dimension. The
// spatial point arrives as a pointer to dim doubles, matching GridSpec::point.
using GradArg = Eigen::Ref<const Eigen::VectorXd>;
using IntegrandFn = std::function<double(const double* x, const GradArg& A)>;

// Integrand f(x, A) of linear growth. The growth and coercivity constants are
// declarations, audited on random probes rather than derived:
//   |f(x, A)| <= growth_M * |A| + growth_a(x),
//   coercivity_mu * |A| - coercivity_c <= f(x, A).
// A null growth_a means zero. known_recession and known_envelope are optional
// closed forms; when absent the estimators below stand in.
struct Integrand {
  IntegrandFn eval;
  double growth_M = 1.0;
  std::function<double(const double*)> growth_a;
  double coercivity_mu = 1.0;
  double coercivity_c = 0.0;
  IntegrandFn known_recession;
  IntegrandFn known_envelope;
  bool is_convex_in_A = false;
};

// Checks the declared bounds at `probes` random points: x uniform over the
// box, |A| log-uniform over [1e-3, 1e6] plus occasional zeros. Throws on the
// first violation.
void audit_integrand(const Integrand& f, const GridSpec& grid, int probes,
                     std::uint64_t seed);

// Result of extrapolating f(x, tA)/t along a schedule of t values. When the
// tail refuses to settle, `value` holds the largest tail quotient instead of
// a limit and limit_exists is false.
struct RecessionEstimate {
  double value = 0.0;
  bool limit_exists = true;
  double tail_spread = 0.0;  // worst deviation of the tail from its a + b/t fit
};

// Fits a + b/t to the quotient f(x, tA)/t over the last entries of
// t_schedule and extrapolates t -> infinity. The schedule must be strictly
// increasing with at least 3 entries and reach 1e6.
RecessionEstimate recession_estimate(const Integrand& f, const double* x,
                                     const GradArg& A,
                                     const std::vector<double>& t_schedule);

// Geometric schedule 10, 100, ..., 1e7.
std::vector<double> default_t_schedule();

// Lower convex envelope of t -> f(x, t) over the sampled window, returned as
// a callable. Inside the window the envelope is the lower hull of the sampled
// graph; outside it continues along the supporting lines at the window edges.
// Needs at least 3 distinct sample abscissae.
std::function<double(double)> convex_envelope_1d(const Integrand& f,
                                                 const double* x,
                                                 const Eigen::ArrayXd& samples);

// sqrt(1 + |A|^2) - 1. Convex; recession |A|.
Integrand area_integrand();

// |A|. Convex and positively 1-homogeneous, so it equals its own recession.
Integrand modulus_integrand();

// | |A| - b(x) | with 0 <= b <= b_sup: a well at |A| = b(x), nonconvex
// wherever b(x) > 0. Envelope (|A| - b(x))_+, recession |A|.
Integrand well_integrand(std::function<double(const double*)> b, double b_sup);

}  // namespace fracvar

#endif
