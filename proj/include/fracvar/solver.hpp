// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_SOLVER_HPP
#define FRACVAR_SOLVER_HPP

#include <vector>

#include "fracvar/field.hpp"
#include "fracvar/params.hpp"

namespace fracvar {

// First-order primal-dual configuration. Zero steps or a zero norm estimate
// mean "derive from the operator norm"; explicit steps must satisfy
// primal_step * dual_step * operator_norm_estimate^2 <= 1.
struct SolverConfig {
  int max_iters = 5000;
  double primal_step = 0.0;
  double dual_step = 0.0;
  double tolerance = 1e-6;
  double operator_norm_estimate = 0.0;
};

// The minimizer is the best iterate by energy, not the last one, so the
// energy history is nonincreasing by construction and its final entry is the
// energy of the returned field. gap_history holds the convergence
// certificate per iteration: a duality gap for the denoiser, a stationarity
// residual for the area problem.
struct SolveResult {
  Field minimizer;
  std::vector<double> energy_history;
  std::vector<double> gap_history;
  int iterations_used = 0;
};

// Operator norm of the fractional gradient, from power iteration on the
// composition with its adjoint. At least 10 iterations; deterministic
// (cosine start at the extreme lattice frequency plus a fixed seeded
// perturbation).
double estimate_operator_norm(const OperatorBackend& backend,
                              const GridSpec& grid, int iters);

// min over u of  integral |grad^a u| + (lambda/2) integral_Omega (u - noisy)^2
// with u = g outside Omega, by an accelerated primal-dual iteration (the
// fidelity term is lambda-strongly convex on the interior). Terminates when
// the relative primal-dual gap falls below config.tolerance.
SolveResult solve_frac_rof(const Field& noisy, const Field& g,
                           const DomainMask& mask, double lambda,
                           const FracParams& params, const SolverConfig& config);

// min over u of  integral sqrt(1 + |grad^a u|^2) - 1  with u = g outside
// Omega. Same scheme with theta = 1; the dual prox solves the radial
// one-dimensional problem for the conjugate 1 - sqrt(1 - |p|^2) by Newton
// with a bisection fallback. The reported gap is the first-order
// stationarity residual on the interior.
SolveResult solve_frac_area(const Field& g, const DomainMask& mask,
                            const FracParams& params, const SolverConfig& config);

}  // namespace fracvar

#endif
