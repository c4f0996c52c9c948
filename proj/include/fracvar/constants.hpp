// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_CONSTANTS_HPP
#define FRACVAR_CONSTANTS_HPP

namespace fracvar {

// Gamma function. Rejects nonpositive integers (poles); relative error
// <= 1e-12 on [0.05, 30], checked against exact values and the reflection
// formula in the unit tests.
double gamma_fn(double x);

// Normalization constants of the order-alpha fractional calculus in
// dimension n:
//   mu    = 2^alpha pi^(-n/2) Gamma((n+alpha+1)/2) / Gamma((1-alpha)/2)
//   gamma = pi^(n/2) 2^alpha Gamma(alpha/2) / Gamma((n-alpha)/2)
//   nu    = 2^alpha pi^(-n/2) Gamma((n+alpha)/2) / Gamma(-alpha/2)
// nu < 0 on alpha in (0,1): Gamma is negative on (-1,0).
struct FracConstants {
  double mu;
  double gamma;
  double nu;
};

FracConstants frac_constants(int dim, double alpha);

namespace detail {
// nu at an arbitrary order in (0,2)\{poles}; the operators evaluate it at
// order 2s with s in (0,1), where the public alpha range does not apply.
double nu_of_order(int dim, double order);
}  // namespace detail

}  // namespace fracvar

#endif
