// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_OPS_HPP
#define FRACVAR_OPS_HPP

#include <cstdint>

#include "fracvar/field.hpp"
#include "fracvar/params.hpp"

// Nonlocal operators of fractional order on box grids.
//
// Sign convention. frac_laplacian carries the Fourier symbol +(2*pi*|xi|)^(2s),
// i.e. it is positive semidefinite: <frac_laplacian(u, s), u> >= 0. Its
// increment form has a negative front constant (nu < 0) against the raw
// increment sum. Composing gradient and divergence gives
//   frac_divergence(frac_gradient(u)) == -frac_laplacian(u, alpha),
// and the divergence is the exact negative adjoint of the gradient.
//
// Both backends treat fields as identically zero outside the box. The
// quadrature backend truncates interactions to |z| <= outer radius and
// replaces the inner ball |z| < inner radius by a second-order local model,
// so it converges at fixed radii only up to those truncation errors.

namespace fracvar {

// Riesz potential of order alpha in (0, dim), applied componentwise.
// Spectral symbol (2*pi*|xi|)^(-alpha); the zero mode maps to zero, so the
// result of a nonzero-mean input is its zero-mean representative.
Field riesz_potential(const Field& u, double alpha, const OperatorBackend& backend);

// Fractional gradient of order backend.params.alpha. Scalar input gives a
// vector field; vector input gives the matrix field with component (i, j)
// holding derivative j of input component i.
Field frac_gradient(const Field& u, const OperatorBackend& backend);

// Fractional divergence of a vector field, order backend.params.alpha.
// Satisfies <frac_gradient(u), p> == -<u, frac_divergence(p)>.
Field frac_divergence(const Field& p, const OperatorBackend& backend);

// Fractional Laplacian of order s in (0, 1), applied componentwise. See the
// sign convention above. The backend's alpha is ignored; its radii are used
// by the quadrature path.
Field frac_laplacian(const Field& u, double s, const OperatorBackend& backend);

// Spectral gradient of order one. Scalar to vector, vector to matrix.
Field classical_gradient(const Field& u);

// Centered-difference gradient with zero extension; reference for h^2
// convergence checks against classical_gradient.
Field fd_gradient(const Field& u);

// Periodic centered difference of the complementary-order Riesz potential.
// Same continuum symbol as frac_gradient, but the local outer derivative
// keeps jump mass in place: total variations of lifted measures come out
// near the measure mass, where the band-limited kernel inflates them by
// log n. Scalar input only.
Field conservative_frac_gradient(const Field& u, const OperatorBackend& backend);

// Pointwise defect of the fractional Leibniz rule for scalar u and psi:
//   frac_gradient(u * psi) - u * frac_gradient(psi) - psi * frac_gradient(u).
// Collapses to a double-increment integral and is always evaluated by the
// annulus quadrature; the backend supplies order and radii. psi must vanish
// on the outermost node layer.
Field leibniz_remainder(const Field& u, const Field& psi, const OperatorBackend& backend);

// Draws `trials` random smooth pairs (u, p) and returns the largest value of
//   |<frac_gradient(u), p> + <u, frac_divergence(p)>| / (|u|_2 * |p|_2).
// trials must be >= 1.
double adjoint_check(const GridSpec& grid, const OperatorBackend& backend,
                     int trials, std::uint64_t seed);

namespace detail {

// Seeded band-limited field with entries of order one; modes above one
// eighth of the axis length are removed.
Field random_smooth_field(const GridSpec& grid, Rank rank, std::uint64_t seed);

}  // namespace detail

}  // namespace fracvar

#endif
