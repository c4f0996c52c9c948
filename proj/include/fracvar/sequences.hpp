// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_SEQUENCES_HPP
#define FRACVAR_SEQUENCES_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fracvar/energy.hpp"
#include "fracvar/field.hpp"
#include "fracvar/grid.hpp"

namespace fracvar {

// Per-index measurements of an approximating sequence. All four vectors have
// one entry per sequence member, in order.
struct SequenceDiagnostics {
  std::vector<double> l1_distance_to_limit;
  std::vector<double> energy_values;
  std::vector<double> exterior_gradient_l1_error;
  std::vector<double> area_functional_values;
};

std::string diagnostics_csv(const SequenceDiagnostics& d);
std::string diagnostics_json(const SequenceDiagnostics& d);

// Oscillating competitors w_k: a sawtooth profile of frequency k along the
// given unit direction, scaled by 1/k, multiplied by the amplitude profile,
// lifted by the fractional Laplacian of order (1-alpha)/2, and cut off by a
// smooth window that is exactly zero outside Omega. The members vanish
// outside Omega at every node and shrink in L1 as the frequency grows while
// their fractional gradients keep unit-order oscillation.
//
// amplitude must be exactly zero outside Omega; frequencies must be strictly
// increasing, positive, and resolved by at least four nodes per period.
std::vector<Field> laminate_sequence(const Field& amplitude,
                                     const std::array<double, 2>& direction,
                                     const std::vector<int>& frequencies,
                                     const DomainMask& mask, double alpha);

// Drop in the infimum produced by relaxation: the double-well integrand
// ||A| - b(x)| has plain energy b-mass at u = 0, while laminates built from
// b as amplitude push the energy toward zero. The relaxed energy at u = 0 is
// exactly zero, matching the sequence limit.
struct GapReport {
  SequenceDiagnostics diagnostics;
  double energy_at_limit = 0.0;
  double relaxed_at_limit = 0.0;
  double min_sequence_energy = 0.0;
  double gap = 0.0;
};

GapReport relaxation_gap_demo(const Field& b_profile, double alpha,
                              const DomainMask& mask,
                              const std::vector<int>& frequencies);

// Mollification competitors u_delta = g + eta_delta * (u_target - g) for a
// target with a known gradient decomposition mu. u_target - g must be
// supported in Omega with an L-infinity margin wider than the largest delta,
// so every competitor matches g exactly at every node outside Omega.
// energy_values holds the plain area energy of u_delta over the box,
// area_functional_values the area functional of its gradient over the
// closure of Omega; both approach the area functional of mu from above as
// delta shrinks. deltas must be positive and strictly decreasing.
SequenceDiagnostics area_strict_approx(const Field& u_target,
                                       const MeasureDecomp& mu, const Field& g,
                                       const DomainMask& mask, double alpha,
                                       const std::vector<double>& deltas);

// Empirical constant for the lower bound
//   ||u||_L1(box) + ||frac_gradient(u)||_L1(box)
//     <= C * ||frac_gradient(u)||_L1(Omega')
// over random bump superpositions supported in Omega. Draws whose
// denominator degenerates below 1e-14 are resampled and counted.
struct PoincareReport {
  double c_hat = 0.0;
  std::vector<double> ratios;
  int resampled = 0;
};

PoincareReport poincare_probe(const DomainMask& mask, double alpha, int trials,
                              std::uint64_t seed);

// L1 distance of frac_gradient(w_j) to frac_gradient(limit) outside Omega',
// one value per member. Every member must already match the limit outside
// Omega (the complementary-value condition); a violation is an error, not a
// large value.
std::vector<double> strong_outside_probe(const std::vector<Field>& sequence,
                                         const Field& limit,
                                         const DomainMask& mask, double alpha);

}  // namespace fracvar

#endif
