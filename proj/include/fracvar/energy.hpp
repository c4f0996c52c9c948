// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_ENERGY_HPP
#define FRACVAR_ENERGY_HPP

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fracvar/field.hpp"
#include "fracvar/integrand.hpp"
#include "fracvar/params.hpp"

namespace fracvar {

// Point mass of a distributional gradient: a location and a vector weight
// with one entry per dimension.
struct Atom {
  std::array<double, 2> location{0.0, 0.0};
  Eigen::VectorXd weight;
};

// Distributional fractional gradient split into an absolutely continuous
// density (a vector field, per unit volume) and finitely many atoms. Valid
// atoms lie in the closure of Omega; the energy evaluators enforce this.
struct MeasureDecomp {
  Field density;
  std::vector<Atom> atoms;
};

// Integral of |density| over the box plus the atom masses.
double measure_total_variation(const MeasureDecomp& mu);

// Energy split over the box. Which node set feeds bulk_omega depends on the
// evaluator: the plain and extended energies put the one-node boundary ring
// into the bulk, the relaxed energy evaluates the original integrand there
// and reports it as exterior.
struct EnergyReport {
  double bulk_omega = 0.0;
  double singular_omega_bar = 0.0;
  double exterior = 0.0;
  double total = 0.0;
};

// JSON object with the four report keys plus alpha, grid, and backend
// provenance.
std::string energy_report_json(const EnergyReport& r, const GridSpec& grid,
                               const OperatorBackend& backend);

// Integral of f(x, frac_gradient(u)) over the box, split into the closure of
// Omega and the rest. u must equal g on every node outside Omega to 1e-12;
// no singular part.
EnergyReport energy_plain(const Field& u, const Field& g,
                          const DomainMask& mask, const Integrand& f,
                          const OperatorBackend& backend);

// Bulk terms from the density as in energy_plain, plus the recession of f
// against the atoms: sum of f^inf(location, weight/|weight|) * |weight|.
// Uses known_recession when present, otherwise the tail estimate; throws
// when the estimate flags an ill-defined limit or an atom escapes the
// closure of Omega.
EnergyReport energy_extended(const MeasureDecomp& mu, const DomainMask& mask,
                             const Integrand& f);

// Relaxed energy: the convex envelope of f on Omega, the original f on the
// rest of the box (reported as exterior), and the recession of the envelope
// against the atoms. The envelope comes from known_envelope, from f itself
// when is_convex_in_A, or in dimension one from convex_envelope_1d on an
// automatic sample window; the vectorial case without an envelope is
// rejected.
EnergyReport energy_relaxed(const Field& u_density,
                            const std::vector<Atom>& atoms, const Field& g,
                            const DomainMask& mask, const Integrand& f,
                            const OperatorBackend& backend);

enum class Region { omega, omega_closure, omega_prime, box };

// Area functional of the measure over the region: integral of
// sqrt(1 + |density|^2) plus the masses of the atoms lying in the region.
// Omega and its closure bound the same volume (the continuum boundary is
// null), so they differ exactly by the atoms sitting on the boundary:
// counted for the closure, not for the open set.
double area_functional(const MeasureDecomp& mu, const DomainMask& mask,
                       Region region);

}  // namespace fracvar

#endif
