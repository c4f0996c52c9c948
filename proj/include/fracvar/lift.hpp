// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_LIFT_HPP
#define FRACVAR_LIFT_HPP

#include "fracvar/energy.hpp"
#include "fracvar/field.hpp"
#include "fracvar/grid.hpp"
#include "fracvar/params.hpp"

namespace fracvar {

struct LiftResult {
  Field u;
  MeasureDecomp mu;
};

// Lift of a bounded-variation profile: u with frac_gradient(u) equal to the
// distributional gradient of v, via u = frac_laplacian(v, (1-alpha)/2).
//
// Two constructible families are accepted:
//  - dimension one, piecewise linear with isolated jumps: the samples are
//    parsed back into pieces (jumps live at cell midpoints, kinks at nodes),
//    the lift of the zero extension is evaluated in closed form, the density
//    is the piecewise slope and each jump becomes an atom. The closed form
//    avoids the ringing a periodic transform would wrap around every jump.
//  - smooth fields (negligible energy in the upper half of the spectrum, any
//    dimension): the lift is the requested backend's fractional Laplacian,
//    the density is the spectral gradient of v, no atoms.
// Everything else is rejected; so are mixtures the parser cannot validate
// against the samples.
LiftResult bv_lift(const Field& v, double alpha, const OperatorBackend& backend);

// L1 norm of chi * |frac_gradient(u) - frac_gradient(v)| over the window.
// u and v must agree on the window (to 1e-12 of their scale) and chi must
// vanish off it; the value is then small exactly when the far-away parts of
// u and v influence the window weakly.
double locality_check(const Field& u, const Field& v, const BoolArray& window,
                      const Field& chi, double alpha);

}  // namespace fracvar

#endif
