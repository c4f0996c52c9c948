// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_BUMP_HPP
#define FRACVAR_BUMP_HPP

#include <array>

#include "fracvar/field.hpp"

namespace fracvar {

// Standard smooth bump exp(1 - 1/(1 - |x-c|^2/r^2)) on the ball of the given
// radius, exactly zero outside it (no denormal tails). Value 1 at the center.
// The ball must fit inside the box.
Field make_bump(const GridSpec& grid, std::array<double, 2> center, double radius);

// C^infinity transition 0 -> 1: exactly 0 for t <= 0, exactly 1 for t >= 1.
double smoothstep_cinf(double t);

// Smooth plateau profile: exactly 1 on |x - c|_inf <= inner, exactly 0 on
// |x - c|_inf >= outer, C^infinity in between. Used for cutoffs chi and
// amplitude profiles.
Field make_plateau(const GridSpec& grid, std::array<double, 2> center,
                   double inner, double outer);

}  // namespace fracvar

#endif
