// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_PARAMS_HPP
#define FRACVAR_PARAMS_HPP

#include "fracvar/errors.hpp"
#include "fracvar/grid.hpp"

namespace fracvar {

enum class BackendKind { spectral, quadrature };

// Order and discretization controls shared by the fractional operators.
// quad_inner_radius bounds the singularity-subtraction cell (analytic kernel
// moments against a local Taylor model); quad_outer_radius truncates the
// tail. Both are lengths and are validated against the grid at call sites.
struct FracParams {
  double alpha = 0.5;
  BackendKind backend = BackendKind::spectral;
  double quad_inner_radius = 0.0;  // 0 = choose from the grid (2.5 cells)
  double quad_outer_radius = 0.0;  // 0 = box halfwidth

  void validate(const GridSpec& grid) const {
    require(alpha > 0.0 && alpha < 1.0, "FracParams: alpha must lie in (0,1)");
    if (backend == BackendKind::quadrature) {
      const double rin = inner_radius(grid);
      const double rout = outer_radius(grid);
      require(rin >= grid.spacing(), "FracParams: quad_inner_radius below grid spacing");
      require(rout <= grid.box_halfwidth(), "FracParams: quad_outer_radius exceeds box halfwidth");
      require(rin < rout, "FracParams: inner radius must be below outer radius");
    }
  }

  double inner_radius(const GridSpec& grid) const {
    return quad_inner_radius > 0.0 ? quad_inner_radius : 2.5 * grid.spacing();
  }
  double outer_radius(const GridSpec& grid) const {
    return quad_outer_radius > 0.0 ? quad_outer_radius : grid.box_halfwidth();
  }
};

// Backend choice bound to its parameters; spectral requires the periodic
// grid (always true here), quadrature requires valid radii.
struct OperatorBackend {
  BackendKind kind = BackendKind::spectral;
  FracParams params;

  static OperatorBackend spectral(double alpha) {
    return {BackendKind::spectral, FracParams{alpha, BackendKind::spectral, 0.0, 0.0}};
  }
  static OperatorBackend quadrature(double alpha, double inner = 0.0, double outer = 0.0) {
    return {BackendKind::quadrature, FracParams{alpha, BackendKind::quadrature, inner, outer}};
  }
};

}  // namespace fracvar

#endif
