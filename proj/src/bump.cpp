// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#include "fracvar/bump.hpp"

#include <cmath>

namespace fracvar {

Field make_bump(const GridSpec& grid, std::array<double, 2> center, double radius) {
  require(radius > 0.0, "make_bump: radius must be positive");
  for (int a = 0; a < grid.dim(); ++a)
    require(std::abs(center[a]) + radius < grid.box_halfwidth(),
            "make_bump: ball does not fit inside the box");

  Eigen::ArrayXXd v(1, grid.node_count());
  double xy[2] = {0.0, 0.0};
  const double inv_r2 = 1.0 / (radius * radius);
  for (Eigen::Index i = 0; i < grid.node_count(); ++i) {
    grid.point(i, xy);
    double q = (xy[0] - center[0]) * (xy[0] - center[0]);
    if (grid.dim() == 2) q += (xy[1] - center[1]) * (xy[1] - center[1]);
    q *= inv_r2;
    v(0, i) = q < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - q)) : 0.0;
  }
  return Field(grid, Rank::scalar, std::move(v));
}

double smoothstep_cinf(double t) {
  // B(t)/(B(t)+B(1-t)) with B(t) = exp(-1/t): reaches 0 and 1 exactly.
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

Field make_plateau(const GridSpec& grid, std::array<double, 2> center,
                   double inner, double outer) {
  require(0.0 < inner && inner < outer, "make_plateau: need 0 < inner < outer");
  for (int a = 0; a < grid.dim(); ++a)
    require(std::abs(center[a]) + outer < grid.box_halfwidth(),
            "make_plateau: support does not fit inside the box");

  Eigen::ArrayXXd v(1, grid.node_count());
  double xy[2] = {0.0, 0.0};
  for (Eigen::Index i = 0; i < grid.node_count(); ++i) {
    grid.point(i, xy);
    double r = std::abs(xy[0] - center[0]);
    if (grid.dim() == 2) r = std::max(r, std::abs(xy[1] - center[1]));
    v(0, i) = smoothstep_cinf((outer - r) / (outer - inner));
  }
  return Field(grid, Rank::scalar, std::move(v));
}

}  // namespace fracvar
