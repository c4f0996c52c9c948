// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#include "fracvar/grid.hpp"

#include <cmath>

namespace fracvar {

GridSpec::GridSpec(int dim, Eigen::Index points_per_axis, double box_halfwidth)
    : dim_(dim), n_(points_per_axis), box_(box_halfwidth) {
  require(dim_ == 1 || dim_ == 2, "GridSpec: dim must be 1 or 2");
  require(n_ >= 2, "GridSpec: need at least 2 points per axis");
  require(box_ > 0.0 && std::isfinite(box_), "GridSpec: box halfwidth must be positive");
  h_ = 2.0 * box_ / static_cast<double>(n_);
}

GridSpec GridSpec::with_spacing(int dim, Eigen::Index points_per_axis,
                                double spacing, double box_halfwidth) {
  GridSpec g(dim, points_per_axis, box_halfwidth);
  require(spacing > 0.0 && std::isfinite(spacing), "GridSpec: spacing must be positive");
  const double prod = spacing * static_cast<double>(points_per_axis);
  require(std::abs(prod - 2.0 * box_halfwidth) <= 1e-12 * 2.0 * box_halfwidth,
          "GridSpec: spacing * points_per_axis != 2 * box_halfwidth");
  g.h_ = spacing;  // keep the caller's representation bit-exact
  return g;
}

namespace {

bool on_outer_layer(const GridSpec& g, Eigen::Index node) {
  const Eigen::Index n = g.points_per_axis();
  if (g.dim() == 1) return node == 0 || node == n - 1;
  const Eigen::Index ix = node % n, iy = node / n;
  return ix == 0 || ix == n - 1 || iy == 0 || iy == n - 1;
}

}  // namespace

BoolArray dilate_mask(const GridSpec& grid, const BoolArray& mask) {
  const Eigen::Index n = grid.points_per_axis();
  BoolArray out = mask;
  if (grid.dim() == 1) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (mask(i)) {
        if (i > 0) out(i - 1) = true;
        if (i + 1 < n) out(i + 1) = true;
      }
    }
  } else {
    for (Eigen::Index iy = 0; iy < n; ++iy)
      for (Eigen::Index ix = 0; ix < n; ++ix) {
        if (!mask(grid.index2(ix, iy))) continue;
        for (Eigen::Index dy = -1; dy <= 1; ++dy)
          for (Eigen::Index dx = -1; dx <= 1; ++dx) {
            const Eigen::Index jx = ix + dx, jy = iy + dy;
            if (jx >= 0 && jx < n && jy >= 0 && jy < n) out(grid.index2(jx, jy)) = true;
          }
      }
  }
  return out;
}

DomainMask::DomainMask(GridSpec grid, BoolArray omega, BoolArray omega_prime)
    : grid_(grid), omega_(std::move(omega)), omega_prime_(std::move(omega_prime)) {
  require(omega_.size() == grid_.node_count() && omega_prime_.size() == grid_.node_count(),
          "DomainMask: mask size does not match grid");
  require(omega_.any(), "DomainMask: omega is empty");
  for (Eigen::Index i = 0; i < grid_.node_count(); ++i) {
    require(!omega_(i) || omega_prime_(i), "DomainMask: omega not contained in omega_prime");
    require(!omega_prime_(i) || !on_outer_layer(grid_, i),
            "DomainMask: omega_prime touches the box boundary");
  }
  closure_ = dilate_mask(grid_, omega_);
  // Discrete stand-in for Omega' compactly containing Omega: one-cell margin.
  for (Eigen::Index i = 0; i < grid_.node_count(); ++i)
    require(!closure_(i) || omega_prime_(i),
            "DomainMask: omega_prime must contain the closure of omega");
}

DomainMask DomainMask::centered_boxes(const GridSpec& grid, double r_omega,
                                      double r_omega_prime) {
  require(r_omega > 0.0 && r_omega < r_omega_prime,
          "DomainMask: need 0 < r_omega < r_omega_prime");
  const Eigen::Index total = grid.node_count();
  BoolArray om(total), omp(total);
  double xy[2] = {0.0, 0.0};
  for (Eigen::Index i = 0; i < total; ++i) {
    grid.point(i, xy);
    const double r = grid.dim() == 1 ? std::abs(xy[0]) : std::max(std::abs(xy[0]), std::abs(xy[1]));
    om(i) = r < r_omega;
    omp(i) = r < r_omega_prime;
  }
  return DomainMask(grid, std::move(om), std::move(omp));
}

namespace {

// Axis indices of the nodes within one cell of the coordinate, clipped.
void cell_neighborhood(const GridSpec& g, double x, Eigen::Index* lo, Eigen::Index* hi) {
  const double t = (x + g.box_halfwidth()) / g.spacing();
  *lo = static_cast<Eigen::Index>(std::ceil(t - 1.0 - 1e-9));
  *hi = static_cast<Eigen::Index>(std::floor(t + 1.0 + 1e-9));
  if (*lo < 0) *lo = 0;
  if (*hi > g.points_per_axis() - 1) *hi = g.points_per_axis() - 1;
}

}  // namespace

bool DomainMask::point_in_closure(const double* pt) const {
  Eigen::Index xlo, xhi, ylo = 0, yhi = 0;
  cell_neighborhood(grid_, pt[0], &xlo, &xhi);
  if (grid_.dim() == 2) cell_neighborhood(grid_, pt[1], &ylo, &yhi);
  for (Eigen::Index iy = ylo; iy <= yhi; ++iy)
    for (Eigen::Index ix = xlo; ix <= xhi; ++ix) {
      const Eigen::Index node = grid_.dim() == 1 ? ix : grid_.index2(ix, iy);
      if (omega_(node)) return true;
    }
  return false;
}

bool DomainMask::point_in_open(const double* pt) const {
  Eigen::Index xlo, xhi, ylo = 0, yhi = 0;
  cell_neighborhood(grid_, pt[0], &xlo, &xhi);
  if (grid_.dim() == 2) cell_neighborhood(grid_, pt[1], &ylo, &yhi);
  if (xlo > xhi || (grid_.dim() == 2 && ylo > yhi)) return false;
  for (Eigen::Index iy = ylo; iy <= yhi; ++iy)
    for (Eigen::Index ix = xlo; ix <= xhi; ++ix) {
      const Eigen::Index node = grid_.dim() == 1 ? ix : grid_.index2(ix, iy);
      if (!omega_(node)) return false;
    }
  return true;
}

}  // namespace fracvar
