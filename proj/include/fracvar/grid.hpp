// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_GRID_HPP
#define FRACVAR_GRID_HPP

#include <Eigen/Dense>

#include "fracvar/errors.hpp"

namespace fracvar {

using BoolArray = Eigen::Array<bool, Eigen::Dynamic, 1>;

// Uniform periodic grid covering [-L, L)^dim. Node coordinates are
// x_i = -L + i*h, i in [0, n); the right endpoint is excluded.
class GridSpec {
public:
  GridSpec(int dim, Eigen::Index points_per_axis, double box_halfwidth);

  // Variant taking an explicit spacing; spacing * points_per_axis must equal
  // 2 * box_halfwidth to relative 1e-12 (CSV headers store the spacing).
  static GridSpec with_spacing(int dim, Eigen::Index points_per_axis,
                               double spacing, double box_halfwidth);

  int dim() const { return dim_; }
  Eigen::Index points_per_axis() const { return n_; }
  double spacing() const { return h_; }
  double box_halfwidth() const { return box_; }
  Eigen::Index node_count() const { return dim_ == 1 ? n_ : n_ * n_; }
  double cell_volume() const { return dim_ == 1 ? h_ : h_ * h_; }

  // Coordinate along one axis, bit-reproducible from the index.
  double coord(Eigen::Index axis_index) const { return -box_ + h_ * static_cast<double>(axis_index); }

  Eigen::Index index2(Eigen::Index ix, Eigen::Index iy) const { return iy * n_ + ix; }

  // Writes the node position into xy[0], xy[1] (xy[1] untouched for dim 1).
  void point(Eigen::Index node, double* xy) const {
    if (dim_ == 1) {
      xy[0] = coord(node);
    } else {
      xy[0] = coord(node % n_);
      xy[1] = coord(node / n_);
    }
  }

  bool operator==(const GridSpec& o) const {
    return dim_ == o.dim_ && n_ == o.n_ && h_ == o.h_ && box_ == o.box_;
  }

private:
  int dim_;
  Eigen::Index n_;
  double h_;
  double box_;
};

// Omega and an enlarged Omega' inside the box, as node masks. Exterior nodes
// (complement of omega) carry the complementary values u = g.
class DomainMask {
public:
  DomainMask(GridSpec grid, BoolArray omega, BoolArray omega_prime);

  // Centered boxes |x|_inf < r_omega and |x|_inf < r_omega_prime.
  static DomainMask centered_boxes(const GridSpec& grid, double r_omega,
                                   double r_omega_prime);

  const GridSpec& grid() const { return grid_; }
  const BoolArray& omega() const { return omega_; }
  const BoolArray& omega_prime() const { return omega_prime_; }

  // omega dilated by one node per axis (3^dim neighborhood, clipped at the
  // box edge): the discrete closure of Omega.
  const BoolArray& omega_closure() const { return closure_; }

  Eigen::Index omega_count() const { return omega_.count(); }

  // Point membership for atom locations. A point belongs to the closure when
  // some node within one cell (Chebyshev distance <= h) is in omega, and to
  // the open set when every such node is. A point sitting on the continuum
  // boundary of omega lands in the closure but not in the open set.
  bool point_in_closure(const double* pt) const;
  bool point_in_open(const double* pt) const;

private:
  GridSpec grid_;
  BoolArray omega_;
  BoolArray omega_prime_;
  BoolArray closure_;
};

BoolArray dilate_mask(const GridSpec& grid, const BoolArray& mask);

}  // namespace fracvar

#endif
