// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_FIELD_HPP
#define FRACVAR_FIELD_HPP

#include <Eigen/Dense>

#include "fracvar/grid.hpp"

namespace fracvar {

enum class Rank { scalar, vector, matrix };

// Components per node: 1, dim, or dim*dim. Matrix components are stored
// row-major per node: entry (i,j) at offset i*dim + j.
int rank_components(Rank rank, int dim);

const char* rank_name(Rank rank);
Rank rank_from_name(const std::string& name);

// Sampled function on a grid. values() has one row per component and one
// column per node; all entries must be finite.
class Field {
public:
  Field(GridSpec grid, Rank rank, Eigen::ArrayXXd values);

  static Field zeros(const GridSpec& grid, Rank rank);
  static Field scalar(const GridSpec& grid, Eigen::ArrayXd values);

  const GridSpec& grid() const { return grid_; }
  Rank rank() const { return rank_; }
  Eigen::Index components() const { return values_.rows(); }

  const Eigen::ArrayXXd& values() const { return values_; }
  Eigen::ArrayXXd& values() { return values_; }

  double operator()(Eigen::Index comp, Eigen::Index node) const { return values_(comp, node); }

  void check_finite() const;

private:
  GridSpec grid_;
  Rank rank_;
  Eigen::ArrayXXd values_;
};

}  // namespace fracvar

#endif
