// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#include "fracvar/field.hpp"

namespace fracvar {

int rank_components(Rank rank, int dim) {
  switch (rank) {
    case Rank::scalar: return 1;
    case Rank::vector: return dim;
    case Rank::matrix: return dim * dim;
  }
  throw Error("rank_components: bad rank");
}

const char* rank_name(Rank rank) {
  switch (rank) {
    case Rank::scalar: return "scalar";
    case Rank::vector: return "vector";
    case Rank::matrix: return "matrix";
  }
  throw Error("rank_name: bad rank");
}

Rank rank_from_name(const std::string& name) {
  if (name == "scalar") return Rank::scalar;
  if (name == "vector") return Rank::vector;
  if (name == "matrix") return Rank::matrix;
  throw Error("unknown field rank: " + name);
}

Field::Field(GridSpec grid, Rank rank, Eigen::ArrayXXd values)
    : grid_(grid), rank_(rank), values_(std::move(values)) {
  require(values_.rows() == rank_components(rank_, grid_.dim()),
          "Field: component count does not match rank");
  require(values_.cols() == grid_.node_count(), "Field: node count does not match grid");
  check_finite();
}

Field Field::zeros(const GridSpec& grid, Rank rank) {
  return Field(grid, rank,
               Eigen::ArrayXXd::Zero(rank_components(rank, grid.dim()), grid.node_count()));
}

Field Field::scalar(const GridSpec& grid, Eigen::ArrayXd values) {
  Eigen::ArrayXXd v(1, values.size());
  v.row(0) = values.transpose();
  return Field(grid, Rank::scalar, std::move(v));
}

void Field::check_finite() const {
  require(values_.isFinite().all(), "Field: non-finite values");
}

}  // namespace fracvar
