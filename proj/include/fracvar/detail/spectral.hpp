// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_DETAIL_SPECTRAL_HPP
#define FRACVAR_DETAIL_SPECTRAL_HPP

#include <Eigen/Dense>

#include "fracvar/grid.hpp"

namespace fracvar::detail {

// Multiplier tables for the fractional gradient/divergence pair of order
// alpha on a fixed grid. alpha = 1 reproduces the classical gradient.
//
// Component j of the gradient multiplier is i * g_j(xi) * (2*pi*|xi|)^(alpha-1)
// with g_j = 2*pi*xi_j; the divergence contracts the same multiplier against a
// vector field, which makes it the exact negative adjoint of the gradient.
// The zero mode maps to zero. On even-length axes the Nyquist bin carries no
// usable sign information for odd multipliers, so every bin with any axis at
// Nyquist is zeroed for all components at once.
class SpectralPlan {
 public:
  SpectralPlan(const GridSpec& grid, double alpha);

  const GridSpec& grid() const { return grid_; }
  double alpha() const { return alpha_; }

  // u: one value per node. Result row j holds component j.
  Eigen::ArrayXXd gradient(const Eigen::Ref<const Eigen::ArrayXd>& u) const;
  // p: row j holds component j. Result: one value per node.
  Eigen::ArrayXd divergence(const Eigen::Ref<const Eigen::ArrayXXd>& p) const;

 private:
  GridSpec grid_;
  double alpha_;
  Eigen::ArrayXd g_;       // 2*pi*xi per axis bin (axes share the table)
  Eigen::ArrayXd magpow_;  // (2*pi*|xi|)^(alpha-1) per node bin, with kills folded in
};

// Applies the real radial multiplier (2*pi*|xi|)^exponent bin-wise; the zero
// mode maps to zero. Even real multipliers keep their Nyquist bins. Used for
// the Riesz potential (exponent = -alpha) and the fractional Laplacian
// (exponent = 2s).
Eigen::ArrayXd apply_radial_multiplier(const GridSpec& grid,
                                       const Eigen::Ref<const Eigen::ArrayXd>& u,
                                       double exponent);

}  // namespace fracvar::detail

#endif
