// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_DETAIL_QUADRATURE_HPP
#define FRACVAR_DETAIL_QUADRATURE_HPP

#include <Eigen/Dense>

#include "fracvar/grid.hpp"

namespace fracvar::detail {

// Kernel shapes handled by the annulus quadrature. radial is |z|^p,
// directional is z_component * |z|^p.
enum class KernelForm { radial, directional };

// Midpoint sum c(x) = sum_z K(z) u(x + z) over lattice offsets z = m*h with
// r_in <= |z| <= r_out, zero extension outside the box. No h^dim factor; the
// caller supplies it. The FFT path pads to twice the axis length, which is
// alias-free because r_out never exceeds the box halfwidth. Both paths visit
// the identical offset set.
Eigen::ArrayXd annulus_convolution(const GridSpec& grid,
                                   const Eigen::Ref<const Eigen::ArrayXd>& u,
                                   double r_in, double r_out,
                                   KernelForm form, int component, double p,
                                   bool use_fft);

// sum_z |z|^p over the same offset set, again without the h^dim factor.
double annulus_kernel_sum(const GridSpec& grid, double r_in, double r_out, double p);

// Centered differences with zero extension beyond the box.
Eigen::ArrayXd fd_axis_derivative(const GridSpec& grid,
                                  const Eigen::Ref<const Eigen::ArrayXd>& u, int axis);
Eigen::ArrayXd fd_axis_second(const GridSpec& grid,
                              const Eigen::Ref<const Eigen::ArrayXd>& u, int axis);
Eigen::ArrayXd fd_cross_second(const GridSpec& grid,
                               const Eigen::Ref<const Eigen::ArrayXd>& u);

}  // namespace fracvar::detail

#endif
