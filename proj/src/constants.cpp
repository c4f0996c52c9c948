// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#include "fracvar/constants.hpp"

#include <cmath>

#include "fracvar/errors.hpp"

namespace fracvar {

double gamma_fn(double x) {
  require(std::isfinite(x), "gamma_fn: non-finite argument");
  if (x <= 0.0 && x == std::floor(x)) throw Error("gamma_fn: pole at nonpositive integer");
  return std::tgamma(x);
}

namespace detail {

double nu_of_order(int dim, double order) {
  // Gamma(-order/2) has poles at order in {0, 2}; orders strictly inside
  // (0,2) are safe, including order = 1.
  require(order > 0.0 && order < 2.0, "nu_of_order: order must lie in (0,2)");
  const double n = static_cast<double>(dim);
  return std::pow(2.0, order) * std::pow(M_PI, -n / 2.0) *
         gamma_fn((n + order) / 2.0) / gamma_fn(-order / 2.0);
}

}  // namespace detail

FracConstants frac_constants(int dim, double alpha) {
  require(dim >= 1, "frac_constants: dim must be >= 1");
  require(alpha > 0.0 && alpha < 1.0, "frac_constants: alpha must lie in (0,1)");
  const double n = static_cast<double>(dim);
  FracConstants c;
  c.mu = std::pow(2.0, alpha) * std::pow(M_PI, -n / 2.0) *
         gamma_fn((n + alpha + 1.0) / 2.0) / gamma_fn((1.0 - alpha) / 2.0);
  c.gamma = std::pow(M_PI, n / 2.0) * std::pow(2.0, alpha) *
            gamma_fn(alpha / 2.0) / gamma_fn((n - alpha) / 2.0);
  c.nu = detail::nu_of_order(dim, alpha);
  return c;
}

}  // namespace fracvar
