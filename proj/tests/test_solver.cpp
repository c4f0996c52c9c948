// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#include "fracvar/solver.hpp"

#include <cmath>

#include "doctest.h"
#include "fracvar/errors.hpp"
#include "fracvar/ops.hpp"

using namespace fracvar;

namespace {

constexpr double kPi = 3.14159265358979323846;

double bump_profile(double x, double r) {
  const double q = (x / r) * (x / r);
  if (q >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - q));
}

Field bump_field(const GridSpec& grid, double radius, double height) {
  Eigen::ArrayXd v(grid.node_count());
  double xy[2] = {0.0, 0.0};
  for (Eigen::Index i = 0; i < grid.node_count(); ++i) {
    grid.point(i, xy);
    double b = bump_profile(xy[0], radius);
    if (grid.dim() == 2) b *= bump_profile(xy[1], radius);
    v(i) = height * b;
  }
  return Field::scalar(grid, v);
}

FracParams spectral_params(double alpha) {
  FracParams p;
  p.alpha = alpha;
  p.backend = BackendKind::spectral;
  return p;
}

// Largest surviving lattice frequency of the gradient symbol; the odd
// multipliers zero the Nyquist bin on every axis.
double expected_norm(const GridSpec& grid, double alpha) {
  const double kmax = static_cast<double>(grid.points_per_axis() / 2 - 1);
  const double xi = std::sqrt(static_cast<double>(grid.dim())) * kmax /
                    (2.0 * grid.box_halfwidth());
  return std::pow(2.0 * kPi * xi, alpha);
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("operator norm estimate matches the spectral symbol") {
  const GridSpec g1(1, 256, 1.0);
  for (double alpha : {0.3, 0.9}) {
    const OperatorBackend be = OperatorBackend::spectral(alpha);
    const double est = estimate_operator_norm(be, g1, 30);
    const double want = expected_norm(g1, alpha);
    CHECK_LT(std::abs(est - want) / want, 1e-2);
  }
  const GridSpec g2(2, 32, 1.0);
  const OperatorBackend be2 = OperatorBackend::spectral(0.6);
  const double est2 = estimate_operator_norm(be2, g2, 30);
  const double want2 = expected_norm(g2, 0.6);
  CHECK_LT(std::abs(est2 - want2) / want2, 1e-2);
}

TEST_CASE("operator norm grows with the order") {
  const GridSpec g(1, 256, 1.0);
  const OperatorBackend lo = OperatorBackend::spectral(0.1);
  const OperatorBackend hi = OperatorBackend::spectral(0.9);
  CHECK_LT(estimate_operator_norm(lo, g, 15), estimate_operator_norm(hi, g, 15));
}

TEST_CASE("operator norm estimate rejects too few iterations") {
  const GridSpec g(1, 64, 1.0);
  const OperatorBackend be = OperatorBackend::spectral(0.5);
  CHECK_THROWS_AS(estimate_operator_norm(be, g, 5), Error);
}

TEST_CASE("denoiser on zero data returns zero immediately") {
  const GridSpec g(1, 128, 1.0);
  const DomainMask mask = DomainMask::centered_boxes(g, 0.5, 0.8);
  const Field zero = Field::zeros(g, Rank::scalar);
  SolverConfig cfg;
  cfg.max_iters = 100;
  cfg.tolerance = 1e-10;
  const SolveResult res =
      solve_frac_rof(zero, zero, mask, 2.0, spectral_params(0.5), cfg);
  CHECK_EQ(res.iterations_used, 1);
  CHECK_EQ(res.minimizer.values().abs().maxCoeff(), 0.0);
  CHECK_LE(res.gap_history.back(), 1e-10);
}

TEST_CASE("denoiser with huge fidelity weight reproduces the data") {
  const GridSpec g(1, 256, 2.0);
  const DomainMask mask = DomainMask::centered_boxes(g, 1.0, 1.5);
  const Field noisy = bump_field(g, 0.8, 1.0);
  const Field zero = Field::zeros(g, Rank::scalar);
  SolverConfig cfg;
  cfg.max_iters = 2000;
  cfg.tolerance = 1e-9;
  const SolveResult res =
      solve_frac_rof(noisy, zero, mask, 1e8, spectral_params(0.5), cfg);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < g.node_count(); ++i) {
    if (!mask.omega()(i)) continue;
    worst = std::max(worst, std::abs(res.minimizer(0, i) - noisy(0, i)));
  }
  CHECK_LT(worst, 1e-3);
}

TEST_CASE("denoiser bookkeeping: monotone energy, exact exterior, valid gaps") {
  const GridSpec g(1, 256, 2.0);
  const DomainMask mask = DomainMask::centered_boxes(g, 1.0, 1.5);
  const Field noisy = bump_field(g, 1.2, 1.0);
  const Field datum = bump_field(g, 1.6, 0.25);
  SolverConfig cfg;
  cfg.max_iters = 300;
  cfg.tolerance = 0.0;
  const SolveResult res =
      solve_frac_rof(noisy, datum, mask, 5.0, spectral_params(0.6), cfg);
  CHECK_EQ(res.iterations_used, 300);
  CHECK_EQ(static_cast<int>(res.energy_history.size()), 301);
  CHECK_EQ(res.energy_history.size(), res.gap_history.size());
  for (std::size_t k = 1; k < res.energy_history.size(); ++k) {
    CHECK_LE(res.energy_history[k], res.energy_history[k - 1]);
  }
  for (double gap : res.gap_history) {
    CHECK(std::isfinite(gap));
    CHECK_GE(gap, -1e-12);
  }
  for (Eigen::Index i = 0; i < g.node_count(); ++i) {
    if (mask.omega()(i)) continue;
    CHECK_EQ(res.minimizer(0, i), datum(0, i));
  }
}

TEST_CASE("denoiser closes the duality gap and repeats bitwise") {
  const GridSpec g(1, 256, 2.0);
  const DomainMask mask = DomainMask::centered_boxes(g, 1.0, 1.5);
  const Field noisy = bump_field(g, 1.2, 1.0);
  const Field zero = Field::zeros(g, Rank::scalar);
  SolverConfig cfg;
  cfg.max_iters = 5000;
  cfg.tolerance = 1e-6;
  const SolveResult a =
      solve_frac_rof(noisy, zero, mask, 4.0, spectral_params(0.5), cfg);
  CHECK_LE(a.gap_history.back(), 1e-6);
  CHECK_LT(a.iterations_used, 5000);

  const SolveResult b =
      solve_frac_rof(noisy, zero, mask, 4.0, spectral_params(0.5), cfg);
  CHECK_EQ(a.iterations_used, b.iterations_used);
  CHECK((a.minimizer.values() == b.minimizer.values()).all());
  CHECK_EQ(a.energy_history.back(), b.energy_history.back());
}

TEST_CASE("denoiser validates its inputs") {
  const GridSpec g(1, 64, 1.0);
  const DomainMask mask = DomainMask::centered_boxes(g, 0.5, 0.8);
  const Field zero = Field::zeros(g, Rank::scalar);
  SolverConfig cfg;

  CHECK_THROWS_AS(
      solve_frac_rof(zero, zero, mask, 0.0, spectral_params(0.5), cfg), Error);
  CHECK_THROWS_AS(
      solve_frac_rof(zero, zero, mask, -1.0, spectral_params(0.5), cfg), Error);

  SolverConfig bad_steps;
  bad_steps.primal_step = 1.0;
  bad_steps.dual_step = 1.0;
  bad_steps.operator_norm_estimate = 10.0;
  CHECK_THROWS_AS(
      solve_frac_rof(zero, zero, mask, 1.0, spectral_params(0.5), bad_steps),
      Error);

  SolverConfig bad_iters;
  bad_iters.max_iters = 0;
  CHECK_THROWS_AS(
      solve_frac_rof(zero, zero, mask, 1.0, spectral_params(0.5), bad_iters),
      Error);

  SolverConfig bad_tol;
  bad_tol.tolerance = -1.0;
  CHECK_THROWS_AS(
      solve_frac_rof(zero, zero, mask, 1.0, spectral_params(0.5), bad_tol),
      Error);

  const GridSpec other(1, 128, 1.0);
  const Field wrong = Field::zeros(other, Rank::scalar);
  CHECK_THROWS_AS(
      solve_frac_rof(zero, wrong, mask, 1.0, spectral_params(0.5), cfg), Error);

  Field nanish = Field::zeros(g, Rank::scalar);
  nanish.values()(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(
      solve_frac_rof(nanish, zero, mask, 1.0, spectral_params(0.5), cfg), Error);
}

TEST_CASE("area solver on zero datum stays at zero") {
  const GridSpec g(1, 128, 1.0);
  const DomainMask mask = DomainMask::centered_boxes(g, 0.5, 0.8);
  const Field zero = Field::zeros(g, Rank::scalar);
  SolverConfig cfg;
  cfg.max_iters = 50;
  cfg.tolerance = 1e-12;
  const SolveResult res = solve_frac_area(zero, mask, spectral_params(0.5), cfg);
  CHECK_EQ(res.iterations_used, 1);
  CHECK_EQ(res.minimizer.values().abs().maxCoeff(), 0.0);
  CHECK_EQ(res.energy_history.back(), 0.0);
}

TEST_CASE("area solver beats the naive extension and certifies stationarity") {
  const GridSpec g(1, 512, 2.0);
  const DomainMask mask = DomainMask::centered_boxes(g, 1.0, 1.5);
  const Field datum = bump_field(g, 1.5, 2.0);
  SolverConfig cfg;
  cfg.max_iters = 20000;
  cfg.tolerance = 1e-5;
  const SolveResult res = solve_frac_area(datum, mask, spectral_params(0.5), cfg);

  // u = g is the starting competitor, so the first history entry is its energy
  CHECK_LT(res.energy_history.back(), res.energy_history.front());
  CHECK_LE(res.gap_history.back(), 1e-5);
  for (std::size_t k = 1; k < res.energy_history.size(); ++k) {
    CHECK_LE(res.energy_history[k], res.energy_history[k - 1]);
  }
  for (Eigen::Index i = 0; i < g.node_count(); ++i) {
    if (mask.omega()(i)) continue;
    CHECK_EQ(res.minimizer(0, i), datum(0, i));
  }
}

TEST_CASE("area solver energy is stable under refinement") {
  SolverConfig cfg;
  cfg.max_iters = 20000;
  cfg.tolerance = 1e-5;
  double coarse = 0.0;
  double fine = 0.0;
  for (int pass = 0; pass < 2; ++pass) {
    const GridSpec g(1, pass == 0 ? 256 : 512, 2.0);
    const DomainMask mask = DomainMask::centered_boxes(g, 1.0, 1.5);
    const Field datum = bump_field(g, 1.5, 2.0);
    const SolveResult res =
        solve_frac_area(datum, mask, spectral_params(0.5), cfg);
    (pass == 0 ? coarse : fine) = res.energy_history.back();
  }
  CHECK_LT(std::abs(fine - coarse) / fine, 2e-2);
}

}  // TEST_SUITE
