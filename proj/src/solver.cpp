// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#include "fracvar/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "fracvar/detail/reduce.hpp"
#include "fracvar/detail/rng.hpp"
#include "fracvar/errors.hpp"
#include "fracvar/ops.hpp"

namespace fracvar {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Eigen::ArrayXd node_norms(const Eigen::ArrayXXd& v) {
  return v.square().colwise().sum().sqrt().transpose();
}

struct Steps {
  double tau;
  double sigma;
  double norm;
};

Steps resolve_steps(const SolverConfig& c, const OperatorBackend& be,
                    const GridSpec& grid) {
  Steps s;
  s.norm = c.operator_norm_estimate > 0.0
               ? c.operator_norm_estimate
               : 1.01 * estimate_operator_norm(be, grid, 30);
  s.tau = c.primal_step > 0.0 ? c.primal_step : 0.99 / s.norm;
  s.sigma = c.dual_step > 0.0 ? c.dual_step : 0.99 / s.norm;
  require(s.tau > 0.0 && s.sigma > 0.0, "solver: step sizes must be positive");
  require(s.tau * s.sigma * s.norm * s.norm <= 1.0 + 1e-12,
          "solver: primal_step * dual_step * operator_norm_estimate^2 exceeds 1");
  return s;
}

void check_solver_inputs(const Field& a, const Field& b, const DomainMask& mask,
                         const SolverConfig& config, const char* who) {
  require(a.rank() == Rank::scalar && b.rank() == Rank::scalar,
          std::string(who) + ": scalar fields required");
  require(a.grid() == b.grid() && a.grid() == mask.grid(),
          std::string(who) + ": grid mismatch");
  a.check_finite();
  b.check_finite();
  require(config.max_iters >= 1, std::string(who) + ": max_iters must be >= 1");
  require(config.tolerance >= 0.0, std::string(who) + ": tolerance must be nonnegative");
}

// Root of rho * (1 + sigma / sqrt(1 - rho^2)) = q on [0, 1): the radial part
// of prox_{sigma F*} for F*(p) = 1 - sqrt(1 - |p|^2). The left side is
// convex increasing, so Newton converges; bisection catches the rest.
double radial_dual_prox(double q, double sigma) {
  if (q <= 0.0) return 0.0;
  double rho = std::min(q / (1.0 + sigma), 1.0 - 1e-12);
  for (int it = 0; it < 60; ++it) {
    const double s = std::sqrt(1.0 - rho * rho);
    const double val = rho + sigma * rho / s - q;
    const double der = 1.0 + sigma / (s * s * s);
    const double step = val / der;
    rho = std::clamp(rho - step, 0.0, 1.0 - 1e-12);
    if (std::abs(step) <= 1e-15 * (1.0 + rho)) return rho;
  }
  double lo = 0.0;
  double hi = 1.0 - 1e-16;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double s = std::sqrt(1.0 - mid * mid);
    (mid + sigma * mid / s - q < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double estimate_operator_norm(const OperatorBackend& backend,
                              const GridSpec& grid, int iters) {
  require(iters >= 10, "estimate_operator_norm: need at least 10 iterations");

  // Extreme admissible lattice mode (the odd multipliers zero the Nyquist
  // bin), plus a fixed seeded floor so no eigenspace is missed exactly.
  const double kmax = static_cast<double>(grid.points_per_axis() / 2 - 1);
  const double freq = kmax / (2.0 * grid.box_halfwidth());
  Eigen::ArrayXd v0(grid.node_count());
  std::mt19937_64 gen(0x9e3779b97f4a7c15ull);
  double xy[2] = {0.0, 0.0};
  for (Eigen::Index i = 0; i < grid.node_count(); ++i) {
    grid.point(i, xy);
    double c = std::cos(kTwoPi * freq * xy[0]);
    if (grid.dim() == 2) c *= std::cos(kTwoPi * freq * xy[1]);
    v0(i) = c + 1e-3 * detail::uniform_sym(gen);
  }

  Field v = Field::scalar(grid, v0);
  double rayleigh = 0.0;
  for (int k = 0; k < iters; ++k) {
    const Field av = frac_divergence(frac_gradient(v, backend), backend);
    // -div grad is the PSD composition; Rayleigh quotient of the current vector
    const double vv = v.values().square().sum();
    rayleigh = -(av.values() * v.values()).sum() / vv;
    const double an = std::sqrt(av.values().square().sum());
    require(an > 0.0, "estimate_operator_norm: iteration collapsed to zero");
    v = Field(grid, Rank::scalar, -av.values() / an);
  }
  return std::sqrt(std::max(rayleigh, 0.0));
}

SolveResult solve_frac_rof(const Field& noisy, const Field& g,
                           const DomainMask& mask, double lambda,
                           const FracParams& params, const SolverConfig& config) {
  check_solver_inputs(noisy, g, mask, config, "solve_frac_rof");
  require(lambda > 0.0, "solve_frac_rof: lambda must be positive");
  const GridSpec& grid = noisy.grid();
  params.validate(grid);
  const OperatorBackend be{params.backend, params};
  const Steps st = resolve_steps(config, be, grid);

  const Eigen::Index nn = grid.node_count();
  const double hv = grid.cell_volume();
  Eigen::ArrayXd in_mask(nn);
  for (Eigen::Index i = 0; i < nn; ++i) in_mask(i) = mask.omega()(i) ? 1.0 : 0.0;
  const Eigen::ArrayXd ex_mask = 1.0 - in_mask;

  const Eigen::ArrayXd f = noisy.values().row(0).transpose();
  const Eigen::ArrayXd gv = g.values().row(0).transpose();

  // node-sum objective; the cell volume only scales the reported values
  const auto primal = [&](const Eigen::ArrayXd& uu, const Eigen::ArrayXXd& guu) {
    const Eigen::ArrayXd tv = node_norms(guu);
    const Eigen::ArrayXd fid = in_mask * (uu - f).square();
    return hv * (detail::pairwise_sum(tv) +
                 0.5 * lambda * detail::pairwise_sum(fid));
  };
  const auto dual = [&](const Eigen::ArrayXd& v) {
    const Eigen::ArrayXd ext = ex_mask * v * gv;
    const Eigen::ArrayXd fit = in_mask * v * f;
    const Eigen::ArrayXd sq = in_mask * v.square();
    return hv * (-detail::pairwise_sum(ext) - detail::pairwise_sum(fit) -
                 detail::pairwise_sum(sq) / (2.0 * lambda));
  };

  Eigen::ArrayXd u = in_mask * f + ex_mask * gv;
  Eigen::ArrayXXd p = Eigen::ArrayXXd::Zero(grid.dim(), nn);
  Eigen::ArrayXXd gu = frac_gradient(Field::scalar(grid, u), be).values();
  Eigen::ArrayXXd gu_bar = gu;  // gradient of the extrapolated iterate

  double tau = st.tau;
  double sigma = st.sigma;

  SolveResult res{Field::scalar(grid, u), {}, {}, 0};
  double best_p = primal(u, gu);
  double best_d = dual(Eigen::ArrayXd::Zero(nn));  // p = 0 is dual-feasible
  res.energy_history.push_back(best_p);
  res.gap_history.push_back((best_p - best_d) / std::max(1.0, std::abs(best_p)));

  for (int k = 1; k <= config.max_iters; ++k) {
    p += sigma * gu_bar;
    const Eigen::ArrayXd pn = node_norms(p);
    for (Eigen::Index i = 0; i < nn; ++i) {
      if (pn(i) > 1.0) p.col(i) /= pn(i);
    }

    const Eigen::ArrayXd v =
        frac_divergence(Field(grid, Rank::vector, p), be).values().row(0).transpose();
    const Eigen::ArrayXd u_new =
        in_mask * ((u + tau * v + tau * lambda * f) / (1.0 + tau * lambda)) +
        ex_mask * gv;

    // acceleration: the fidelity term is lambda-strongly convex inside Omega
    const double theta = 1.0 / std::sqrt(1.0 + 2.0 * lambda * tau);
    tau *= theta;
    sigma /= theta;

    u = u_new;
    const Eigen::ArrayXXd gu_new = frac_gradient(Field::scalar(grid, u), be).values();
    gu_bar = (1.0 + theta) * gu_new - theta * gu;
    gu = gu_new;

    const double pe = primal(u, gu);
    if (pe < best_p) {
      best_p = pe;
      res.minimizer.values().row(0) = u.transpose();
    }
    best_d = std::max(best_d, dual(v));
    const double gap = (best_p - best_d) / std::max(1.0, std::abs(best_p));
    res.energy_history.push_back(best_p);
    res.gap_history.push_back(gap);
    res.iterations_used = k;
    if (gap <= config.tolerance) break;
  }
  return res;
}

SolveResult solve_frac_area(const Field& g, const DomainMask& mask,
                            const FracParams& params, const SolverConfig& config) {
  check_solver_inputs(g, g, mask, config, "solve_frac_area");
  const GridSpec& grid = g.grid();
  params.validate(grid);
  const OperatorBackend be{params.backend, params};
  const Steps st = resolve_steps(config, be, grid);

  const Eigen::Index nn = grid.node_count();
  const double hv = grid.cell_volume();
  Eigen::ArrayXd in_mask(nn);
  for (Eigen::Index i = 0; i < nn; ++i) in_mask(i) = mask.omega()(i) ? 1.0 : 0.0;
  const Eigen::ArrayXd ex_mask = 1.0 - in_mask;
  const Eigen::ArrayXd gv = g.values().row(0).transpose();

  const auto energy = [&](const Eigen::ArrayXXd& guu) {
    const Eigen::ArrayXd a =
        ((1.0 + guu.square().colwise().sum()).sqrt() - 1.0).transpose();
    return hv * detail::pairwise_sum(a);
  };

  // first-order residual: div of the scaled gradient must vanish inside
  const auto stationarity = [&](const Eigen::ArrayXXd& guu) {
    Eigen::ArrayXXd q = guu;
    const Eigen::ArrayXd scale = (1.0 + guu.square().colwise().sum()).sqrt().transpose();
    for (Eigen::Index i = 0; i < nn; ++i) q.col(i) /= scale(i);
    const Eigen::ArrayXd r =
        frac_divergence(Field(grid, Rank::vector, q), be).values().row(0).transpose();
    const double rin = std::sqrt((in_mask * r.square()).sum());
    const double qn = std::sqrt(q.square().sum());
    return qn > 0.0 ? rin / (st.norm * qn) : rin;
  };

  Eigen::ArrayXd u = gv;
  Eigen::ArrayXXd p = Eigen::ArrayXXd::Zero(grid.dim(), nn);
  Eigen::ArrayXXd gu = frac_gradient(Field::scalar(grid, u), be).values();
  Eigen::ArrayXXd gu_bar = gu;

  SolveResult res{Field::scalar(grid, u), {}, {}, 0};
  double best_e = energy(gu);
  double best_stat = stationarity(gu);
  res.energy_history.push_back(best_e);
  res.gap_history.push_back(best_stat);

  for (int k = 1; k <= config.max_iters; ++k) {
    p += st.sigma * gu_bar;
    const Eigen::ArrayXd pn = node_norms(p);
    for (Eigen::Index i = 0; i < nn; ++i) {
      const double rho = radial_dual_prox(pn(i), st.sigma);
      if (pn(i) > 0.0) p.col(i) *= rho / pn(i);
    }

    const Eigen::ArrayXd v =
        frac_divergence(Field(grid, Rank::vector, p), be).values().row(0).transpose();
    const Eigen::ArrayXd u_new = in_mask * (u + st.tau * v) + ex_mask * gv;

    u = u_new;
    const Eigen::ArrayXXd gu_new = frac_gradient(Field::scalar(grid, u), be).values();
    gu_bar = 2.0 * gu_new - gu;  // theta = 1: no strong convexity without fidelity
    gu = gu_new;

    const double e = energy(gu);
    if (e < best_e) {
      best_e = e;
      best_stat = stationarity(gu);
      res.minimizer.values().row(0) = u.transpose();
    }
    res.energy_history.push_back(best_e);
    res.gap_history.push_back(best_stat);
    res.iterations_used = k;
    if (best_stat <= config.tolerance) break;
  }
  return res;
}

}  // namespace fracvar
