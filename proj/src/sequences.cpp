// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#include "fracvar/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <random>
#include <utility>

#include "json.hpp"

#include "fracvar/bump.hpp"
#include "fracvar/detail/fft.hpp"
#include "fracvar/detail/reduce.hpp"
#include "fracvar/detail/rng.hpp"
#include "fracvar/errors.hpp"
#include "fracvar/integrand.hpp"
#include "fracvar/ops.hpp"

namespace fracvar {
namespace {

// Chebyshev step count from each node to the nearest source node; sources
// carry zero. Multi-source breadth-first search over the 3^dim - 1 neighbor
// stencil, non-periodic (the box edge blocks, it does not wrap: distances
// feed support margins, and wrapping would undersell them).
Eigen::ArrayXd linf_steps_from(const GridSpec& grid, const BoolArray& sources) {
  const Eigen::Index n = grid.node_count();
  require(sources.size() == n, "distance transform: source mask size mismatch");
  require(sources.any(), "distance transform: no source nodes");
  Eigen::ArrayXd steps = Eigen::ArrayXd::Constant(n, -1.0);
  std::queue<Eigen::Index> frontier;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (sources[i]) {
      steps[i] = 0.0;
      frontier.push(i);
    }
  }
  const Eigen::Index per_axis = grid.points_per_axis();
  while (!frontier.empty()) {
    const Eigen::Index i = frontier.front();
    frontier.pop();
    const double next = steps[i] + 1.0;
    if (grid.dim() == 1) {
      for (Eigen::Index j : {i - 1, i + 1}) {
        if (j < 0 || j >= n || steps[j] >= 0.0) continue;
        steps[j] = next;
        frontier.push(j);
      }
    } else {
      const Eigen::Index ix = i % per_axis;
      const Eigen::Index iy = i / per_axis;
      for (Eigen::Index dy = -1; dy <= 1; ++dy) {
        for (Eigen::Index dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const Eigen::Index jx = ix + dx;
          const Eigen::Index jy = iy + dy;
          if (jx < 0 || jx >= per_axis || jy < 0 || jy >= per_axis) continue;
          const Eigen::Index j = grid.index2(jx, jy);
          if (steps[j] >= 0.0) continue;
          steps[j] = next;
          frontier.push(j);
        }
      }
    }
  }
  return steps;
}

BoolArray not_mask(const BoolArray& m) {
  BoolArray out(m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i) out[i] = !m[i];
  return out;
}

// Quintic smoothstep window: exactly zero on the complement of Omega,
// exactly one past a quarter of the inradius, C^2 in between.
Eigen::ArrayXd smooth_cutoff(const DomainMask& mask) {
  const GridSpec& grid = mask.grid();
  const Eigen::ArrayXd d = linf_steps_from(grid, not_mask(mask.omega())) * grid.spacing();
  const double ramp = 0.25 * d.maxCoeff();
  require(ramp > 0.0, "cutoff: Omega has no interior nodes");
  Eigen::ArrayXd chi(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d[i] <= 0.0) {
      chi[i] = 0.0;
    } else if (d[i] >= ramp) {
      chi[i] = 1.0;
    } else {
      const double t = d[i] / ramp;
      chi[i] = t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
    }
  }
  return chi;
}

double node_norm(const Eigen::ArrayXXd& vals, Eigen::Index col) {
  return std::sqrt(vals.col(col).square().sum());
}

// L1 norm of the per-node difference of two vector fields over the marked
// nodes, scaled by the cell volume.
double masked_grad_l1(const Field& a, const Field& b, const BoolArray& marked) {
  const Eigen::Index n = a.grid().node_count();
  Eigen::ArrayXd terms = Eigen::ArrayXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!marked[i]) continue;
    terms[i] = std::sqrt((a.values().col(i) - b.values().col(i)).square().sum());
  }
  return a.grid().cell_volume() * detail::pairwise_sum(terms);
}

double field_l1(const Eigen::ArrayXd& v, double cell_volume) {
  const Eigen::ArrayXd a = v.abs();
  return cell_volume * detail::pairwise_sum(a);
}

void check_scalar_pair(const Field& f, const DomainMask& mask, const char* who) {
  require(f.rank() == Rank::scalar, std::string(who) + ": field must be scalar");
  require(f.grid() == mask.grid(), std::string(who) + ": grid mismatch");
  f.check_finite();
}

}  // namespace

std::string diagnostics_csv(const SequenceDiagnostics& d) {
  const std::size_t n = d.l1_distance_to_limit.size();
  require(d.energy_values.size() == n && d.exterior_gradient_l1_error.size() == n &&
              d.area_functional_values.size() == n,
          "diagnostics_csv: column length mismatch");
  std::string out =
      "index,l1_distance_to_limit,energy,exterior_gradient_l1_error,area_functional\n";
  char row[256];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(row, sizeof(row), "%zu,%.17g,%.17g,%.17g,%.17g\n", i,
                  d.l1_distance_to_limit[i], d.energy_values[i],
                  d.exterior_gradient_l1_error[i], d.area_functional_values[i]);
    out += row;
  }
  return out;
}

std::string diagnostics_json(const SequenceDiagnostics& d) {
  const std::size_t n = d.l1_distance_to_limit.size();
  require(d.energy_values.size() == n && d.exterior_gradient_l1_error.size() == n &&
              d.area_functional_values.size() == n,
          "diagnostics_json: column length mismatch");
  nlohmann::json j;
  j["count"] = n;
  j["l1_distance_to_limit"] = d.l1_distance_to_limit;
  j["energy"] = d.energy_values;
  j["exterior_gradient_l1_error"] = d.exterior_gradient_l1_error;
  j["area_functional"] = d.area_functional_values;
  return j.dump(2);
}

std::vector<Field> laminate_sequence(const Field& amplitude,
                                     const std::array<double, 2>& direction,
                                     const std::vector<int>& frequencies,
                                     const DomainMask& mask, double alpha) {
  check_scalar_pair(amplitude, mask, "laminate_sequence");
  require(alpha > 0.0 && alpha < 1.0, "laminate_sequence: alpha must lie in (0, 1)");
  const GridSpec& grid = mask.grid();
  const Eigen::Index n = grid.node_count();
  const double h = grid.spacing();

  double norm2 = direction[0] * direction[0];
  if (grid.dim() == 2) norm2 += direction[1] * direction[1];
  require(std::abs(norm2 - 1.0) <= 1e-12, "laminate_sequence: direction must be a unit vector");
  if (grid.dim() == 1) {
    require(std::abs(direction[1]) <= 1e-12,
            "laminate_sequence: dimension-one direction has one component");
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    if (!mask.omega()[i]) {
      require(amplitude.values()(0, i) == 0.0,
              "laminate_sequence: amplitude must vanish outside Omega");
    }
  }

  require(!frequencies.empty(), "laminate_sequence: empty frequency list");
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    require(frequencies[i] >= 1, "laminate_sequence: frequencies must be positive");
    if (i > 0) {
      require(frequencies[i] > frequencies[i - 1],
              "laminate_sequence: frequencies must be strictly increasing");
    }
    require(4.0 * frequencies[i] * h <= 1.0,
            "laminate_sequence: frequency needs at least four nodes per period");
  }

  const Eigen::ArrayXd chi = smooth_cutoff(mask);
  const double s = 0.5 * (1.0 - alpha);
  const OperatorBackend backend = OperatorBackend::spectral(alpha);

  std::vector<Field> out;
  out.reserve(frequencies.size());
  double xy[2] = {0.0, 0.0};
  for (int k : frequencies) {
    Eigen::ArrayXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      grid.point(i, xy);
      const double tau = grid.dim() == 1 ? xy[0] * direction[0]
                                         : xy[0] * direction[0] + xy[1] * direction[1];
      const double phase = tau * static_cast<double>(k);
      const double frac = phase - std::floor(phase);
      v[i] = amplitude.values()(0, i) * std::min(frac, 1.0 - frac) / static_cast<double>(k);
    }
    const Field lifted = frac_laplacian(Field::scalar(grid, std::move(v)), s, backend);
    out.push_back(Field::scalar(grid, chi * lifted.values().row(0).transpose()));
  }
  return out;
}

std::vector<double> strong_outside_probe(const std::vector<Field>& sequence,
                                         const Field& limit,
                                         const DomainMask& mask, double alpha) {
  check_scalar_pair(limit, mask, "strong_outside_probe");
  require(alpha > 0.0 && alpha < 1.0, "strong_outside_probe: alpha must lie in (0, 1)");
  const GridSpec& grid = mask.grid();
  const Eigen::Index n = grid.node_count();

  double scale = std::max(1.0, limit.values().abs().maxCoeff());
  for (const Field& w : sequence) {
    check_scalar_pair(w, mask, "strong_outside_probe");
    scale = std::max(scale, w.values().abs().maxCoeff());
  }
  for (const Field& w : sequence) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!mask.omega()[i]) {
        require(std::abs(w.values()(0, i) - limit.values()(0, i)) <= 1e-12 * scale,
                "strong_outside_probe: member breaks the complementary-value condition");
      }
    }
  }

  // Conservative form: the band-limited gradient of a near-jump difference
  // rings at amplitude 1/distance no matter how small its support, which
  // would put a floor under this probe. The potential-then-difference form
  // localizes jump responses and lets the exterior error actually vanish.
  const OperatorBackend backend = OperatorBackend::spectral(alpha);
  const Field glim = conservative_frac_gradient(limit, backend);
  const BoolArray far = not_mask(mask.omega_prime());
  std::vector<double> out;
  out.reserve(sequence.size());
  for (const Field& w : sequence) {
    out.push_back(masked_grad_l1(conservative_frac_gradient(w, backend), glim, far));
  }
  return out;
}

GapReport relaxation_gap_demo(const Field& b_profile, double alpha,
                              const DomainMask& mask,
                              const std::vector<int>& frequencies) {
  check_scalar_pair(b_profile, mask, "relaxation_gap_demo");
  const GridSpec& grid = mask.grid();
  require((b_profile.values() >= 0.0).all(), "relaxation_gap_demo: b must be nonnegative");

  const std::array<double, 2> direction = {1.0, 0.0};
  std::vector<Field> sequence =
      laminate_sequence(b_profile, direction, frequencies, mask, alpha);

  // Obstacle lookup for the well integrand: the energy evaluators only ask
  // at node coordinates, where rounding back to the index is exact.
  const Eigen::ArrayXd b_vals = b_profile.values().row(0).transpose();
  const double box = grid.box_halfwidth();
  const double h = grid.spacing();
  const Eigen::Index per_axis = grid.points_per_axis();
  const int dim = grid.dim();
  auto lookup = [b_vals, box, h, per_axis, dim](const double* x) {
    const auto clamp_index = [per_axis](double t) {
      const Eigen::Index i = static_cast<Eigen::Index>(std::llround(t));
      return std::min(std::max(i, Eigen::Index{0}), per_axis - 1);
    };
    const Eigen::Index ix = clamp_index((x[0] + box) / h);
    if (dim == 1) return b_vals[ix];
    return b_vals[clamp_index((x[1] + box) / h) * per_axis + ix];
  };
  const Integrand f = well_integrand(lookup, b_vals.maxCoeff());

  const OperatorBackend backend = OperatorBackend::spectral(alpha);
  const Field zero = Field::zeros(grid, Rank::scalar);

  GapReport report;
  report.diagnostics.exterior_gradient_l1_error =
      strong_outside_probe(sequence, zero, mask, alpha);
  for (const Field& w : sequence) {
    report.diagnostics.l1_distance_to_limit.push_back(
        field_l1(w.values().row(0).transpose(), grid.cell_volume()));
    report.diagnostics.energy_values.push_back(
        energy_plain(w, zero, mask, f, backend).total);
    report.diagnostics.area_functional_values.push_back(area_functional(
        MeasureDecomp{frac_gradient(w, backend), {}}, mask, Region::omega_closure));
  }

  report.energy_at_limit = energy_plain(zero, zero, mask, f, backend).total;
  report.relaxed_at_limit = energy_relaxed(zero, {}, zero, mask, f, backend).total;
  report.min_sequence_energy = *std::min_element(report.diagnostics.energy_values.begin(),
                                                 report.diagnostics.energy_values.end());
  report.gap = report.energy_at_limit - report.min_sequence_energy;
  return report;
}

SequenceDiagnostics area_strict_approx(const Field& u_target,
                                       const MeasureDecomp& mu, const Field& g,
                                       const DomainMask& mask, double alpha,
                                       const std::vector<double>& deltas) {
  check_scalar_pair(u_target, mask, "area_strict_approx");
  check_scalar_pair(g, mask, "area_strict_approx");
  require(alpha > 0.0 && alpha < 1.0, "area_strict_approx: alpha must lie in (0, 1)");
  require(mu.density.grid() == mask.grid() && mu.density.rank() == Rank::vector,
          "area_strict_approx: mu.density must be a vector field on the same grid");
  require(!deltas.empty(), "area_strict_approx: empty delta list");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    require(deltas[i] > 0.0, "area_strict_approx: deltas must be positive");
    if (i > 0) {
      require(deltas[i] < deltas[i - 1], "area_strict_approx: deltas must be strictly decreasing");
    }
  }

  const GridSpec& grid = mask.grid();
  const Eigen::Index n = grid.node_count();
  const Eigen::Index per_axis = grid.points_per_axis();
  const double h = grid.spacing();
  const double hv = grid.cell_volume();

  const Eigen::ArrayXd target = u_target.values().row(0).transpose();
  const Eigen::ArrayXd g_vals = g.values().row(0).transpose();
  const Eigen::ArrayXd diff = target - g_vals;

  BoolArray supp(n);
  for (Eigen::Index i = 0; i < n; ++i) supp[i] = diff[i] != 0.0;
  Eigen::ArrayXd spread_steps;
  if (supp.any()) {
    const Eigen::ArrayXd to_exterior = linf_steps_from(grid, not_mask(mask.omega()));
    double margin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (supp[i]) margin = std::min(margin, to_exterior[i] * h);
    }
    require(deltas.front() + 2.0 * h <= margin,
            "area_strict_approx: largest delta exceeds the support margin inside Omega");
    spread_steps = linf_steps_from(grid, supp);
  }

  const OperatorBackend backend = OperatorBackend::spectral(alpha);
  // Exterior comparison in conservative form, for the same reason as in
  // strong_outside_probe: the target carries atoms, and the band-limited
  // gradient of (mollified atom - atom) has a delta-independent tail.
  const Field cons_target = conservative_frac_gradient(u_target, backend);
  const Integrand f_area = area_integrand();
  const BoolArray far = not_mask(mask.omega_prime());

  SequenceDiagnostics diag;
  for (double delta : deltas) {
    Eigen::ArrayXd mollified = Eigen::ArrayXd::Zero(n);
    if (supp.any()) {
      // Circular offsets keep the kernel grid-aligned; the normalization
      // makes the discrete mass one exactly, so constants mollify to
      // themselves up to roundoff.
      if (grid.dim() == 1) {
        Eigen::ArrayXd kernel(n);
        for (Eigen::Index j = 0; j < n; ++j) {
          const double r = static_cast<double>(std::min(j, n - j)) * h / delta;
          kernel[j] = r < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0;
        }
        kernel /= hv * detail::pairwise_sum(kernel);
        const Eigen::VectorXcd conv =
            detail::dft_1d(kernel).cwiseProduct(detail::dft_1d(diff));
        mollified = detail::idft_1d_real(conv) * hv;
      } else {
        Eigen::ArrayXd kernel(n);
        for (Eigen::Index j = 0; j < n; ++j) {
          const double dx = static_cast<double>(std::min(j % per_axis, per_axis - j % per_axis)) * h;
          const double dy = static_cast<double>(std::min(j / per_axis, per_axis - j / per_axis)) * h;
          const double r2 = (dx * dx + dy * dy) / (delta * delta);
          kernel[j] = r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
        }
        kernel /= hv * detail::pairwise_sum(kernel);
        Eigen::MatrixXcd spec = detail::dft_2d_from_real(kernel, per_axis);
        spec.array() *= detail::dft_2d_from_real(diff, per_axis).array();
        mollified = detail::idft_2d_to_real(std::move(spec)) * hv;
      }
      // The kernel support is delta, so past it the exact value is zero;
      // dropping the transform roundoff there keeps u = g bitwise outside
      // the spread band.
      for (Eigen::Index i = 0; i < n; ++i) {
        if (spread_steps[i] * h > delta + 0.5 * h) mollified[i] = 0.0;
      }
    }

    const Field u_delta = Field::scalar(grid, g_vals + mollified);
    const Field grad = frac_gradient(u_delta, backend);
    diag.l1_distance_to_limit.push_back(field_l1(g_vals + mollified - target, hv));
    diag.energy_values.push_back(energy_plain(u_delta, g, mask, f_area, backend).total);
    diag.exterior_gradient_l1_error.push_back(
        masked_grad_l1(conservative_frac_gradient(u_delta, backend), cons_target, far));
    diag.area_functional_values.push_back(
        area_functional(MeasureDecomp{grad, {}}, mask, Region::omega_closure));
  }
  return diag;
}

PoincareReport poincare_probe(const DomainMask& mask, double alpha, int trials,
                              std::uint64_t seed) {
  require(trials >= 10, "poincare_probe: need at least ten trials");
  require(alpha > 0.0 && alpha < 1.0, "poincare_probe: alpha must lie in (0, 1)");
  const GridSpec& grid = mask.grid();
  const Eigen::Index n = grid.node_count();
  const double h = grid.spacing();
  const double hv = grid.cell_volume();

  const Eigen::ArrayXd depth = linf_steps_from(grid, not_mask(mask.omega())) * h;
  Eigen::Index ref = 0;
  const double dmax = depth.maxCoeff(&ref);
  require(dmax > 8.0 * h, "poincare_probe: Omega is too thin for bump draws");
  double ref_xy[2] = {0.0, 0.0};
  grid.point(ref, ref_xy);

  const OperatorBackend backend = OperatorBackend::spectral(alpha);
  std::mt19937_64 gen(seed);

  PoincareReport report;
  report.ratios.reserve(static_cast<std::size_t>(trials));
  int attempts = 0;
  while (report.ratios.size() < static_cast<std::size_t>(trials)) {
    require(++attempts <= 100 * trials, "poincare_probe: degenerate draws keep repeating");
    const int bumps = 3 + static_cast<int>(detail::uniform_unit(gen) * 4.0);
    Eigen::ArrayXd u = Eigen::ArrayXd::Zero(n);
    for (int b = 0; b < bumps; ++b) {
      const double radius = (0.15 + 0.15 * detail::uniform_unit(gen)) * dmax;
      const double rho = dmax - radius - 2.0 * h;
      std::array<double, 2> center = {ref_xy[0] + rho * detail::uniform_sym(gen), 0.0};
      if (grid.dim() == 2) center[1] = ref_xy[1] + rho * detail::uniform_sym(gen);
      const double weight = detail::uniform_sym(gen);
      u += weight * make_bump(grid, center, radius).values().row(0).transpose().array();
    }
    const Field field = Field::scalar(grid, u);
    const Field gu = frac_gradient(field, backend);

    Eigen::ArrayXd grad_norms(n);
    for (Eigen::Index i = 0; i < n; ++i) grad_norms[i] = node_norm(gu.values(), i);
    double inner = 0.0;
    {
      Eigen::ArrayXd terms = Eigen::ArrayXd::Zero(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (mask.omega_prime()[i]) terms[i] = grad_norms[i];
      }
      inner = hv * detail::pairwise_sum(terms);
    }
    if (inner <= 1e-14) {
      ++report.resampled;
      continue;
    }
    const double numer = field_l1(u, hv) + hv * detail::pairwise_sum(grad_norms);
    report.ratios.push_back(numer / inner);
  }
  report.c_hat = *std::max_element(report.ratios.begin(), report.ratios.end());
  return report;
}

}  // namespace fracvar
