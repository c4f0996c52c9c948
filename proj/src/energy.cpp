// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#include "fracvar/energy.hpp"

#include <cmath>
#include <functional>
#include <utility>

#include "json.hpp"

#include "fracvar/detail/fft.hpp"
#include "fracvar/detail/reduce.hpp"
#include "fracvar/errors.hpp"
#include "fracvar/ops.hpp"

namespace fracvar {

namespace {

// f(x_i, A_i) at every node; A_i is the i-th column of the component matrix.
Eigen::ArrayXd node_values(const GridSpec& g, const Eigen::ArrayXXd& grad,
                           const IntegrandFn& fn) {
  const Eigen::Index comps = grad.rows();
  Eigen::ArrayXd out(g.node_count());
  detail::parallel_for_chunks(g.node_count(), [&](Eigen::Index b, Eigen::Index e) {
    double xy[2] = {0.0, 0.0};
    for (Eigen::Index i = b; i < e; ++i) {
      g.point(i, xy);
      Eigen::Map<const Eigen::VectorXd> A(grad.data() + i * comps, comps);
      out(i) = fn(xy, A);
    }
  });
  return out;
}

// Cell-volume weighted sum over the nodes where keep == wanted. Zeroing the
// rest first keeps the reduction tree independent of the mask.
double masked_sum(const GridSpec& g, const Eigen::ArrayXd& vals,
                  const BoolArray& keep, bool wanted) {
  Eigen::ArrayXd tmp(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    tmp(i) = keep(i) == wanted ? vals(i) : 0.0;
  }
  return g.cell_volume() * detail::pairwise_sum(tmp);
}

void check_scalar_on(const Field& u, const DomainMask& mask, const char* who) {
  require(u.grid() == mask.grid(), std::string(who) + ": grid mismatch");
  require(u.rank() == Rank::scalar, std::string(who) + ": scalar field required");
}

void check_atoms(const std::vector<Atom>& atoms, const DomainMask& mask,
                 const char* who) {
  for (const Atom& a : atoms) {
    require(a.weight.size() == mask.grid().dim(),
            std::string(who) + ": atom weight dimension mismatch");
    require(mask.point_in_closure(a.location.data()),
            std::string(who) + ": atom outside the closure of Omega");
  }
}

// Recession of `fn` at the atom's direction, scaled by its mass. The fit is
// exact whenever fn is asymptotically linear along the ray.
double atom_recession(const IntegrandFn& fn, const Atom& a, const char* who) {
  const double w = a.weight.norm();
  if (w == 0.0) return 0.0;
  Integrand probe;
  probe.eval = fn;
  const Eigen::VectorXd e = a.weight / w;
  const RecessionEstimate est =
      recession_estimate(probe, a.location.data(), e, default_t_schedule());
  require(est.limit_exists,
          std::string(who) + ": recession limit does not settle at an atom");
  return est.value * w;
}

// Same membership rule as DomainMask::point_in_closure, against an arbitrary
// node mask.
bool point_near_mask(const GridSpec& g, const BoolArray& mask, const double* pt) {
  const auto axis_range = [&g](double x, Eigen::Index* lo, Eigen::Index* hi) {
    const double t = (x + g.box_halfwidth()) / g.spacing();
    *lo = std::max<Eigen::Index>(0, static_cast<Eigen::Index>(std::ceil(t - 1.0 - 1e-9)));
    *hi = std::min<Eigen::Index>(g.points_per_axis() - 1,
                                 static_cast<Eigen::Index>(std::floor(t + 1.0 + 1e-9)));
  };
  Eigen::Index xlo, xhi, ylo = 0, yhi = 0;
  axis_range(pt[0], &xlo, &xhi);
  if (g.dim() == 2) axis_range(pt[1], &ylo, &yhi);
  for (Eigen::Index iy = ylo; iy <= yhi; ++iy) {
    for (Eigen::Index ix = xlo; ix <= xhi; ++ix) {
      if (mask(g.dim() == 1 ? ix : g.index2(ix, iy))) return true;
    }
  }
  return false;
}

}  // namespace

double measure_total_variation(const MeasureDecomp& mu) {
  const GridSpec& g = mu.density.grid();
  Eigen::ArrayXd mags =
      mu.density.values().square().colwise().sum().sqrt().transpose();
  double tv = g.cell_volume() * detail::pairwise_sum(mags);
  for (const Atom& a : mu.atoms) tv += a.weight.norm();
  return tv;
}

std::string energy_report_json(const EnergyReport& r, const GridSpec& grid,
                               const OperatorBackend& backend) {
  nlohmann::json j;
  j["bulk_omega"] = r.bulk_omega;
  j["singular_omega_bar"] = r.singular_omega_bar;
  j["exterior"] = r.exterior;
  j["total"] = r.total;
  j["alpha"] = backend.params.alpha;
  j["backend"] = backend.kind == BackendKind::spectral ? "spectral" : "quadrature";
  j["grid"] = {{"dim", grid.dim()},
               {"points_per_axis", grid.points_per_axis()},
               {"box_halfwidth", grid.box_halfwidth()},
               {"spacing", grid.spacing()}};
  return j.dump(2);
}

EnergyReport energy_plain(const Field& u, const Field& g, const DomainMask& mask,
                          const Integrand& f, const OperatorBackend& backend) {
  require(static_cast<bool>(f.eval), "energy_plain: integrand has no eval");
  check_scalar_on(u, mask, "energy_plain");
  check_scalar_on(g, mask, "energy_plain");

  const BoolArray& om = mask.omega();
  for (Eigen::Index i = 0; i < u.grid().node_count(); ++i) {
    if (om(i)) continue;
    require(std::abs(u(0, i) - g(0, i)) <= 1e-12,
            "energy_plain: u must match g outside Omega");
  }

  const Field grad = frac_gradient(u, backend);
  const Eigen::ArrayXd vals = node_values(u.grid(), grad.values(), f.eval);

  EnergyReport r;
  r.bulk_omega = masked_sum(u.grid(), vals, mask.omega_closure(), true);
  r.exterior = masked_sum(u.grid(), vals, mask.omega_closure(), false);
  r.total = r.bulk_omega + r.singular_omega_bar + r.exterior;
  return r;
}

EnergyReport energy_extended(const MeasureDecomp& mu, const DomainMask& mask,
                             const Integrand& f) {
  require(static_cast<bool>(f.eval), "energy_extended: integrand has no eval");
  require(mu.density.grid() == mask.grid(), "energy_extended: grid mismatch");
  require(mu.density.rank() == Rank::vector,
          "energy_extended: density must be a vector field");
  check_atoms(mu.atoms, mask, "energy_extended");

  const GridSpec& g = mu.density.grid();
  const Eigen::ArrayXd vals = node_values(g, mu.density.values(), f.eval);

  EnergyReport r;
  r.bulk_omega = masked_sum(g, vals, mask.omega_closure(), true);
  r.exterior = masked_sum(g, vals, mask.omega_closure(), false);
  for (const Atom& a : mu.atoms) {
    if (f.known_recession) {
      const double w = a.weight.norm();
      if (w > 0.0) {
        r.singular_omega_bar +=
            f.known_recession(a.location.data(), a.weight / w) * w;
      }
    } else {
      r.singular_omega_bar += atom_recession(f.eval, a, "energy_extended");
    }
  }
  r.total = r.bulk_omega + r.singular_omega_bar + r.exterior;
  return r;
}

EnergyReport energy_relaxed(const Field& u_density,
                            const std::vector<Atom>& atoms, const Field& g,
                            const DomainMask& mask, const Integrand& f,
                            const OperatorBackend& backend) {
  require(static_cast<bool>(f.eval), "energy_relaxed: integrand has no eval");
  check_scalar_on(u_density, mask, "energy_relaxed");
  check_scalar_on(g, mask, "energy_relaxed");
  check_atoms(atoms, mask, "energy_relaxed");

  const GridSpec& grid = u_density.grid();
  const Field grad = frac_gradient(u_density, backend);

  // The envelope of f(x, .): a closed form, f itself when convex, or the
  // sampled lower hull in dimension one.
  IntegrandFn envelope;
  Eigen::ArrayXd hull_samples;
  if (f.known_envelope) {
    envelope = f.known_envelope;
  } else if (f.is_convex_in_A) {
    envelope = f.eval;
  } else {
    require(grid.dim() == 1,
            "energy_relaxed: vectorial integrand needs known_envelope");
    // Window wide enough for the data and for any bend of f away from its
    // asymptotes; the declared constants bound where that can happen.
    double a_sup = 0.0;
    if (f.growth_a) {
      double xy[2] = {0.0, 0.0};
      for (Eigen::Index i = 0; i < grid.node_count(); ++i) {
        grid.point(i, xy);
        a_sup = std::max(a_sup, f.growth_a(xy));
      }
    }
    const double reach = 4.0 * (1.0 + grad.values().abs().maxCoeff()) +
                         4.0 * (a_sup + f.coercivity_c);
    hull_samples = Eigen::ArrayXd::LinSpaced(8193, -reach, reach);
    envelope = [&f, &hull_samples](const double* x, const GradArg& A) {
      return convex_envelope_1d(f, x, hull_samples)(A(0));
    };
  }

  // Bulk uses the envelope on Omega; everything else in the box keeps the
  // original integrand and lands in the exterior slot.
  const BoolArray& om = mask.omega();
  Eigen::ArrayXd env_vals = Eigen::ArrayXd::Zero(grid.node_count());
  Eigen::ArrayXd raw_vals = Eigen::ArrayXd::Zero(grid.node_count());
  const Eigen::Index comps = grad.values().rows();
  detail::parallel_for_chunks(grid.node_count(), [&](Eigen::Index b, Eigen::Index e) {
    double xy[2] = {0.0, 0.0};
    for (Eigen::Index i = b; i < e; ++i) {
      grid.point(i, xy);
      Eigen::Map<const Eigen::VectorXd> A(grad.values().data() + i * comps, comps);
      if (om(i)) {
        env_vals(i) = envelope(xy, A);
      } else {
        raw_vals(i) = f.eval(xy, A);
      }
    }
  });

  EnergyReport r;
  r.bulk_omega = grid.cell_volume() * detail::pairwise_sum(env_vals);
  r.exterior = grid.cell_volume() * detail::pairwise_sum(raw_vals);
  for (const Atom& a : atoms) {
    r.singular_omega_bar += atom_recession(envelope, a, "energy_relaxed");
  }
  r.total = r.bulk_omega + r.singular_omega_bar + r.exterior;
  return r;
}

double area_functional(const MeasureDecomp& mu, const DomainMask& mask,
                       Region region) {
  require(mu.density.grid() == mask.grid(), "area_functional: grid mismatch");
  require(mu.density.rank() == Rank::vector,
          "area_functional: density must be a vector field");
  const GridSpec& g = mu.density.grid();
  for (const Atom& a : mu.atoms) {
    require(a.weight.size() == g.dim(),
            "area_functional: atom weight dimension mismatch");
  }

  // Omega and its closure fill the same volume, so both use the omega nodes;
  // they differ only in which atoms count.
  const BoolArray* nodes = nullptr;
  switch (region) {
    case Region::omega:
    case Region::omega_closure:
      nodes = &mask.omega();
      break;
    case Region::omega_prime:
      nodes = &mask.omega_prime();
      break;
    case Region::box:
      break;
  }

  Eigen::ArrayXd vals(g.node_count());
  const Eigen::Index comps = mu.density.values().rows();
  detail::parallel_for_chunks(g.node_count(), [&](Eigen::Index b, Eigen::Index e) {
    for (Eigen::Index i = b; i < e; ++i) {
      if (nodes != nullptr && !(*nodes)(i)) {
        vals(i) = 0.0;
        continue;
      }
      double sq = 0.0;
      for (Eigen::Index c = 0; c < comps; ++c) {
        sq += mu.density(c, i) * mu.density(c, i);
      }
      vals(i) = std::sqrt(1.0 + sq);
    }
  });
  double area = g.cell_volume() * detail::pairwise_sum(vals);

  for (const Atom& a : mu.atoms) {
    bool in = true;
    switch (region) {
      case Region::omega:
        in = mask.point_in_open(a.location.data());
        break;
      case Region::omega_closure:
        in = mask.point_in_closure(a.location.data());
        break;
      case Region::omega_prime:
        in = point_near_mask(g, mask.omega_prime(), a.location.data());
        break;
      case Region::box:
        break;
    }
    if (in) area += a.weight.norm();
  }
  return area;
}

}  // namespace fracvar
