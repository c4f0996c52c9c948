// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "doctest.h"
#include "fracvar/bump.hpp"
#include "fracvar/energy.hpp"
#include "fracvar/errors.hpp"
#include "fracvar/integrand.hpp"
#include "fracvar/lift.hpp"
#include "fracvar/ops.hpp"
#include "fracvar/sequences.hpp"
#include "json.hpp"
#include "reference_values.hpp"

using namespace fracvar;

namespace {

// Indicator of [-1,1] sampled so the jumps land on cell midpoints: the grid
// must place +-1 exactly between two nodes.
Field indicator_field(const GridSpec& grid) {
  Eigen::ArrayXd v(grid.node_count());
  for (Eigen::Index i = 0; i < grid.node_count(); ++i) {
    v[i] = std::abs(grid.coord(i)) < 1.0 ? 1.0 : 0.0;
  }
  return Field::scalar(grid, std::move(v));
}

Field tent_field(const GridSpec& grid) {
  Eigen::ArrayXd v(grid.node_count());
  for (Eigen::Index i = 0; i < grid.node_count(); ++i) {
    v[i] = std::max(0.0, 1.0 - std::abs(grid.coord(i)));
  }
  return Field::scalar(grid, std::move(v));
}

Eigen::Index node_at(const GridSpec& grid, double x) {
  const Eigen::Index i = static_cast<Eigen::Index>(
      std::llround((x + grid.box_halfwidth()) / grid.spacing()));
  REQUIRE(std::abs(grid.coord(i) - x) < 1e-9);
  return i;
}

double field_l1(const Field& f) {
  return f.grid().cell_volume() * f.values().abs().sum();
}

// Quintic ramp: 0 for t <= 0, 1 for t >= 1.
double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

}  // namespace

TEST_SUITE("relaxlab") {

TEST_CASE("piecewise lift of the indicator matches the singular-integral values") {
  // h = 2/1025 puts the jumps of the indicator exactly between nodes and
  // keeps 0 and 2 on the grid.
  const GridSpec grid(1, 4100, 4.0);
  const Field v = indicator_field(grid);
  const LiftResult res = bv_lift(v, 0.5, OperatorBackend::spectral(0.5));

  CHECK(res.u.values()(0, node_at(grid, 0.0)) ==
        doctest::Approx(reference::kLiftInd_s025_x00).epsilon(1e-11));
  CHECK(res.u.values()(0, node_at(grid, 2.0)) ==
        doctest::Approx(reference::kLiftInd_s025_x20).epsilon(1e-11));
  CHECK(res.u.values()(0, node_at(grid, -2.0)) ==
        doctest::Approx(reference::kLiftInd_s025_x20).epsilon(1e-11));

  REQUIRE(res.mu.atoms.size() == 2);
  CHECK(res.mu.atoms[0].location[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(res.mu.atoms[1].location[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.mu.atoms[0].weight(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.mu.atoms[1].weight(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(res.mu.density.values().abs().maxCoeff() <= 1e-12);
  CHECK(measure_total_variation(res.mu) == doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("piecewise lift of the tent matches the singular-integral values") {
  const GridSpec grid(1, 2048, 4.0);  // h = 1/256: kinks at -1, 0, 1 are nodes
  const Field v = tent_field(grid);
  const LiftResult res = bv_lift(v, 0.5, OperatorBackend::spectral(0.5));

  CHECK(res.u.values()(0, node_at(grid, 0.0)) ==
        doctest::Approx(reference::kLiftTent_s025_x00).epsilon(1e-11));
  CHECK(res.u.values()(0, node_at(grid, 0.5)) ==
        doctest::Approx(reference::kLiftTent_s025_x05).epsilon(1e-11));
  CHECK(res.u.values()(0, node_at(grid, 2.0)) ==
        doctest::Approx(reference::kLiftTent_s025_x20).epsilon(1e-11));

  CHECK(res.mu.atoms.empty());
  CHECK(res.mu.density.values()(0, node_at(grid, -0.5)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.mu.density.values()(0, node_at(grid, 0.5)) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(res.mu.density.values()(0, node_at(grid, 2.0)) == 0.0);
  CHECK(measure_total_variation(res.mu) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("lift of the zero profile is empty") {
  const GridSpec g1(1, 256, 2.0);
  const LiftResult r1 = bv_lift(Field::zeros(g1, Rank::scalar), 0.4,
                                OperatorBackend::spectral(0.4));
  CHECK(r1.u.values().abs().maxCoeff() == 0.0);
  CHECK(r1.mu.atoms.empty());
  CHECK(r1.mu.density.values().abs().maxCoeff() == 0.0);

  const GridSpec g2(2, 32, 1.0);
  const LiftResult r2 = bv_lift(Field::zeros(g2, Rank::scalar), 0.4,
                                OperatorBackend::spectral(0.4));
  CHECK(r2.u.values().abs().maxCoeff() == 0.0);
  CHECK(r2.mu.atoms.empty());
}

TEST_CASE("smooth profiles take the spectral route exactly") {
  const GridSpec grid(1, 512, 2.0);
  const Field v = make_bump(grid, {0.0, 0.0}, 0.8);
  const double alpha = 0.3;
  const OperatorBackend be = OperatorBackend::spectral(alpha);
  const LiftResult res = bv_lift(v, alpha, be);

  CHECK(res.mu.atoms.empty());
  const Field gu = frac_gradient(res.u, be);
  const double err = std::sqrt((gu.values() - res.mu.density.values()).square().sum());
  const double ref = std::sqrt(res.mu.density.values().square().sum());
  CHECK(err <= 1e-12 * ref);

  // The density is the spectral gradient of v itself.
  const Field gv = classical_gradient(v);
  CHECK((gv.values() - res.mu.density.values()).abs().maxCoeff() == 0.0);
}

TEST_CASE("profiles outside the family are rejected") {
  const GridSpec grid(1, 512, 2.0);
  const OperatorBackend be = OperatorBackend::spectral(0.5);

  // Kinked but curved: |sin| bends between its kinks, so it is neither
  // piecewise linear nor spectrally smooth.
  Eigen::ArrayXd kinked(grid.node_count());
  for (Eigen::Index i = 0; i < grid.node_count(); ++i) {
    kinked[i] = std::abs(std::sin(3.14159265358979324 * grid.coord(i) / 2.0));
  }
  CHECK_THROWS_AS(bv_lift(Field::scalar(grid, kinked), 0.5, be), Error);

  // Seeded noise: jumps everywhere.
  const Field noise = detail::random_smooth_field(grid, Rank::scalar, 11);
  Eigen::ArrayXd rough = noise.values().row(0).transpose();
  for (Eigen::Index i = 0; i < grid.node_count(); ++i) {
    rough[i] += ((i * 2654435761u) % 97) / 97.0;
  }
  CHECK_THROWS_AS(bv_lift(Field::scalar(grid, rough), 0.5, be), Error);
}

TEST_CASE("piece budget is enforced") {
  // Distance to the lattice 60h*Z, cut at +-1020h: 68 slope +-1 segments
  // with kinks on nodes, and per-cell change h well under the 5%-of-range
  // jump threshold (range 30h), so this is a genuine piecewise profile.
  const GridSpec grid(1, 2048, 2.0);
  const double h = grid.spacing();
  const Eigen::Index c = grid.node_count() / 2;  // node at x = 0
  Eigen::ArrayXd v(grid.node_count());
  for (Eigen::Index i = 0; i < grid.node_count(); ++i) {
    const Eigen::Index off = i > c ? i - c : c - i;
    if (off > 1020) {
      v[i] = 0.0;
    } else {
      const Eigen::Index r = off % 60;
      v[i] = h * static_cast<double>(std::min(r, 60 - r));
    }
  }
  CHECK_THROWS_WITH_AS(bv_lift(Field::scalar(grid, v), 0.5, OperatorBackend::spectral(0.5)),
                       "bv_lift: piecewise profile exceeds the 64-piece budget", Error);
}

TEST_CASE("lift gradient concentrates at the jumps") {
  // Conservative form on purpose: the band-limited gradient smears each atom
  // into a kernel whose L1 norm grows like log n, so its discrete total
  // variation never settles. The remaining excess here is box truncation of
  // the lift's |x|^(1/2 - 1) tails and shrinks with the box.
  const GridSpec grid(1, 4100, 4100.0 / 257.0);
  const Field v = indicator_field(grid);
  const LiftResult res = bv_lift(v, 0.5, OperatorBackend::spectral(0.5));
  const Field gu = conservative_frac_gradient(res.u, OperatorBackend::spectral(0.5));

  const double h = grid.spacing();
  double tv = 0.0;
  double near = 0.0;
  for (Eigen::Index i = 0; i < grid.node_count(); ++i) {
    const double a = std::abs(gu.values()(0, i));
    tv += h * a;
    const double x = grid.coord(i);
    if (std::min(std::abs(x - 1.0), std::abs(x + 1.0)) <= 0.15) near += h * a;
  }
  CHECK(tv == doctest::Approx(2.0).epsilon(0.15));
  CHECK(near >= 0.75 * tv);
}

TEST_CASE("locality of the fractional gradient on a window") {
  const GridSpec grid(1, 1024, 4.0);
  const Eigen::Index n = grid.node_count();
  BoolArray window(n);
  Eigen::ArrayXd chi_vals(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = grid.coord(i);
    window[i] = std::abs(x) <= 1.5;
    chi_vals[i] = window[i] ? smoothstep((1.5 - std::abs(x)) / 0.3) : 0.0;
  }
  const Field chi = Field::scalar(grid, chi_vals);

  const Field base = make_bump(grid, {0.0, 0.0}, 0.8);
  const Field far_small = make_bump(grid, {3.2, 0.0}, 0.3);
  const Field far_big = make_bump(grid, {-3.0, 0.0}, 0.4);

  SUBCASE("equal fields give exactly zero") {
    CHECK(locality_check(base, base, window, chi, 0.5) == 0.0);
  }

  SUBCASE("a small far modification moves the window weakly") {
    Field u = base;
    u.values() += 0.005 * far_small.values();
    const double moved = locality_check(u, base, window, chi, 0.5);
    CHECK(moved > 0.0);
    CHECK(moved <= 1e-3);
  }

  SUBCASE("modifying both fields far away leaves the discrepancy unchanged") {
    Field u = base;
    u.values() += 0.01 * far_small.values();
    const double before = locality_check(u, base, window, chi, 0.5);

    Field u2 = u;
    Field v2 = base;
    u2.values() += 0.7 * far_big.values();
    v2.values() += 0.7 * far_big.values();
    const double after = locality_check(u2, v2, window, chi, 0.5);
    CHECK(std::abs(after - before) <= 1e-12 * std::max(1.0, before));
  }

  SUBCASE("preconditions reject bad inputs") {
    Field inside = base;
    inside.values()(0, node_at(grid, 0.0)) += 0.5;
    CHECK_THROWS_AS(locality_check(inside, base, window, chi, 0.5), Error);

    Field leaky = chi;
    leaky.values()(0, node_at(grid, 3.0)) = 0.2;
    CHECK_THROWS_AS(locality_check(base, base, window, leaky, 0.5), Error);

    Field negative = chi;
    negative.values()(0, node_at(grid, 0.0)) = -0.1;
    CHECK_THROWS_AS(locality_check(base, base, window, negative, 0.5), Error);
  }
}

TEST_CASE("laminates vanish outside Omega and shrink in L1") {
  const GridSpec grid(1, 2048, 2.5);
  const DomainMask mask = DomainMask::centered_boxes(grid, 1.5, 2.0);
  const Field amp = make_bump(grid, {0.0, 0.0}, 1.2);
  const std::vector<int> freqs = {1, 2, 4, 8, 16, 32};
  const std::vector<Field> seq = laminate_sequence(amp, {1.0, 0.0}, freqs, mask, 0.5);

  REQUIRE(seq.size() == freqs.size());
  for (const Field& w : seq) {
    for (Eigen::Index i = 0; i < grid.node_count(); ++i) {
      if (!mask.omega()[i]) REQUIRE(w.values()(0, i) == 0.0);
    }
  }
  const double first = field_l1(seq.front());
  const double last = field_l1(seq.back());
  CHECK(first > 0.0);
  CHECK(last <= 0.35 * first);

  CHECK_THROWS_AS(laminate_sequence(amp, {1.0, 0.0}, {1, 256}, mask, 0.5), Error);
  CHECK_THROWS_AS(laminate_sequence(amp, {1.0, 0.0}, {8, 4}, mask, 0.5), Error);
  CHECK_THROWS_AS(laminate_sequence(amp, {0.5, 0.0}, {1, 2}, mask, 0.5), Error);
  Eigen::ArrayXd ones = Eigen::ArrayXd::Ones(grid.node_count());
  CHECK_THROWS_AS(laminate_sequence(Field::scalar(grid, ones), {1.0, 0.0}, {1, 2}, mask, 0.5),
                  Error);
}

TEST_CASE("laminate gradients oscillate at unit order on a plateau") {
  // The in-band fraction tracks nodes per tooth: the transition layer at
  // each kink eats a fixed number of cells.
  const GridSpec grid(1, 4096, 2.5);
  const DomainMask mask = DomainMask::centered_boxes(grid, 1.5, 2.0);
  Eigen::ArrayXd plateau(grid.node_count());
  for (Eigen::Index i = 0; i < grid.node_count(); ++i) {
    const double x = grid.coord(i);
    plateau[i] = std::abs(x) < 1.5 ? smoothstep((1.3 - std::abs(x)) / 0.3) : 0.0;
  }
  const std::vector<Field> seq =
      laminate_sequence(Field::scalar(grid, plateau), {1.0, 0.0}, {16}, mask, 0.5);
  const Field gw = frac_gradient(seq.front(), OperatorBackend::spectral(0.5));

  Eigen::Index in_band = 0;
  Eigen::Index total = 0;
  for (Eigen::Index i = 0; i < grid.node_count(); ++i) {
    if (std::abs(grid.coord(i)) > 0.8) continue;
    ++total;
    const double a = std::abs(gw.values()(0, i));
    if (a >= 0.8 && a <= 1.2) ++in_band;
  }
  CHECK(total > 1000);
  CHECK(static_cast<double>(in_band) >= 0.7 * static_cast<double>(total));
}

TEST_CASE("relaxation gap demo: laminates beat the zero limit") {
  const GridSpec grid(1, 4096, 2.5);
  const DomainMask mask = DomainMask::centered_boxes(grid, 1.5, 2.0);
  Field b = make_bump(grid, {0.0, 0.0}, 1.2);
  b.values() /= field_l1(b);  // unit obstacle mass

  const std::vector<int> freqs = {1, 2, 4, 8, 16, 32, 64};
  const GapReport report = relaxation_gap_demo(b, 0.5, mask, freqs);

  CHECK(report.energy_at_limit == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(report.relaxed_at_limit == 0.0);
  CHECK(report.min_sequence_energy <= 0.4);
  CHECK(report.gap >= 0.6);
  CHECK(report.gap == report.energy_at_limit - report.min_sequence_energy);

  REQUIRE(report.diagnostics.energy_values.size() == freqs.size());
  REQUIRE(report.diagnostics.l1_distance_to_limit.size() == freqs.size());
  // The competitors collapse to the limit in L1 while their energies drop.
  CHECK(report.diagnostics.l1_distance_to_limit.back() <=
        0.35 * report.diagnostics.l1_distance_to_limit.front());
  CHECK(report.diagnostics.energy_values.back() <=
        report.diagnostics.energy_values.front());

  // Same pipeline, convex area integrand: no drop below the limit energy.
  const OperatorBackend be = OperatorBackend::spectral(0.5);
  const Field zero = Field::zeros(grid, Rank::scalar);
  const Integrand f_area = area_integrand();
  const double at_limit = energy_plain(zero, zero, mask, f_area, be).total;
  const std::vector<Field> seq = laminate_sequence(b, {1.0, 0.0}, freqs, mask, 0.5);
  double min_area = std::numeric_limits<double>::infinity();
  for (const Field& w : seq) {
    min_area = std::min(min_area, energy_plain(w, zero, mask, f_area, be).total);
  }
  CHECK(min_area >= at_limit - 0.05 * std::abs(at_limit));
}

TEST_CASE("area-strict mollification approaches the limit") {
  // h = 2/8191 puts the indicator jumps on cell midpoints.
  const GridSpec grid(1, 16384, 16384.0 / 8191.0);
  const DomainMask mask = DomainMask::centered_boxes(grid, 1.5, 1.8);
  const double alpha = 0.5;
  const LiftResult lift = bv_lift(indicator_field(grid), alpha,
                                  OperatorBackend::spectral(alpha));

  // g agrees with the target away from Omega; the difference is compactly
  // supported in |x| <= 1.3.
  Eigen::ArrayXd g_vals(grid.node_count());
  for (Eigen::Index i = 0; i < grid.node_count(); ++i) {
    const double x = grid.coord(i);
    const double cut = smoothstep((1.3 - std::abs(x)) / 0.15);
    g_vals[i] = (1.0 - cut) * lift.u.values()(0, i);
  }
  const Field g = Field::scalar(grid, g_vals);

  const std::vector<double> deltas = {0.05, 0.02, 0.01};
  const SequenceDiagnostics diag =
      area_strict_approx(lift.u, lift.mu, g, mask, alpha, deltas);

  const double target = area_functional(lift.mu, mask, Region::omega_closure);
  REQUIRE(diag.area_functional_values.size() == 3);
  CHECK(diag.l1_distance_to_limit[2] < diag.l1_distance_to_limit[1]);
  CHECK(diag.l1_distance_to_limit[1] < diag.l1_distance_to_limit[0]);
  CHECK(diag.area_functional_values[2] == doctest::Approx(target).epsilon(0.05));
  // Strong convergence outside Omega: the mollification error seen from the
  // exterior shrinks at the delta^2 rate of a smooth far field.
  CHECK(diag.exterior_gradient_l1_error[0] < 1e-3);
  CHECK(diag.exterior_gradient_l1_error[1] < diag.exterior_gradient_l1_error[0]);
  CHECK(diag.exterior_gradient_l1_error[2] < diag.exterior_gradient_l1_error[1]);
  CHECK(diag.exterior_gradient_l1_error[2] <= 0.1 * diag.exterior_gradient_l1_error[0]);

  // Margin guard: a delta wider than the support gap must be refused.
  CHECK_THROWS_AS(area_strict_approx(lift.u, lift.mu, g, mask, alpha, {0.3}), Error);
  CHECK_THROWS_AS(area_strict_approx(lift.u, lift.mu, g, mask, alpha, {0.01, 0.02}), Error);

  // Trivial family: target equal to g mollifies to itself.
  const SequenceDiagnostics same = area_strict_approx(g, lift.mu, g, mask, alpha, {0.01, 0.005});
  CHECK(same.l1_distance_to_limit[0] == 0.0);
  CHECK(same.l1_distance_to_limit[1] == 0.0);
  CHECK(same.area_functional_values[0] == same.area_functional_values[1]);
}

TEST_CASE("poincare probe: ratios are valid and stable under refinement") {
  const DomainMask coarse =
      DomainMask::centered_boxes(GridSpec(1, 1024, 2.0), 1.2, 1.6);
  const PoincareReport a = poincare_probe(coarse, 0.5, 12, 7);
  REQUIRE(a.ratios.size() == 12);
  for (double r : a.ratios) CHECK(r >= 1.0 - 1e-12);
  CHECK(a.c_hat == *std::max_element(a.ratios.begin(), a.ratios.end()));
  CHECK(std::isfinite(a.c_hat));

  const DomainMask fine =
      DomainMask::centered_boxes(GridSpec(1, 2048, 2.0), 1.2, 1.6);
  const PoincareReport b = poincare_probe(fine, 0.5, 12, 7);
  CHECK(b.c_hat / a.c_hat >= 0.75);
  CHECK(b.c_hat / a.c_hat <= 1.3333);

  CHECK_THROWS_AS(poincare_probe(coarse, 0.5, 5, 7), Error);
}

TEST_CASE("strong outside probe: exact limits and violations") {
  const GridSpec grid(1, 1024, 2.5);
  const DomainMask mask = DomainMask::centered_boxes(grid, 1.5, 2.0);
  const Field zero = Field::zeros(grid, Rank::scalar);

  const std::vector<Field> still = {zero, zero};
  const std::vector<double> at_rest = strong_outside_probe(still, zero, mask, 0.5);
  CHECK(at_rest[0] == 0.0);
  CHECK(at_rest[1] == 0.0);

  const Field amp = make_bump(grid, {0.0, 0.0}, 1.2);
  const std::vector<Field> seq =
      laminate_sequence(amp, {1.0, 0.0}, {2, 8, 32}, mask, 0.5);
  const std::vector<double> errs = strong_outside_probe(seq, zero, mask, 0.5);
  REQUIRE(errs.size() == 3);
  CHECK(errs.back() < errs.front());

  const Field outside = make_bump(grid, {1.9, 0.0}, 0.2);
  CHECK_THROWS_AS(strong_outside_probe({outside}, zero, mask, 0.5), Error);
}

TEST_CASE("diagnostics serialize to csv and json") {
  SequenceDiagnostics d;
  d.l1_distance_to_limit = {0.5, 0.25};
  d.energy_values = {1.25, 1.0};
  d.exterior_gradient_l1_error = {1e-3, 5e-4};
  d.area_functional_values = {5.5, 5.25};

  const std::string csv = diagnostics_csv(d);
  CHECK(csv.rfind("index,l1_distance_to_limit,energy,exterior_gradient_l1_error,area_functional\n",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  const nlohmann::json j = nlohmann::json::parse(diagnostics_json(d));
  CHECK(j["count"] == 2);
  CHECK(j["energy"][1] == 1.0);
  CHECK(j["area_functional"][0] == 5.5);

  SequenceDiagnostics bad = d;
  bad.energy_values.pop_back();
  CHECK_THROWS_AS(diagnostics_csv(bad), Error);
}

}  // TEST_SUITE
