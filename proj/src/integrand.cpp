// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#include "fracvar/integrand.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <utility>

#include "fracvar/detail/rng.hpp"
#include "fracvar/errors.hpp"

namespace fracvar {

void audit_integrand(const Integrand& f, const GridSpec& grid, int probes,
                     std::uint64_t seed) {
  require(static_cast<bool>(f.eval), "audit_integrand: integrand has no eval");
  require(probes >= 1, "audit_integrand: probes must be >= 1");
  require(f.growth_M > 0.0 && f.coercivity_mu > 0.0 && f.coercivity_c >= 0.0,
          "audit_integrand: constants out of range");

  std::mt19937_64 gen(seed);
  Eigen::VectorXd A(grid.dim());
  double x[2] = {0.0, 0.0};
  for (int p = 0; p < probes; ++p) {
    for (int d = 0; d < grid.dim(); ++d) {
      x[d] = detail::uniform_in(gen, -grid.box_halfwidth(), grid.box_halfwidth());
    }
    if (p % 4 == 3) {
      A.setZero();  // the bounds must also hold at A = 0
    } else {
      for (int d = 0; d < grid.dim(); ++d) A(d) = detail::uniform_sym(gen);
      if (A.norm() == 0.0) A(0) = 1.0;
      A *= std::pow(10.0, detail::uniform_in(gen, -3.0, 6.0)) / A.norm();
    }
    const double val = f.eval(x, A);
    require(std::isfinite(val), "audit_integrand: eval returned a non-finite value");
    const double na = A.norm();
    const double a = f.growth_a ? f.growth_a(x) : 0.0;
    require(a >= 0.0, "audit_integrand: growth_a must be nonnegative");
    const double slack = 1e-9 * (1.0 + f.growth_M * na + a);
    require(std::abs(val) <= f.growth_M * na + a + slack,
            "audit_integrand: growth bound violated on a probe");
    require(val >= f.coercivity_mu * na - f.coercivity_c - slack,
            "audit_integrand: coercivity bound violated on a probe");
  }
}

std::vector<double> default_t_schedule() {
  return {1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7};
}

RecessionEstimate recession_estimate(const Integrand& f, const double* x,
                                     const GradArg& A,
                                     const std::vector<double>& t_schedule) {
  require(static_cast<bool>(f.eval), "recession_estimate: integrand has no eval");
  require(t_schedule.size() >= 3, "recession_estimate: need at least 3 schedule entries");
  require(t_schedule.front() > 0.0, "recession_estimate: schedule entries must be positive");
  for (std::size_t i = 1; i < t_schedule.size(); ++i) {
    require(t_schedule[i] > t_schedule[i - 1], "recession_estimate: schedule must increase");
  }
  require(t_schedule.back() >= 1e6, "recession_estimate: schedule must reach 1e6");

  // Quotients over the last few schedule entries; earlier ones carry too much
  // of the higher-order terms to help the fit.
  const std::size_t tail = std::min<std::size_t>(4, t_schedule.size());
  const std::size_t first = t_schedule.size() - tail;
  Eigen::VectorXd q(tail), s(tail);
  Eigen::VectorXd tA(A.size());
  for (std::size_t i = 0; i < tail; ++i) {
    const double t = t_schedule[first + i];
    tA = t * A;
    q(static_cast<Eigen::Index>(i)) = f.eval(x, tA) / t;
    s(static_cast<Eigen::Index>(i)) = 1.0 / t;
  }

  const double sm = s.mean();
  const double qm = q.mean();
  const double den = (s.array() - sm).square().sum();
  const double b = den > 0.0 ? ((s.array() - sm) * (q.array() - qm)).sum() / den : 0.0;
  const double a = qm - b * sm;

  RecessionEstimate out;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    out.tail_spread = std::max(out.tail_spread, std::abs(q(i) - (a + b * s(i))));
  }
  if (out.tail_spread <= 1e-3 * std::max(1.0, std::abs(a))) {
    out.value = a;
  } else {
    out.value = q.maxCoeff();
    out.limit_exists = false;
  }
  return out;
}

std::function<double(double)> convex_envelope_1d(const Integrand& f,
                                                 const double* x,
                                                 const Eigen::ArrayXd& samples) {
  require(static_cast<bool>(f.eval), "convex_envelope_1d: integrand has no eval");
  std::vector<double> ts(samples.data(), samples.data() + samples.size());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  require(ts.size() >= 3, "convex_envelope_1d: need at least 3 distinct samples");

  // Lower hull of the sampled graph, one left-to-right monotone-chain pass.
  std::vector<std::pair<double, double>> hull;
  hull.reserve(ts.size());
  Eigen::VectorXd one(1);
  for (double t : ts) {
    one(0) = t;
    const double y = f.eval(x, one);
    require(std::isfinite(y), "convex_envelope_1d: integrand not finite at a sample");
    while (hull.size() >= 2) {
      const auto& p1 = hull[hull.size() - 2];
      const auto& p2 = hull[hull.size() - 1];
      const double cross = (p2.first - p1.first) * (y - p1.second) -
                           (p2.second - p1.second) * (t - p1.first);
      if (cross > 0.0) break;
      hull.pop_back();
    }
    hull.emplace_back(t, y);
  }

  auto pts = std::make_shared<const std::vector<std::pair<double, double>>>(std::move(hull));
  return [pts](double t) {
    const auto& h = *pts;
    if (t <= h.front().first) {
      const double sl = (h[1].second - h[0].second) / (h[1].first - h[0].first);
      return h[0].second + sl * (t - h[0].first);
    }
    if (t >= h.back().first) {
      const auto& a = h[h.size() - 2];
      const auto& b = h.back();
      const double sl = (b.second - a.second) / (b.first - a.first);
      return b.second + sl * (t - b.first);
    }
    std::size_t lo = 0;
    std::size_t hi = h.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (h[mid].first <= t ? lo : hi) = mid;
    }
    const double w = (t - h[lo].first) / (h[hi].first - h[lo].first);
    return h[lo].second + w * (h[hi].second - h[lo].second);
  };
}

Integrand area_integrand() {
  Integrand f;
  f.eval = [](const double*, const GradArg& A) {
    return std::sqrt(1.0 + A.squaredNorm()) - 1.0;
  };
  f.growth_M = 1.0;
  f.coercivity_mu = 1.0;
  f.coercivity_c = 1.0;
  f.known_recession = [](const double*, const GradArg& A) { return A.norm(); };
  f.known_envelope = f.eval;
  f.is_convex_in_A = true;
  return f;
}

Integrand modulus_integrand() {
  Integrand f;
  f.eval = [](const double*, const GradArg& A) { return A.norm(); };
  f.growth_M = 1.0;
  f.coercivity_mu = 1.0;
  f.coercivity_c = 0.0;
  f.known_recession = f.eval;
  f.known_envelope = f.eval;
  f.is_convex_in_A = true;
  return f;
}

Integrand well_integrand(std::function<double(const double*)> b, double b_sup) {
  require(static_cast<bool>(b), "well_integrand: profile must be callable");
  require(b_sup >= 0.0, "well_integrand: b_sup must be nonnegative");
  Integrand f;
  f.eval = [b](const double* x, const GradArg& A) {
    return std::abs(A.norm() - b(x));
  };
  f.growth_M = 1.0;
  f.growth_a = b;
  f.coercivity_mu = 1.0;
  f.coercivity_c = b_sup;
  f.known_recession = [](const double*, const GradArg& A) { return A.norm(); };
  f.known_envelope = [b](const double* x, const GradArg& A) {
    return std::max(A.norm() - b(x), 0.0);
  };
  f.is_convex_in_A = false;
  return f;
}

}  // namespace fracvar
