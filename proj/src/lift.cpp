// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#include "fracvar/lift.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "fracvar/constants.hpp"
#include "fracvar/detail/fft.hpp"
#include "fracvar/detail/reduce.hpp"
#include "fracvar/errors.hpp"
#include "fracvar/ops.hpp"

namespace fracvar {
namespace {

constexpr int kMaxPieces = 64;

double sgn(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

// Piecewise-linear model recovered from the samples: on [breaks[i],
// breaks[i+1]) the value is a[i] + b[i] * (x - anchor[i]); zero outside
// [breaks.front(), breaks.back()). Jumps sit at cell midpoints, kinks at
// shared nodes, so a break can never collide with an evaluation node unless
// it is a kink.
struct Piecewise {
  std::vector<double> breaks;
  std::vector<double> anchor;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> jump_pos;
  std::vector<double> jump_w;
};

double model_value(const Piecewise& pw, double x) {
  if (pw.a.empty() || x < pw.breaks.front() || x >= pw.breaks.back()) return 0.0;
  const auto it = std::upper_bound(pw.breaks.begin(), pw.breaks.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - pw.breaks.begin()) - 1;
  return pw.a[i] + pw.b[i] * (x - pw.anchor[i]);
}

// Parses the samples back into pieces. Returns nullopt when the samples are
// not piecewise linear with isolated midpoint jumps; throws only on the
// piece budget (a valid member of the family that is too large is an error,
// not a different family).
std::optional<Piecewise> recover_piecewise(const GridSpec& grid,
                                           const Eigen::ArrayXd& v) {
  const Eigen::Index n = grid.node_count();
  if (n < 8) return std::nullopt;
  const double h = grid.spacing();
  const double vmax = v.abs().maxCoeff();
  if (vmax == 0.0) return Piecewise{};  // zero profile: empty model
  const double range = v.maxCoeff() - v.minCoeff();

  // Cell classification. d holds per-cell slopes; a jump cell carries a
  // value change above 5% of the range and is excluded from the line fits.
  const Eigen::Index cells = n - 1;
  Eigen::ArrayXd d(cells);
  std::vector<bool> jump(static_cast<std::size_t>(cells), false);
  for (Eigen::Index j = 0; j < cells; ++j) {
    d[j] = (v[j + 1] - v[j]) / h;
    jump[static_cast<std::size_t>(j)] = std::abs(v[j + 1] - v[j]) > 0.05 * range;
  }
  if (jump.front() || jump.back()) return std::nullopt;
  const double dscale = std::max(1.0, d.abs().maxCoeff());

  // Maximal runs of non-jump cells with matching slopes. Each run must span
  // at least two cells; runs touch either at a shared node (a kink) or
  // across exactly one jump cell.
  struct Block {
    Eigen::Index c0, c1;  // inclusive cell range
  };
  std::vector<Block> blocks;
  Eigen::Index j = 0;
  while (j < cells) {
    if (jump[static_cast<std::size_t>(j)]) {
      ++j;
      continue;
    }
    Eigen::Index k = j;
    while (k + 1 < cells && !jump[static_cast<std::size_t>(k + 1)] &&
           std::abs(d[k + 1] - d[k]) <= 1e-7 * dscale) {
      ++k;
    }
    blocks.push_back({j, k});
    j = k + 1;
  }
  if (blocks.empty()) return std::nullopt;
  for (const Block& blk : blocks) {
    if (blk.c1 - blk.c0 + 1 < 2) return std::nullopt;
  }
  for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
    const Eigen::Index gap = blocks[i + 1].c0 - blocks[i].c1 - 1;
    if (gap == 0) continue;  // kink at the shared node
    if (gap != 1 || !jump[static_cast<std::size_t>(blocks[i].c1 + 1)]) return std::nullopt;
  }
  if (blocks.front().c0 != 0 || blocks.back().c1 != cells - 1) return std::nullopt;

  Piecewise pw;
  const std::size_t m = blocks.size();
  std::vector<char> zero_piece(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Index first = blocks[i].c0;
    const Eigen::Index last = blocks[i].c1 + 1;
    pw.anchor.push_back(grid.coord(first));
    pw.a.push_back(v[first]);
    pw.b.push_back((v[last] - v[first]) / (static_cast<double>(last - first) * h));
    double piece_max = 0.0;
    for (Eigen::Index node = first; node <= last; ++node) piece_max = std::max(piece_max, std::abs(v[node]));
    zero_piece[i] = piece_max <= 1e-12 * vmax ? 1 : 0;
    if (i == 0) pw.breaks.push_back(grid.coord(first));
    if (i + 1 < m) {
      const Eigen::Index gap = blocks[i + 1].c0 - blocks[i].c1 - 1;
      if (gap == 0) {
        pw.breaks.push_back(grid.coord(last));
      } else {
        const double mid = grid.coord(last) + 0.5 * h;
        pw.breaks.push_back(mid);
        const double b_l = pw.b[i];
        const double b_r = (v[blocks[i + 1].c1 + 1] - v[blocks[i + 1].c0]) /
                           (static_cast<double>(blocks[i + 1].c1 + 1 - blocks[i + 1].c0) * h);
        pw.jump_pos.push_back(mid);
        pw.jump_w.push_back((v[last + 1] - b_r * 0.5 * h) - (v[last] + b_l * 0.5 * h));
      }
    } else {
      pw.breaks.push_back(grid.coord(last));
    }
  }

  // The zero extension is part of the model: strip zero ends so the tails
  // take over, then insist the support stays clear of the box edges.
  std::size_t lo = 0, hi = m;
  while (lo < hi && zero_piece[lo]) ++lo;
  while (hi > lo && zero_piece[hi - 1]) --hi;
  if (lo == hi) return Piecewise{};
  Piecewise out;
  out.breaks.assign(pw.breaks.begin() + static_cast<std::ptrdiff_t>(lo),
                    pw.breaks.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
  out.anchor.assign(pw.anchor.begin() + static_cast<std::ptrdiff_t>(lo),
                    pw.anchor.begin() + static_cast<std::ptrdiff_t>(hi));
  out.a.assign(pw.a.begin() + static_cast<std::ptrdiff_t>(lo), pw.a.begin() + static_cast<std::ptrdiff_t>(hi));
  out.b.assign(pw.b.begin() + static_cast<std::ptrdiff_t>(lo), pw.b.begin() + static_cast<std::ptrdiff_t>(hi));
  out.jump_pos = pw.jump_pos;
  out.jump_w = pw.jump_w;
  if (out.breaks.front() < grid.coord(0) + 0.25 * h) return std::nullopt;
  if (out.breaks.back() > grid.coord(n - 1) - 0.25 * h) return std::nullopt;
  require(out.a.size() <= kMaxPieces,
                  "bv_lift: piecewise profile exceeds the 64-piece budget");

  const double tol = 1e-9 * std::max(1.0, vmax);
  for (Eigen::Index node = 0; node < n; ++node) {
    if (std::abs(model_value(out, grid.coord(node)) - v[node]) > tol) return std::nullopt;
  }
  return out;
}

// Closed-form evaluation of the order-s fractional Laplacian of the model
// against its zero extension, at one point. Per piece, with l the piece line
// and vx the model value at x,
//   contribution = (l(x) - vx) * F1 + slope * F2,
//   F1 = (sgn(P-x)|P-x|^-2s - sgn(Q-x)|Q-x|^-2s) / (2s),
//   F2 = (|Q-x|^(1-2s) - |P-x|^(1-2s)) / (1 - 2s),
// and the zero tails contribute -vx * (|x-B0|^-2s + |B1-x|^-2s) / (2s).
// F2 stays valid when x lies inside the piece; F1 does not, but there its
// weight l(x) - vx vanishes identically, so the term is dropped. The same
// cancellation kills the F1 terms of the two pieces meeting at a kink.
double lift_point(const Piecewise& pw, double s, double nu, double x, double vmax) {
  const double twos = 2.0 * s;
  const double vx = model_value(pw, x);
  double acc = 0.0;
  const std::size_t m = pw.a.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double dP = pw.breaks[i] - x;
    const double dQ = pw.breaks[i + 1] - x;
    acc += pw.b[i] *
           (std::pow(std::abs(dQ), 1.0 - twos) - std::pow(std::abs(dP), 1.0 - twos)) / (1.0 - twos);
    if (dP <= 0.0 && dQ >= 0.0) continue;
    const double coef = pw.a[i] + pw.b[i] * (x - pw.anchor[i]) - vx;
    if (coef == 0.0) continue;
    acc += coef *
           (sgn(dP) * std::pow(std::abs(dP), -twos) - sgn(dQ) * std::pow(std::abs(dQ), -twos)) / twos;
  }
  if (std::abs(vx) > 1e-13 * vmax) {
    const double dl = x - pw.breaks.front();
    const double dr = pw.breaks.back() - x;
    require(dl > 0.0 && dr > 0.0, "bv_lift: tail distance degenerate");
    acc -= vx * (std::pow(dl, -twos) + std::pow(dr, -twos)) / twos;
  }
  return nu * acc;
}

LiftResult lift_piecewise(const GridSpec& grid, const Piecewise& pw, double s,
                          double vmax) {
  const Eigen::Index n = grid.node_count();
  const double nu = detail::nu_of_order(1, 2.0 * s);
  Eigen::ArrayXd u(n);
  Eigen::ArrayXXd density = Eigen::ArrayXXd::Zero(1, n);
  const std::size_t m = pw.a.size();
  for (Eigen::Index node = 0; node < n; ++node) {
    const double x = grid.coord(node);
    u[node] = m == 0 ? 0.0 : lift_point(pw, s, nu, x, vmax);
    if (m != 0 && x >= pw.breaks.front() && x < pw.breaks.back()) {
      const auto it = std::upper_bound(pw.breaks.begin(), pw.breaks.end(), x);
      density(0, node) = pw.b[static_cast<std::size_t>(it - pw.breaks.begin()) - 1];
    }
  }
  MeasureDecomp mu{Field(grid, Rank::vector, std::move(density)), {}};
  for (std::size_t i = 0; i < pw.jump_pos.size(); ++i) {
    Atom atom;
    atom.location = {pw.jump_pos[i], 0.0};
    atom.weight = Eigen::VectorXd::Constant(1, pw.jump_w[i]);
    mu.atoms.push_back(std::move(atom));
  }
  return {Field::scalar(grid, std::move(u)), std::move(mu)};
}

// A field qualifies as smooth when the upper half of its spectrum (per-axis
// index above n/4) holds a negligible share of the energy. Band-limited and
// analytic profiles pass with orders of magnitude to spare; anything with a
// jump or a kink fails.
bool spectrally_smooth(const Field& v) {
  const GridSpec& grid = v.grid();
  const Eigen::Index n = grid.points_per_axis();
  double total = 0.0;
  double tail = 0.0;
  if (grid.dim() == 1) {
    const Eigen::VectorXcd spec = detail::dft_1d(v.values().row(0).transpose());
    for (Eigen::Index k = 0; k < n; ++k) {
      const double e = std::norm(spec[k]);
      total += e;
      if (std::min(k, n - k) > n / 4) tail += e;
    }
  } else {
    const Eigen::MatrixXcd spec = detail::dft_2d_from_real(v.values().row(0).transpose(), n);
    for (Eigen::Index ky = 0; ky < n; ++ky) {
      for (Eigen::Index kx = 0; kx < n; ++kx) {
        const double e = std::norm(spec(kx, ky));
        total += e;
        const Eigen::Index m = std::max(std::min(kx, n - kx), std::min(ky, n - ky));
        if (m > n / 4) tail += e;
      }
    }
  }
  return tail <= 1e-10 * total;
}

}  // namespace

LiftResult bv_lift(const Field& v, double alpha, const OperatorBackend& backend) {
  require(v.rank() == Rank::scalar, "bv_lift: v must be a scalar field");
  v.check_finite();
  require(alpha > 0.0 && alpha < 1.0, "bv_lift: alpha must lie in (0, 1)");
  const GridSpec& grid = v.grid();
  const double s = 0.5 * (1.0 - alpha);

  if (grid.dim() == 1) {
    const Eigen::ArrayXd samples = v.values().row(0).transpose();
    if (std::optional<Piecewise> pw = recover_piecewise(grid, samples)) {
      return lift_piecewise(grid, *pw, s, std::max(samples.abs().maxCoeff(), 1.0));
    }
  }
  require(spectrally_smooth(v),
                  "bv_lift: not from the constructible family (need a piecewise-linear "
                  "profile in dimension one or a spectrally smooth field)");
  Field u = frac_laplacian(v, s, backend);
  MeasureDecomp mu{classical_gradient(v), {}};
  return {std::move(u), std::move(mu)};
}

double locality_check(const Field& u, const Field& v, const BoolArray& window,
                      const Field& chi, double alpha) {
  require(u.rank() == Rank::scalar && v.rank() == Rank::scalar &&
                      chi.rank() == Rank::scalar,
                  "locality_check: fields must be scalar");
  require(u.grid() == v.grid() && u.grid() == chi.grid(),
                  "locality_check: grids must match");
  const GridSpec& grid = u.grid();
  const Eigen::Index n = grid.node_count();
  require(window.size() == n, "locality_check: window size must match the grid");
  u.check_finite();
  v.check_finite();
  chi.check_finite();
  require((chi.values() >= 0.0).all(), "locality_check: chi must be nonnegative");

  const double scale = std::max(u.values().abs().maxCoeff(), v.values().abs().maxCoeff());
  const double chi_top = chi.values().abs().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (window[i]) {
      require(std::abs(u.values()(0, i) - v.values()(0, i)) <= 1e-12 * scale,
                      "locality_check: u and v must agree on the window");
    } else {
      require(std::abs(chi.values()(0, i)) <= 1e-14 * std::max(1.0, chi_top),
                      "locality_check: chi must vanish off the window");
    }
  }

  const OperatorBackend backend = OperatorBackend::spectral(alpha);
  const Field gu = frac_gradient(u, backend);
  const Field gv = frac_gradient(v, backend);
  Eigen::ArrayXd terms = Eigen::ArrayXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!window[i]) continue;
    const double diff = std::sqrt((gu.values().col(i) - gv.values().col(i)).square().sum());
    terms[i] = chi.values()(0, i) * diff;
  }
  return grid.cell_volume() * detail::pairwise_sum(terms);
}

}  // namespace fracvar
