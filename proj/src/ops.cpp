// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#include "fracvar/ops.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "fracvar/constants.hpp"
#include "fracvar/detail/fft.hpp"
#include "fracvar/detail/quadrature.hpp"
#include "fracvar/detail/rng.hpp"
#include "fracvar/detail/spectral.hpp"
#include "fracvar/errors.hpp"

namespace fracvar {

namespace detail {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

SpectralPlan::SpectralPlan(const GridSpec& grid, double alpha) : grid_(grid), alpha_(alpha) {
  require(alpha > 0.0 && alpha <= 1.0, "SpectralPlan: order must lie in (0, 1]");
  const Eigen::Index n = grid.points_per_axis();
  const double period = 2.0 * grid.box_halfwidth();
  g_.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) g_(k) = kTwoPi * axis_freq(k, n, period);
  if (grid.dim() == 1) {
    magpow_.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k == 0 || is_nyquist(k, n)) {
        magpow_(k) = 0.0;
      } else {
        magpow_(k) = std::pow(std::abs(g_(k)), alpha - 1.0);
      }
    }
  } else {
    magpow_.resize(n * n);
    for (Eigen::Index ky = 0; ky < n; ++ky) {
      for (Eigen::Index kx = 0; kx < n; ++kx) {
        const Eigen::Index bin = ky * n + kx;
        if ((kx == 0 && ky == 0) || is_nyquist(kx, n) || is_nyquist(ky, n)) {
          magpow_(bin) = 0.0;
        } else {
          magpow_(bin) = std::pow(std::hypot(g_(kx), g_(ky)), alpha - 1.0);
        }
      }
    }
  }
}

Eigen::ArrayXXd SpectralPlan::gradient(const Eigen::Ref<const Eigen::ArrayXd>& u) const {
  const Eigen::Index n = grid_.points_per_axis();
  Eigen::ArrayXXd out(grid_.dim(), grid_.node_count());
  if (grid_.dim() == 1) {
    Eigen::VectorXcd spec = dft_1d(u);
    for (Eigen::Index k = 0; k < n; ++k) spec(k) *= std::complex<double>(0.0, g_(k) * magpow_(k));
    out.row(0) = idft_1d_real(spec).transpose();
    return out;
  }
  // Both components ride one inverse transform: their spectra are conjugate
  // symmetric, so the real and imaginary parts of inv(A + iB) split exactly.
  Eigen::MatrixXcd work = dft_2d_from_real(u, n);
  for (Eigen::Index ky = 0; ky < n; ++ky) {
    for (Eigen::Index kx = 0; kx < n; ++kx) {
      const double m = magpow_(ky * n + kx);
      work(kx, ky) *= std::complex<double>(-g_(ky) * m, g_(kx) * m);
    }
  }
  dft_2d_inplace(work, true);
  Eigen::ArrayXd a(n * n);
  Eigen::ArrayXd b(n * n);
  Eigen::Map<Eigen::MatrixXd>(a.data(), n, n) = work.real();
  Eigen::Map<Eigen::MatrixXd>(b.data(), n, n) = work.imag();
  out.row(0) = a.transpose();
  out.row(1) = b.transpose();
  return out;
}

Eigen::ArrayXd SpectralPlan::divergence(const Eigen::Ref<const Eigen::ArrayXXd>& p) const {
  require(p.rows() == grid_.dim(), "SpectralPlan: component count mismatch");
  const Eigen::Index n = grid_.points_per_axis();
  if (grid_.dim() == 1) {
    const Eigen::ArrayXd comp = p.row(0).transpose();
    Eigen::VectorXcd spec = dft_1d(comp);
    for (Eigen::Index k = 0; k < n; ++k) spec(k) *= std::complex<double>(0.0, g_(k) * magpow_(k));
    return idft_1d_real(spec);
  }
  // One forward transform carries both components as real + i imag; the
  // reversed-bin conjugate splits them back before the multiplier.
  const Eigen::ArrayXd c0 = p.row(0).transpose();
  const Eigen::ArrayXd c1 = p.row(1).transpose();
  Eigen::MatrixXcd z(n, n);
  z.real() = Eigen::Map<const Eigen::MatrixXd>(c0.data(), n, n);
  z.imag() = Eigen::Map<const Eigen::MatrixXd>(c1.data(), n, n);
  dft_2d_inplace(z, false);
  Eigen::MatrixXcd acc(n, n);
  for (Eigen::Index ky = 0; ky < n; ++ky) {
    const Eigen::Index ry = ky == 0 ? 0 : n - ky;
    for (Eigen::Index kx = 0; kx < n; ++kx) {
      const Eigen::Index rx = kx == 0 ? 0 : n - kx;
      const std::complex<double> zk = z(kx, ky);
      const std::complex<double> zr = std::conj(z(rx, ry));
      const std::complex<double> s0 = 0.5 * (zk + zr);
      const std::complex<double> s1 = std::complex<double>(0.0, -0.5) * (zk - zr);
      const double m = magpow_(ky * n + kx);
      acc(kx, ky) = std::complex<double>(0.0, m) * (g_(kx) * s0 + g_(ky) * s1);
    }
  }
  return idft_2d_to_real(std::move(acc));
}

Eigen::ArrayXd apply_radial_multiplier(const GridSpec& grid,
                                       const Eigen::Ref<const Eigen::ArrayXd>& u,
                                       double exponent) {
  const Eigen::Index n = grid.points_per_axis();
  const double period = 2.0 * grid.box_halfwidth();
  if (grid.dim() == 1) {
    Eigen::VectorXcd spec = dft_1d(u);
    spec(0) = 0.0;
    for (Eigen::Index k = 1; k < n; ++k) {
      spec(k) *= std::pow(kTwoPi * std::abs(axis_freq(k, n, period)), exponent);
    }
    return idft_1d_real(spec);
  }
  Eigen::MatrixXcd spec = dft_2d_from_real(u, n);
  for (Eigen::Index ky = 0; ky < n; ++ky) {
    for (Eigen::Index kx = 0; kx < n; ++kx) {
      if (kx == 0 && ky == 0) {
        spec(0, 0) = 0.0;
        continue;
      }
      const double mag = kTwoPi * std::hypot(axis_freq(kx, n, period), axis_freq(ky, n, period));
      spec(kx, ky) *= std::pow(mag, exponent);
    }
  }
  return idft_2d_to_real(std::move(spec));
}

namespace {

struct OffsetEntry {
  long mx, my;
  double k;
};

// Shared offset enumeration for both convolution paths and the kernel sum.
// The loop order is fixed, so accumulations are bit-reproducible. Kernel
// values of opposite offsets are exact negations for the directional form.
template <class Fn>
void for_each_offset(const GridSpec& g, double r_in, double r_out, Fn&& fn) {
  const double h = g.spacing();
  const double lo = r_in - 1e-9 * h;
  const double hi = r_out + 1e-9 * h;
  const long reach = static_cast<long>(std::floor(hi / h));
  if (g.dim() == 1) {
    for (long m = -reach; m <= reach; ++m) {
      const double z = static_cast<double>(m) * h;
      const double r = std::abs(z);
      if (r < lo || r > hi) continue;
      fn(m, 0L, z, 0.0, r);
    }
    return;
  }
  for (long my = -reach; my <= reach; ++my) {
    for (long mx = -reach; mx <= reach; ++mx) {
      const double zx = static_cast<double>(mx) * h;
      const double zy = static_cast<double>(my) * h;
      const double r = std::sqrt(zx * zx + zy * zy);
      if (r < lo || r > hi) continue;
      fn(mx, my, zx, zy, r);
    }
  }
}

std::vector<OffsetEntry> collect_offsets(const GridSpec& g, double r_in, double r_out,
                                         KernelForm form, int component, double p) {
  std::vector<OffsetEntry> out;
  for_each_offset(g, r_in, r_out, [&](long mx, long my, double zx, double zy, double r) {
    const double rp = std::pow(r, p);
    const double k = form == KernelForm::radial ? rp : (component == 0 ? zx : zy) * rp;
    out.push_back({mx, my, k});
  });
  return out;
}

}  // namespace

Eigen::ArrayXd annulus_convolution(const GridSpec& grid,
                                   const Eigen::Ref<const Eigen::ArrayXd>& u,
                                   double r_in, double r_out,
                                   KernelForm form, int component, double p,
                                   bool use_fft) {
  require(component >= 0 && component < grid.dim(), "annulus_convolution: bad component");
  const auto offsets = collect_offsets(grid, r_in, r_out, form, component, p);
  const Eigen::Index n = grid.points_per_axis();
  if (!use_fft) {
    Eigen::ArrayXd out(grid.node_count());
    if (grid.dim() == 1) {
      parallel_for_chunks(n, [&](Eigen::Index begin, Eigen::Index end) {
        for (Eigen::Index i = begin; i < end; ++i) {
          double acc = 0.0;
          for (const auto& o : offsets) {
            const Eigen::Index j = i + o.mx;
            if (j >= 0 && j < n) acc += o.k * u(j);
          }
          out(i) = acc;
        }
      });
    } else {
      parallel_for_chunks(n, [&](Eigen::Index begin, Eigen::Index end) {
        for (Eigen::Index iy = begin; iy < end; ++iy) {
          for (Eigen::Index ix = 0; ix < n; ++ix) {
            double acc = 0.0;
            for (const auto& o : offsets) {
              const Eigen::Index jx = ix + o.mx;
              const Eigen::Index jy = iy + o.my;
              if (jx >= 0 && jx < n && jy >= 0 && jy < n) acc += o.k * u(jy * n + jx);
            }
            out(iy * n + ix) = acc;
          }
        }
      });
    }
    return out;
  }
  // Padding to twice the axis length makes the circular convolution exact:
  // node differences stay in (-n, n) and the kernel reach is at most n/2.
  const Eigen::Index pad = 2 * n;
  if (grid.dim() == 1) {
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(pad);
    for (const auto& o : offsets) w(((-o.mx) % pad + pad) % pad) = o.k;
    Eigen::VectorXcd up = Eigen::VectorXcd::Zero(pad);
    up.head(n).real() = u.matrix();
    Eigen::VectorXcd wf = dft_complex_1d(w, false);
    Eigen::VectorXcd uf = dft_complex_1d(up, false);
    uf.array() *= wf.array();
    const Eigen::VectorXcd conv = dft_complex_1d(uf, true);
    return conv.head(n).real().array();
  }
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(pad, pad);
  for (const auto& o : offsets) w(((-o.mx) % pad + pad) % pad, ((-o.my) % pad + pad) % pad) = o.k;
  Eigen::MatrixXcd up = Eigen::MatrixXcd::Zero(pad, pad);
  up.block(0, 0, n, n).real() = Eigen::Map<const Eigen::MatrixXd>(u.data(), n, n);
  dft_2d_inplace(w, false);
  dft_2d_inplace(up, false);
  up.array() *= w.array();
  dft_2d_inplace(up, true);
  Eigen::ArrayXd out(grid.node_count());
  Eigen::Map<Eigen::MatrixXd>(out.data(), n, n) = up.block(0, 0, n, n).real();
  return out;
}

double annulus_kernel_sum(const GridSpec& grid, double r_in, double r_out, double p) {
  double acc = 0.0;
  for_each_offset(grid, r_in, r_out,
                  [&](long, long, double, double, double r) { acc += std::pow(r, p); });
  return acc;
}

Eigen::ArrayXd fd_axis_derivative(const GridSpec& grid,
                                  const Eigen::Ref<const Eigen::ArrayXd>& u, int axis) {
  const Eigen::Index n = grid.points_per_axis();
  const double inv2h = 0.5 / grid.spacing();
  Eigen::ArrayXd out(grid.node_count());
  if (grid.dim() == 1) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double up = i + 1 < n ? u(i + 1) : 0.0;
      const double dn = i > 0 ? u(i - 1) : 0.0;
      out(i) = (up - dn) * inv2h;
    }
    return out;
  }
  for (Eigen::Index iy = 0; iy < n; ++iy) {
    for (Eigen::Index ix = 0; ix < n; ++ix) {
      double up = 0.0, dn = 0.0;
      if (axis == 0) {
        if (ix + 1 < n) up = u(iy * n + ix + 1);
        if (ix > 0) dn = u(iy * n + ix - 1);
      } else {
        if (iy + 1 < n) up = u((iy + 1) * n + ix);
        if (iy > 0) dn = u((iy - 1) * n + ix);
      }
      out(iy * n + ix) = (up - dn) * inv2h;
    }
  }
  return out;
}

Eigen::ArrayXd fd_axis_second(const GridSpec& grid,
                              const Eigen::Ref<const Eigen::ArrayXd>& u, int axis) {
  const Eigen::Index n = grid.points_per_axis();
  const double invh2 = 1.0 / (grid.spacing() * grid.spacing());
  Eigen::ArrayXd out(grid.node_count());
  if (grid.dim() == 1) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double up = i + 1 < n ? u(i + 1) : 0.0;
      const double dn = i > 0 ? u(i - 1) : 0.0;
      out(i) = (up - 2.0 * u(i) + dn) * invh2;
    }
    return out;
  }
  for (Eigen::Index iy = 0; iy < n; ++iy) {
    for (Eigen::Index ix = 0; ix < n; ++ix) {
      double up = 0.0, dn = 0.0;
      if (axis == 0) {
        if (ix + 1 < n) up = u(iy * n + ix + 1);
        if (ix > 0) dn = u(iy * n + ix - 1);
      } else {
        if (iy + 1 < n) up = u((iy + 1) * n + ix);
        if (iy > 0) dn = u((iy - 1) * n + ix);
      }
      out(iy * n + ix) = (up - 2.0 * u(iy * n + ix) + dn) * invh2;
    }
  }
  return out;
}

Eigen::ArrayXd fd_cross_second(const GridSpec& grid,
                               const Eigen::Ref<const Eigen::ArrayXd>& u) {
  require(grid.dim() == 2, "fd_cross_second: dim 2 only");
  const Eigen::Index n = grid.points_per_axis();
  const double inv4h2 = 0.25 / (grid.spacing() * grid.spacing());
  Eigen::ArrayXd out(grid.node_count());
  const auto at = [&](Eigen::Index ix, Eigen::Index iy) -> double {
    if (ix < 0 || ix >= n || iy < 0 || iy >= n) return 0.0;
    return u(iy * n + ix);
  };
  for (Eigen::Index iy = 0; iy < n; ++iy) {
    for (Eigen::Index ix = 0; ix < n; ++ix) {
      out(iy * n + ix) =
          (at(ix + 1, iy + 1) + at(ix - 1, iy - 1) - at(ix + 1, iy - 1) - at(ix - 1, iy + 1)) *
          inv4h2;
    }
  }
  return out;
}

}  // namespace detail

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

using detail::KernelForm;

// mu * (h^dim * annulus part + inner-cell moment against the local slope).
// Shared by gradient and divergence so the pair stays exactly skew-adjoint.
Eigen::ArrayXd quad_directional_term(const GridSpec& g,
                                     const Eigen::Ref<const Eigen::ArrayXd>& arr, int axis,
                                     const FracParams& params) {
  const double alpha = params.alpha;
  const double r_in = params.inner_radius(g);
  const double r_out = params.outer_radius(g);
  const double mu = frac_constants(g.dim(), alpha).mu;
  const double c1 = (g.dim() == 1 ? 2.0 : kPi) * std::pow(r_in, 1.0 - alpha) / (1.0 - alpha);
  const double p = -(g.dim() + alpha + 1.0);
  return mu * (g.cell_volume() * detail::annulus_convolution(g, arr, r_in, r_out,
                                                             KernelForm::directional, axis, p, true)
               + c1 * detail::fd_axis_derivative(g, arr, axis));
}

Eigen::ArrayXXd quad_gradient_scalar(const GridSpec& g,
                                     const Eigen::Ref<const Eigen::ArrayXd>& arr,
                                     const FracParams& params) {
  Eigen::ArrayXXd out(g.dim(), g.node_count());
  for (int axis = 0; axis < g.dim(); ++axis) {
    out.row(axis) = quad_directional_term(g, arr, axis, params).transpose();
  }
  return out;
}

// Packs per-component gradients into the output rank expected for scalar or
// vector input.
template <class GradFn>
Field gradient_like(const Field& u, GradFn&& grad_of_component) {
  require(u.rank() != Rank::matrix, "gradient: input rank must be scalar or vector");
  const GridSpec& g = u.grid();
  const int dim = g.dim();
  Field out = Field::zeros(g, u.rank() == Rank::scalar ? Rank::vector : Rank::matrix);
  for (Eigen::Index c = 0; c < u.components(); ++c) {
    const Eigen::ArrayXd comp = u.values().row(c).transpose();
    const Eigen::ArrayXXd grad = grad_of_component(comp);
    for (int j = 0; j < dim; ++j) {
      out.values().row(u.rank() == Rank::scalar ? j : c * dim + j) = grad.row(j);
    }
  }
  return out;
}

}  // namespace

Field riesz_potential(const Field& u, double alpha, const OperatorBackend& backend) {
  const GridSpec& g = u.grid();
  require(u.rank() == Rank::scalar, "riesz_potential: input must be scalar");
  require(alpha > 0.0 && alpha < g.dim(), "riesz_potential: order must lie in (0, dim)");
  const Eigen::ArrayXd comp = u.values().row(0).transpose();
  Eigen::ArrayXd res;
  if (backend.kind == BackendKind::spectral) {
    res = detail::apply_radial_multiplier(g, comp, -alpha);
  } else {
    // The order is the explicit argument, not backend.params.alpha, so only
    // the radii are validated here.
    const double r_in = backend.params.inner_radius(g);
    const double r_out = backend.params.outer_radius(g);
    require(r_in >= g.spacing() && r_out <= g.box_halfwidth() && r_in < r_out,
            "riesz_potential: invalid quadrature radii");
    const double gam = std::pow(kPi, 0.5 * g.dim()) * std::pow(2.0, alpha) *
                       gamma_fn(0.5 * alpha) / gamma_fn(0.5 * (g.dim() - alpha));
    const double v_in = (g.dim() == 1 ? 2.0 : kTwoPi) * std::pow(r_in, alpha) / alpha;
    res = (g.cell_volume() * detail::annulus_convolution(g, comp, r_in, r_out,
                                                         KernelForm::radial, 0, alpha - g.dim(), true)
           + v_in * comp) /
          gam;
  }
  Field out = Field::zeros(g, Rank::scalar);
  out.values().row(0) = res.transpose();
  return out;
}

Field frac_gradient(const Field& u, const OperatorBackend& backend) {
  const GridSpec& g = u.grid();
  backend.params.validate(g);
  if (backend.kind == BackendKind::spectral) {
    const detail::SpectralPlan plan(g, backend.params.alpha);
    return gradient_like(u, [&](const Eigen::ArrayXd& comp) { return plan.gradient(comp); });
  }
  return gradient_like(
      u, [&](const Eigen::ArrayXd& comp) { return quad_gradient_scalar(g, comp, backend.params); });
}

Field frac_divergence(const Field& p, const OperatorBackend& backend) {
  const GridSpec& g = p.grid();
  backend.params.validate(g);
  require(p.rank() == Rank::vector, "frac_divergence: input must be a vector field");
  Eigen::ArrayXd div;
  if (backend.kind == BackendKind::spectral) {
    div = detail::SpectralPlan(g, backend.params.alpha).divergence(p.values());
  } else {
    div = Eigen::ArrayXd::Zero(g.node_count());
    for (int axis = 0; axis < g.dim(); ++axis) {
      const Eigen::ArrayXd comp = p.values().row(axis).transpose();
      div += quad_directional_term(g, comp, axis, backend.params);
    }
  }
  Field out = Field::zeros(g, Rank::scalar);
  out.values().row(0) = div.transpose();
  return out;
}

Field frac_laplacian(const Field& u, double s, const OperatorBackend& backend) {
  const GridSpec& g = u.grid();
  require(u.rank() == Rank::scalar, "frac_laplacian: input must be scalar");
  require(s > 0.0 && s < 1.0, "frac_laplacian: order parameter must lie in (0, 1)");
  const Eigen::ArrayXd comp = u.values().row(0).transpose();
  Eigen::ArrayXd res;
  if (backend.kind == BackendKind::spectral) {
    res = detail::apply_radial_multiplier(g, comp, 2.0 * s);
  } else {
    const double order = 2.0 * s;
    const double r_in = backend.params.inner_radius(g);
    const double r_out = backend.params.outer_radius(g);
    require(r_in >= g.spacing() && r_out <= g.box_halfwidth() && r_in < r_out,
            "frac_laplacian: invalid quadrature radii");
    const double nu = detail::nu_of_order(g.dim(), order);
    const double p = -(g.dim() + order);
    const double kernel_sum = detail::annulus_kernel_sum(g, r_in, r_out, p);
    const double c2 = g.dim() == 1
                          ? std::pow(r_in, 2.0 - order) / (2.0 - order)
                          : kPi * std::pow(r_in, 2.0 - order) / (2.0 * (2.0 - order));
    // Beyond r_out the field is identically zero under the zero-extension
    // model, so the increment integral there reduces to -u(x) against the
    // analytic kernel tail. Unlike the odd gradient kernel this does not
    // cancel by symmetry and must be kept.
    const double tail = (g.dim() == 1 ? 2.0 : kTwoPi) * std::pow(r_out, -order) / order;
    const Eigen::ArrayXd conv = detail::annulus_convolution(g, comp, r_in, r_out,
                                                            KernelForm::radial, 0, p, true);
    Eigen::ArrayXd second = detail::fd_axis_second(g, comp, 0);
    if (g.dim() == 2) second += detail::fd_axis_second(g, comp, 1);
    res = nu * (g.cell_volume() * (conv - comp * kernel_sum) + c2 * second - comp * tail);
  }
  Field out = Field::zeros(g, Rank::scalar);
  out.values().row(0) = res.transpose();
  return out;
}

Field classical_gradient(const Field& u) {
  const detail::SpectralPlan plan(u.grid(), 1.0);
  return gradient_like(u, [&](const Eigen::ArrayXd& comp) { return plan.gradient(comp); });
}

Field fd_gradient(const Field& u) {
  const GridSpec& g = u.grid();
  return gradient_like(u, [&](const Eigen::ArrayXd& comp) {
    Eigen::ArrayXXd grad(g.dim(), g.node_count());
    for (int axis = 0; axis < g.dim(); ++axis) {
      grad.row(axis) = detail::fd_axis_derivative(g, comp, axis).transpose();
    }
    return grad;
  });
}

Field conservative_frac_gradient(const Field& u, const OperatorBackend& backend) {
  const GridSpec& g = u.grid();
  backend.params.validate(g);
  require(u.rank() == Rank::scalar, "conservative_frac_gradient: input must be scalar");
  const Field w = riesz_potential(u, 1.0 - backend.params.alpha, backend);
  const Eigen::ArrayXd comp = w.values().row(0).transpose();
  // Periodic centered difference: the potential inherits the box topology,
  // and a zero-extension stencil would spike against its tail at the seam.
  const Eigen::Index n = g.points_per_axis();
  const double inv2h = 0.5 / g.spacing();
  Field out = Field::zeros(g, Rank::vector);
  if (g.dim() == 1) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index up = i + 1 < n ? i + 1 : 0;
      const Eigen::Index dn = i > 0 ? i - 1 : n - 1;
      out.values()(0, i) = (comp(up) - comp(dn)) * inv2h;
    }
    return out;
  }
  for (Eigen::Index iy = 0; iy < n; ++iy) {
    const Eigen::Index yup = iy + 1 < n ? iy + 1 : 0;
    const Eigen::Index ydn = iy > 0 ? iy - 1 : n - 1;
    for (Eigen::Index ix = 0; ix < n; ++ix) {
      const Eigen::Index xup = ix + 1 < n ? ix + 1 : 0;
      const Eigen::Index xdn = ix > 0 ? ix - 1 : n - 1;
      const Eigen::Index i = g.index2(ix, iy);
      out.values()(0, i) = (comp(g.index2(xup, iy)) - comp(g.index2(xdn, iy))) * inv2h;
      out.values()(1, i) = (comp(g.index2(ix, yup)) - comp(g.index2(ix, ydn))) * inv2h;
    }
  }
  return out;
}

Field leibniz_remainder(const Field& u, const Field& psi, const OperatorBackend& backend) {
  const GridSpec& g = u.grid();
  require(psi.grid() == g, "leibniz_remainder: grid mismatch");
  require(u.rank() == Rank::scalar && psi.rank() == Rank::scalar,
          "leibniz_remainder: inputs must be scalar");
  backend.params.validate(g);
  const Eigen::Index n = g.points_per_axis();
  bool boundary_clear = true;
  if (g.dim() == 1) {
    boundary_clear = psi(0, 0) == 0.0 && psi(0, n - 1) == 0.0;
  } else {
    for (Eigen::Index i = 0; i < n && boundary_clear; ++i) {
      boundary_clear = psi(0, i) == 0.0 && psi(0, (n - 1) * n + i) == 0.0 &&
                       psi(0, i * n) == 0.0 && psi(0, i * n + n - 1) == 0.0;
    }
  }
  require(boundary_clear, "leibniz_remainder: psi support touches the box boundary");

  const double alpha = backend.params.alpha;
  const double r_in = backend.params.inner_radius(g);
  const double r_out = backend.params.outer_radius(g);
  const double mu = frac_constants(g.dim(), alpha).mu;
  const double hd = g.cell_volume();
  const double p = -(g.dim() + alpha + 1.0);
  const Eigen::ArrayXd ua = u.values().row(0).transpose();
  const Eigen::ArrayXd pa = psi.values().row(0).transpose();
  const Eigen::ArrayXd upa = ua * pa;

  Field out = Field::zeros(g, Rank::vector);
  const auto conv = [&](const Eigen::ArrayXd& arr, int axis) {
    return detail::annulus_convolution(g, arr, r_in, r_out, KernelForm::directional, axis, p, true);
  };
  if (g.dim() == 1) {
    const Eigen::ArrayXd du = detail::fd_axis_derivative(g, ua, 0);
    const Eigen::ArrayXd dpsi = detail::fd_axis_derivative(g, pa, 0);
    const Eigen::ArrayXd ddu = detail::fd_axis_second(g, ua, 0);
    const Eigen::ArrayXd ddpsi = detail::fd_axis_second(g, pa, 0);
    const double t_coef = std::pow(r_in, 3.0 - alpha) / (3.0 - alpha);
    const Eigen::ArrayXd inner = (du * ddpsi + ddu * dpsi) * t_coef;
    out.values().row(0) =
        (mu * (hd * (conv(upa, 0) - pa * conv(ua, 0) - ua * conv(pa, 0)) + inner)).transpose();
    return out;
  }
  const Eigen::ArrayXd gu0 = detail::fd_axis_derivative(g, ua, 0);
  const Eigen::ArrayXd gu1 = detail::fd_axis_derivative(g, ua, 1);
  const Eigen::ArrayXd gp0 = detail::fd_axis_derivative(g, pa, 0);
  const Eigen::ArrayXd gp1 = detail::fd_axis_derivative(g, pa, 1);
  const Eigen::ArrayXd hu_xx = detail::fd_axis_second(g, ua, 0);
  const Eigen::ArrayXd hu_yy = detail::fd_axis_second(g, ua, 1);
  const Eigen::ArrayXd hu_xy = detail::fd_cross_second(g, ua);
  const Eigen::ArrayXd hp_xx = detail::fd_axis_second(g, pa, 0);
  const Eigen::ArrayXd hp_yy = detail::fd_axis_second(g, pa, 1);
  const Eigen::ArrayXd hp_xy = detail::fd_cross_second(g, pa);
  const Eigen::ArrayXd tr_hu = hu_xx + hu_yy;
  const Eigen::ArrayXd tr_hp = hp_xx + hp_yy;
  const double coef = kPi * std::pow(r_in, 3.0 - alpha) / (8.0 * (3.0 - alpha));
  const Eigen::ArrayXd inner0 = coef * (gu0 * tr_hp + 2.0 * (hp_xx * gu0 + hp_xy * gu1) +
                                        gp0 * tr_hu + 2.0 * (hu_xx * gp0 + hu_xy * gp1));
  const Eigen::ArrayXd inner1 = coef * (gu1 * tr_hp + 2.0 * (hp_xy * gu0 + hp_yy * gu1) +
                                        gp1 * tr_hu + 2.0 * (hu_xy * gp0 + hu_yy * gp1));
  for (int axis = 0; axis < 2; ++axis) {
    const Eigen::ArrayXd main = hd * (conv(upa, axis) - pa * conv(ua, axis) - ua * conv(pa, axis));
    out.values().row(axis) = (mu * (main + (axis == 0 ? inner0 : inner1))).transpose();
  }
  return out;
}

double adjoint_check(const GridSpec& grid, const OperatorBackend& backend, int trials,
                     std::uint64_t seed) {
  require(trials >= 1, "adjoint_check: trials must be >= 1");
  backend.params.validate(grid);
  std::mt19937_64 gen(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed_u = gen();
    const std::uint64_t seed_p = gen();
    const Field u = detail::random_smooth_field(grid, Rank::scalar, seed_u);
    const Field p = detail::random_smooth_field(grid, Rank::vector, seed_p);
    const Field gu = frac_gradient(u, backend);
    const Field dp = frac_divergence(p, backend);
    const double paired = (gu.values() * p.values()).sum() + (u.values() * dp.values()).sum();
    const double norm_u = std::sqrt((u.values() * u.values()).sum());
    const double norm_p = std::sqrt((p.values() * p.values()).sum());
    const double denom = std::max(norm_u * norm_p, 1e-300);
    worst = std::max(worst, std::abs(paired) / denom);
  }
  return worst;
}

namespace detail {

Field random_smooth_field(const GridSpec& grid, Rank rank, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Field f = Field::zeros(grid, rank);
  const Eigen::Index n = grid.points_per_axis();
  const Eigen::Index cut = std::max<Eigen::Index>(1, n / 8);
  const auto keep = [&](Eigen::Index k) {
    const Eigen::Index ks = 2 * k <= n ? k : k - n;
    return std::abs(ks) <= cut && !is_nyquist(k, n);
  };
  for (Eigen::Index c = 0; c < f.components(); ++c) {
    Eigen::ArrayXd raw(grid.node_count());
    for (Eigen::Index i = 0; i < raw.size(); ++i) raw(i) = uniform_sym(gen);
    if (grid.dim() == 1) {
      Eigen::VectorXcd spec = dft_1d(raw);
      spec(0) = 0.0;
      for (Eigen::Index k = 1; k < n; ++k) {
        if (!keep(k)) spec(k) = 0.0;
      }
      raw = idft_1d_real(spec);
    } else {
      Eigen::MatrixXcd spec = dft_2d_from_real(raw, n);
      spec(0, 0) = 0.0;
      for (Eigen::Index ky = 0; ky < n; ++ky) {
        for (Eigen::Index kx = 0; kx < n; ++kx) {
          if (!keep(kx) || !keep(ky)) spec(kx, ky) = 0.0;
        }
      }
      raw = idft_2d_to_real(std::move(spec));
    }
    const double peak = raw.abs().maxCoeff();
    if (peak > 0.0) raw /= peak;
    f.values().row(c) = raw.transpose();
  }
  return f;
}

}  // namespace detail

}  // namespace fracvar
