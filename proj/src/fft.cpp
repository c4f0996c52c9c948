// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#include "fracvar/detail/fft.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace fracvar::detail {

int thread_count() {
  static const int count = [] {
    if (const char* env = std::getenv("FRACVAR_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v >= 1) return static_cast<int>(std::min(v, 64L));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 8u));
  }();
  return count;
}

void parallel_for_chunks(Eigen::Index total,
                         const std::function<void(Eigen::Index, Eigen::Index)>& fn) {
  const Eigen::Index workers = std::min<Eigen::Index>(thread_count(), std::max<Eigen::Index>(total, 1));
  if (workers <= 1 || total < 2) {
    fn(0, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  const Eigen::Index chunk = (total + workers - 1) / workers;
  for (Eigen::Index w = 0; w < workers; ++w) {
    const Eigen::Index begin = w * chunk;
    const Eigen::Index end = std::min(begin + chunk, total);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

namespace {

// One cached FFT object per thread; kissfft twiddle tables are reused across
// calls of the same length.
Eigen::FFT<double>& local_fft() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

}  // namespace

Eigen::VectorXcd dft_1d(const Eigen::Ref<const Eigen::ArrayXd>& in) {
  const Eigen::Index n = in.size();
  Eigen::VectorXcd src(n);
  src.real() = in.matrix();
  src.imag().setZero();
  Eigen::VectorXcd out(n);
  local_fft().fwd(out.data(), src.data(), n);
  return out;
}

Eigen::ArrayXd idft_1d_real(const Eigen::VectorXcd& in) {
  Eigen::VectorXcd out(in.size());
  local_fft().inv(out.data(), in.data(), in.size());
  return out.real().array();
}

Eigen::VectorXcd dft_complex_1d(const Eigen::VectorXcd& in, bool inverse) {
  Eigen::VectorXcd out(in.size());
  if (inverse) {
    local_fft().inv(out.data(), in.data(), in.size());
  } else {
    local_fft().fwd(out.data(), in.data(), in.size());
  }
  return out;
}

void dft_2d_inplace(Eigen::MatrixXcd& a, bool inverse) {
  const Eigen::Index n = a.rows();
  const auto pass = [&a, n, inverse](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index j = begin; j < end; ++j) {
      Eigen::VectorXcd col = a.col(j);
      if (inverse) {
        local_fft().inv(a.col(j).data(), col.data(), n);
      } else {
        local_fft().fwd(a.col(j).data(), col.data(), n);
      }
    }
  };
  parallel_for_chunks(a.cols(), pass);
  a.transposeInPlace();
  parallel_for_chunks(a.cols(), pass);
  a.transposeInPlace();
}

Eigen::MatrixXcd dft_2d_from_real(const Eigen::Ref<const Eigen::ArrayXd>& nodes, Eigen::Index n) {
  Eigen::MatrixXcd a(n, n);
  a.real() = Eigen::Map<const Eigen::MatrixXd>(nodes.data(), n, n);
  a.imag().setZero();
  dft_2d_inplace(a, false);
  return a;
}

Eigen::ArrayXd idft_2d_to_real(Eigen::MatrixXcd spectrum) {
  dft_2d_inplace(spectrum, true);
  const Eigen::Index n = spectrum.rows();
  Eigen::ArrayXd out(n * n);
  Eigen::Map<Eigen::MatrixXd>(out.data(), n, n) = spectrum.real();
  return out;
}

}  // namespace fracvar::detail
