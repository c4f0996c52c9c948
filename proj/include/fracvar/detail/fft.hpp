// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_DETAIL_FFT_HPP
#define FRACVAR_DETAIL_FFT_HPP

#include <Eigen/Dense>
#include <functional>

namespace fracvar::detail {

// Worker count: FRACVAR_THREADS if set (>=1), else hardware concurrency
// capped at 8. Parallel loops write disjoint outputs only, so results do not
// depend on the count.
int thread_count();

// Runs fn(begin, end) over chunks of [0, total) on up to thread_count()
// threads; runs inline when a single worker suffices.
void parallel_for_chunks(Eigen::Index total,
                         const std::function<void(Eigen::Index, Eigen::Index)>& fn);

// Signed frequency of DFT bin k on an n-point axis with the given period;
// bin n/2 (even n) is the Nyquist bin and maps to +n/2.
inline double axis_freq(Eigen::Index k, Eigen::Index n, double period) {
  const Eigen::Index ks = 2 * k <= n ? k : k - n;
  return static_cast<double>(ks) / period;
}

inline bool is_nyquist(Eigen::Index k, Eigen::Index n) { return n % 2 == 0 && 2 * k == n; }

Eigen::VectorXcd dft_1d(const Eigen::Ref<const Eigen::ArrayXd>& in);
Eigen::ArrayXd idft_1d_real(const Eigen::VectorXcd& in);
Eigen::VectorXcd dft_complex_1d(const Eigen::VectorXcd& in, bool inverse);

// 2D transforms on square grids; matrix entry (ix, iy) corresponds to grid
// node iy*n + ix. Inverse includes the 1/n^2 scaling.
void dft_2d_inplace(Eigen::MatrixXcd& a, bool inverse);
Eigen::MatrixXcd dft_2d_from_real(const Eigen::Ref<const Eigen::ArrayXd>& nodes, Eigen::Index n);
Eigen::ArrayXd idft_2d_to_real(Eigen::MatrixXcd spectrum);

}  // namespace fracvar::detail

#endif
