// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_DETAIL_REDUCE_HPP
#define FRACVAR_DETAIL_REDUCE_HPP

#include <Eigen/Dense>

namespace fracvar::detail {

// Pairwise sum with a reduction tree fixed by the length, so the result does
// not depend on threading or on Eigen's vectorization width.
inline double pairwise_sum(const double* v, Eigen::Index n) {
  if (n <= 16) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const Eigen::Index half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

inline double pairwise_sum(const Eigen::Ref<const Eigen::ArrayXd>& v) {
  return pairwise_sum(v.data(), v.size());
}

}  // namespace fracvar::detail

#endif
