// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_DETAIL_RNG_HPP
#define FRACVAR_DETAIL_RNG_HPP

#include <cstdint>
#include <random>

namespace fracvar::detail {

// All randomness flows through mt19937_64 plus these maps; distributions from
// <random> are avoided because their draw sequences vary across library
// implementations.
inline double uniform_unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline double uniform_sym(std::mt19937_64& gen) { return 2.0 * uniform_unit(gen) - 1.0; }

inline double uniform_in(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(gen);
}

}  // namespace fracvar::detail

#endif
