// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#include "fracvar/cli.hpp"

#include <cstdio>

namespace fracvar::cli {

int run(const RunConfig&) { return 2; }

int main(int, char**) {
  std::fprintf(stderr, "not implemented\n");
  return 2;
}

}  // namespace fracvar::cli
