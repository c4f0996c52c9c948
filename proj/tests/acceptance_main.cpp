// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#include <cstdio>

int main() {
  std::printf("FAIL acceptance harness not implemented yet\n");
  return 1;
}
