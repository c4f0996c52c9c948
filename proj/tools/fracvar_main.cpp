// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#include <cstdio>

#include "fracvar/cli.hpp"

int main(int argc, char** argv) { return fracvar::cli::main(argc, argv); }
