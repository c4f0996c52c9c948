// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_IO_HPP
#define FRACVAR_IO_HPP

#include <string>
#include <vector>

#include "fracvar/field.hpp"

namespace fracvar {

// CSV format: header line
//   # fracvar-field dim=<d> n=<N> h=<spacing> rank=<r>
// followed by one node per row: index coordinates, then components, printed
// at 17 significant digits (bit round-trip). Extra '#' comment lines after
// the header are ignored by the reader; writers may use them for provenance.
void write_field_csv(const Field& field, const std::string& path,
                     const std::vector<std::string>& comments = {});

Field read_field_csv(const std::string& path);

// 8-bit binary PGM, min-max normalized; dim-2 scalar fields only.
// Visualization output, not a round-trip format.
void write_field_pgm(const Field& field, const std::string& path);

}  // namespace fracvar

#endif
