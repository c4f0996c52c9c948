// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#include "fracvar/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

namespace fracvar {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_or_throw(const std::string& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  require(f != nullptr, "cannot open file: " + path);
  return f;
}

}  // namespace

void write_field_csv(const Field& field, const std::string& path,
                     const std::vector<std::string>& comments) {
  FilePtr f = open_or_throw(path, "w");
  const GridSpec& g = field.grid();
  std::fprintf(f.get(), "# fracvar-field dim=%d n=%" PRIdPTR " h=%.17g rank=%s\n",
               g.dim(), static_cast<intptr_t>(g.points_per_axis()), g.spacing(),
               rank_name(field.rank()));
  for (const auto& c : comments) std::fprintf(f.get(), "# %s\n", c.c_str());
  const Eigen::Index m = field.components();
  for (Eigen::Index node = 0; node < g.node_count(); ++node) {
    if (g.dim() == 1) {
      std::fprintf(f.get(), "%" PRIdPTR, static_cast<intptr_t>(node));
    } else {
      std::fprintf(f.get(), "%" PRIdPTR ",%" PRIdPTR,
                   static_cast<intptr_t>(node % g.points_per_axis()),
                   static_cast<intptr_t>(node / g.points_per_axis()));
    }
    for (Eigen::Index c = 0; c < m; ++c)
      std::fprintf(f.get(), ",%.17g", field.values()(c, node));
    std::fputc('\n', f.get());
  }
}

Field read_field_csv(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open file: " + path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "empty field file: " + path);

  int dim = 0;
  intptr_t n = 0;
  double h = 0.0;
  char rank_buf[16] = {0};
  const int got = std::sscanf(line.c_str(), "# fracvar-field dim=%d n=%" SCNdPTR " h=%lg rank=%15s",
                              &dim, &n, &h, rank_buf);
  require(got == 4, "bad field header: " + line);
  const GridSpec grid = GridSpec::with_spacing(dim, n, h, h * static_cast<double>(n) / 2.0);
  const Rank rank = rank_from_name(rank_buf);
  const Eigen::Index m = rank_components(rank, dim);

  Eigen::ArrayXXd values(m, grid.node_count());
  Eigen::Index rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    require(rows < grid.node_count(), "too many rows in field file: " + path);
    const char* p = line.c_str();
    char* end = nullptr;
    const intptr_t ix = std::strtoll(p, &end, 10);
    Eigen::Index node = ix;
    if (dim == 2) {
      require(*end == ',', "bad row in field file: " + line);
      p = end + 1;
      const intptr_t iy = std::strtoll(p, &end, 10);
      node = grid.index2(ix, iy);
    }
    for (Eigen::Index c = 0; c < m; ++c) {
      require(*end == ',', "bad row in field file: " + line);
      p = end + 1;
      values(c, node) = std::strtod(p, &end);
    }
    ++rows;
  }
  require(rows == grid.node_count(), "row count does not match grid in: " + path);
  return Field(grid, rank, std::move(values));
}

void write_field_pgm(const Field& field, const std::string& path) {
  require(field.grid().dim() == 2 && field.rank() == Rank::scalar,
          "write_field_pgm: dim-2 scalar fields only");
  const GridSpec& g = field.grid();
  const Eigen::Index n = g.points_per_axis();
  const double lo = field.values().minCoeff();
  const double hi = field.values().maxCoeff();
  const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;

  FilePtr f = open_or_throw(path, "wb");
  std::fprintf(f.get(), "P5\n%" PRIdPTR " %" PRIdPTR "\n255\n",
               static_cast<intptr_t>(n), static_cast<intptr_t>(n));
  std::vector<unsigned char> row(n);
  for (Eigen::Index iy = n - 1; iy >= 0; --iy) {  // top image row = largest y
    for (Eigen::Index ix = 0; ix < n; ++ix) {
      const double v = (field.values()(0, g.index2(ix, iy)) - lo) * scale;
      row[ix] = static_cast<unsigned char>(v + 0.5);
    }
    std::fwrite(row.data(), 1, row.size(), f.get());
  }
}

}  // namespace fracvar
