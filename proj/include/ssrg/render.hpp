#pragma once

#include <algorithm>
#include <cmath>

#include "ssrg/boundary.hpp"
#include "ssrg/image.hpp"
#include "ssrg/seeding.hpp"
#include "ssrg/ser_grid.hpp"

namespace ssrg {

inline constexpr Rgb8 kBoundaryColor{255, 0, 0};

// Copies the base image and paints pixels whose 4-neighbor carries a
// different label.
inline RgbImage render_boundary_overlay(const RgbImage& base,
                                        const LabelMap& labels,
                                        Rgb8 color = kBoundaryColor) {
  RgbImage out = base;
  for (int y = 0; y < labels.height(); ++y) {
    for (int x = 0; x < labels.width(); ++x) {
      const std::int32_t l = labels.at(x, y);
      const bool boundary =
          (x > 0 && labels.at(x - 1, y) != l) ||
          (x + 1 < labels.width() && labels.at(x + 1, y) != l) ||
          (y > 0 && labels.at(x, y - 1) != l) ||
          (y + 1 < labels.height() && labels.at(x, y + 1) != l);
      if (boundary) out.at(x, y) = color;
    }
  }
  return out;
}

inline LabelMap rasterize_grid_labels(const SerGrid& grid) {
  LabelMap labels(grid.image_width(), grid.image_height(), kUnlabeled);
  for (int i = 0; i < grid.cell_count(); ++i) {
    const SerCell& cell = grid.cell(i);
    for (int y = cell.y0; y < cell.y0 + cell.h; ++y)
      for (int x = cell.x0; x < cell.x0 + cell.w; ++x)
        labels.at(x, y) = cell.label;
  }
  return labels;
}

// Seed SERs in red over the per-SER mean EG rendered as grayscale.
inline RgbImage render_seed_overlay(const SerGrid& grid,
                                    const SeedLabeling& seeds) {
  double eg_max = 0.0;
  for (int i = 0; i < grid.cell_count(); ++i)
    eg_max = std::max(eg_max, grid.cell(i).eg_mean);
  RgbImage out(grid.image_width(), grid.image_height());
  for (int i = 0; i < grid.cell_count(); ++i) {
    const SerCell& cell = grid.cell(i);
    Rgb8 color = kBoundaryColor;
    if (!seeds.is_seed[i]) {
      const double v = eg_max > 0.0 ? cell.eg_mean / eg_max * 255.0 : 0.0;
      const auto g = static_cast<std::uint8_t>(std::lround(v));
      color = {g, g, g};
    }
    for (int y = cell.y0; y < cell.y0 + cell.h; ++y)
      for (int x = cell.x0; x < cell.x0 + cell.w; ++x) out.at(x, y) = color;
  }
  return out;
}

}  // namespace ssrg
