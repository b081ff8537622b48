#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ssrg/image.hpp"

namespace ssrg {

// One square elemental region. Cells on the right/bottom image edge may be
// partial; w/h hold the true pixel extent.
struct SerCell {
  int x0 = 0, y0 = 0;
  int w = 0, h = 0;
  Lab mean;
  double eg_mean = 0.0;
  std::int32_t label = kUnlabeled;

  long pixel_count() const { return static_cast<long>(w) * h; }
};

class SerGrid {
 public:
  SerGrid() = default;
  SerGrid(int image_width, int image_height, int side) : side_(side) {
    if (side < 1) throw std::invalid_argument("SerGrid: side must be >= 1");
    if (image_width < side || image_height < side)
      throw std::invalid_argument("SerGrid: image smaller than one SER");
    image_width_ = image_width;
    image_height_ = image_height;
    cols_ = (image_width + side - 1) / side;
    rows_ = (image_height + side - 1) / side;
    cells_.resize(static_cast<std::size_t>(cols_) * rows_);
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) {
        SerCell& cell = cells_[static_cast<std::size_t>(r) * cols_ + c];
        cell.x0 = c * side;
        cell.y0 = r * side;
        cell.w = std::min(side, image_width - cell.x0);
        cell.h = std::min(side, image_height - cell.y0);
      }
    }
  }

  int cols() const { return cols_; }
  int rows() const { return rows_; }
  int side() const { return side_; }
  int image_width() const { return image_width_; }
  int image_height() const { return image_height_; }
  int cell_count() const { return cols_ * rows_; }

  SerCell& cell(int c, int r) { return cells_[static_cast<std::size_t>(r) * cols_ + c]; }
  const SerCell& cell(int c, int r) const {
    return cells_[static_cast<std::size_t>(r) * cols_ + c];
  }
  SerCell& cell(int index) { return cells_[index]; }
  const SerCell& cell(int index) const { return cells_[index]; }

  // Up to four 4-neighbors of a cell, as flat indices.
  int neighbors(int index, int out[4]) const {
    const int c = index % cols_, r = index / cols_;
    int n = 0;
    if (c > 0) out[n++] = index - 1;
    if (c + 1 < cols_) out[n++] = index + 1;
    if (r > 0) out[n++] = index - cols_;
    if (r + 1 < rows_) out[n++] = index + cols_;
    return n;
  }

 private:
  int cols_ = 0, rows_ = 0, side_ = 0;
  int image_width_ = 0, image_height_ = 0;
  std::vector<SerCell> cells_;
};

inline SerGrid build_grid(int image_width, int image_height, int side = 4) {
  return SerGrid(image_width, image_height, side);
}

// Fills per-SER mean color and mean EG; returns the global mean EG over all
// pixels (EG_A).
inline double compute_ser_stats(SerGrid& grid, const LabImage& lab,
                                const ScalarField& eg) {
  if (lab.width() != grid.image_width() || lab.height() != grid.image_height() ||
      eg.width() != grid.image_width() || eg.height() != grid.image_height())
    throw std::invalid_argument("compute_ser_stats: dimension mismatch");

  double eg_total = 0.0;
  for (int i = 0; i < grid.cell_count(); ++i) {
    SerCell& cell = grid.cell(i);
    double sl = 0, sa = 0, sb = 0, se = 0;
    for (int y = cell.y0; y < cell.y0 + cell.h; ++y) {
      for (int x = cell.x0; x < cell.x0 + cell.w; ++x) {
        const Lab& c = lab.at(x, y);
        sl += c.l;
        sa += c.a;
        sb += c.b;
        se += eg.at(x, y);
      }
    }
    const double n = static_cast<double>(cell.pixel_count());
    cell.mean = {sl / n, sa / n, sb / n};
    cell.eg_mean = se / n;
    eg_total += se;
  }
  return eg_total / (static_cast<double>(grid.image_width()) * grid.image_height());
}

}  // namespace ssrg
