#pragma once

#include <cassert>
#include <limits>
#include <span>
#include <vector>

#include "ssrg/color.hpp"
#include "ssrg/growing.hpp"
#include "ssrg/ser_grid.hpp"

namespace ssrg {

struct RefineParams {
  double lambda2 = 2.0;  // weight of the pixel gradient term in PRD
  int passes = 2;        // M_P
};

struct Segmentation {
  LabelMap labels;
  int region_count = 0;
};

// Expands SER labels to their member pixels.
inline Segmentation rasterize_labels(const SerGrid& grid, int region_count) {
  Segmentation seg;
  seg.labels = LabelMap(grid.image_width(), grid.image_height(), kUnlabeled);
  seg.region_count = region_count;
  for (int i = 0; i < grid.cell_count(); ++i) {
    const SerCell& cell = grid.cell(i);
    for (int y = cell.y0; y < cell.y0 + cell.h; ++y)
      for (int x = cell.x0; x < cell.x0 + cell.w; ++x)
        seg.labels.at(x, y) = cell.label;
  }
  return seg;
}

// PRD = CD(pixel, region mean) + lambda2 * mean CD(pixel, adjacent pixel).
inline double pixel_region_distance(const Lab& pixel, const RegionState& region,
                                    std::span<const Lab> adjacent_pixels,
                                    double lambda2) {
  if (adjacent_pixels.empty())
    throw std::invalid_argument("pixel_region_distance: no adjacent pixels");
  double gp = 0.0;
  for (const Lab& p : adjacent_pixels) gp += color_distance(pixel, p);
  gp /= static_cast<double>(adjacent_pixels.size());
  return color_distance(pixel, region.mean()) + lambda2 * gp;
}

// Per-region pixel-weighted color sums over a label map.
inline std::vector<RegionState> region_states_from_labels(const LabelMap& labels,
                                                          const LabImage& lab,
                                                          int region_count) {
  std::vector<RegionState> states(region_count + 1);
  for (int y = 0; y < labels.height(); ++y) {
    for (int x = 0; x < labels.width(); ++x) {
      const std::int32_t lbl = labels.at(x, y);
      if (lbl != kUnlabeled) states[lbl].add(lab.at(x, y), 1);
    }
  }
  return states;
}

namespace detail {

inline int pixel_neighbors(const LabelMap& labels, int x, int y, int out[4]) {
  int n = 0;
  if (x > 0) out[n++] = y * labels.width() + x - 1;
  if (x + 1 < labels.width()) out[n++] = y * labels.width() + x + 1;
  if (y > 0) out[n++] = (y - 1) * labels.width() + x;
  if (y + 1 < labels.height()) out[n++] = (y + 1) * labels.width() + x;
  return n;
}

}  // namespace detail

// One refinement pass: frees the current boundary pixels and reassigns them
// in ascending PRD order through the sorted-list state machine used for
// region growing. Region sums track the current membership: a freed pixel is
// subtracted and re-added on assignment.
inline void refine_pass(LabelMap& labels, const LabImage& lab,
                        std::vector<RegionState>& regions, double lambda2) {
  const int w = labels.width(), h = labels.height();
  auto& flat = labels.data();

  // Boundary pixels: at least one 4-neighbor with a different label.
  std::vector<int> freed;
  int nbrs[4];
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::int32_t lbl = labels.at(x, y);
      const int cnt = detail::pixel_neighbors(labels, x, y, nbrs);
      for (int k = 0; k < cnt; ++k) {
        if (flat[nbrs[k]] != lbl) {
          freed.push_back(y * w + x);
          break;
        }
      }
    }
  }
  for (int idx : freed) {
    const Lab& c = lab.data()[idx];
    RegionState& r = regions[flat[idx]];
    r.sum_l -= c.l;
    r.sum_a -= c.a;
    r.sum_b -= c.b;
    r.pixel_count -= 1;
    flat[idx] = kUnlabeled;
  }

  // Minimum PRD over the adjacent regions of each free pixel that already
  // touches a labeled pixel; the rest enter the list as labels spread.
  SortedCandidateList ssl(w * h);
  auto min_prd_to_labeled = [&](int idx, std::int32_t* out_region) {
    const int x = idx % w, y = idx / w;
    const Lab& pixel = lab.data()[idx];
    const int cnt = detail::pixel_neighbors(labels, x, y, nbrs);
    std::int32_t cand_labels[4];
    Lab cand_pixels[4][4];
    int cand_count[4] = {0, 0, 0, 0};
    int labels_found = 0;
    for (int k = 0; k < cnt; ++k) {
      const std::int32_t lbl = flat[nbrs[k]];
      if (lbl == kUnlabeled) continue;
      int slot = -1;
      for (int s = 0; s < labels_found; ++s)
        if (cand_labels[s] == lbl) slot = s;
      if (slot < 0) {
        slot = labels_found++;
        cand_labels[slot] = lbl;
      }
      cand_pixels[slot][cand_count[slot]++] = lab.data()[nbrs[k]];
    }
    double best = std::numeric_limits<double>::infinity();
    std::int32_t best_lbl = kUnlabeled;
    for (int s = 0; s < labels_found; ++s) {
      const double prd = pixel_region_distance(
          pixel, regions[cand_labels[s]],
          std::span<const Lab>(cand_pixels[s], cand_count[s]), lambda2);
      if (prd < best || (prd == best && cand_labels[s] < best_lbl)) {
        best = prd;
        best_lbl = cand_labels[s];
      }
    }
    *out_region = best_lbl;
    return best;
  };

  for (int idx : freed) {
    std::int32_t region = kUnlabeled;
    const double prd = min_prd_to_labeled(idx, &region);
    if (region != kUnlabeled) ssl.push(idx, prd, region);
  }

  while (!ssl.empty()) {
    const auto entry = ssl.pop();
    assert(flat[entry.cell] == kUnlabeled);
    std::int32_t region = kUnlabeled;
    min_prd_to_labeled(entry.cell, &region);
    assert(region != kUnlabeled);
    flat[entry.cell] = region;
    regions[region].add(lab.data()[entry.cell], 1);

    const int x = entry.cell % w, y = entry.cell / w;
    const int cnt = detail::pixel_neighbors(labels, x, y, nbrs);
    for (int k = 0; k < cnt; ++k) {
      const int nb = nbrs[k];
      if (flat[nb] != kUnlabeled || ssl.contains(nb)) continue;
      const Lab adj = lab.data()[entry.cell];
      const double prd = pixel_region_distance(
          lab.data()[nb], regions[region], std::span<const Lab>(&adj, 1),
          lambda2);
      ssl.push(nb, prd, region);
    }
  }
}

inline void refine_boundaries(Segmentation& seg, const LabImage& lab,
                              std::vector<RegionState>& regions,
                              const RefineParams& params = {}) {
  for (int pass = 0; pass < params.passes; ++pass)
    refine_pass(seg.labels, lab, regions, params.lambda2);
}

}  // namespace ssrg
