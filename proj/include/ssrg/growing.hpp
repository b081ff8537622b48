#pragma once

#include <cassert>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "ssrg/color.hpp"
#include "ssrg/seeding.hpp"
#include "ssrg/ser_grid.hpp"

namespace ssrg {

struct GrowParams {
  double omega = 5.0;    // weight of EG_a in the growth-control distance
  double lambda1 = 2.0;  // weight of G_S in the boundary-localization distance
};

// Running pixel-weighted color sums of a growing region.
struct RegionState {
  double sum_l = 0.0, sum_a = 0.0, sum_b = 0.0;
  long pixel_count = 0;

  Lab mean() const {
    const double n = static_cast<double>(pixel_count);
    return {sum_l / n, sum_a / n, sum_b / n};
  }
  void add(const Lab& mean_color, long pixels) {
    const double n = static_cast<double>(pixels);
    sum_l += mean_color.l * n;
    sum_a += mean_color.a * n;
    sum_b += mean_color.b * n;
    pixel_count += pixels;
  }
};

// GCD = CD(cell mean, region mean) + omega * EG_a of the cell.
inline double growth_control_distance(const SerCell& cell,
                                      const RegionState& region, double omega) {
  return color_distance(cell.mean, region.mean()) + omega * cell.eg_mean;
}

// BLD = CD(cell mean, region mean) + lambda1 * mean CD to the region's cells
// 4-adjacent to the candidate.
inline double boundary_localization_distance(
    const SerCell& cell, const RegionState& region,
    std::span<const SerCell* const> adjacent_cells, double lambda1) {
  if (adjacent_cells.empty())
    throw std::invalid_argument("boundary_localization_distance: no adjacent SERs");
  double gs = 0.0;
  for (const SerCell* adj : adjacent_cells)
    gs += color_distance(cell.mean, adj->mean);
  gs /= static_cast<double>(adjacent_cells.size());
  return color_distance(cell.mean, region.mean()) + lambda1 * gs;
}

// Candidate list ordered ascending by distance, ties broken by insertion
// sequence number. Each cell is inserted at most once; its key is never
// recomputed after insertion.
class SortedCandidateList {
 public:
  struct Entry {
    double key;
    long seq;
    int cell;
    std::int32_t region;
  };

  explicit SortedCandidateList(int cell_count) : stored_(cell_count, false) {}

  bool contains(int cell) const { return stored_[cell]; }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

  void push(int cell, double key, std::int32_t region) {
    assert(!stored_[cell]);
    stored_[cell] = true;
    heap_.push({key, next_seq_++, cell, region});
  }

  Entry pop() {
    Entry e = heap_.top();
    heap_.pop();
    return e;
  }

 private:
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.key != b.key) return a.key > b.key;
      return a.seq > b.seq;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
  std::vector<bool> stored_;
  long next_seq_ = 0;
};

// Grows the seed regions over all non-seed SERs in ascending GCD order,
// resolving contested cells by minimum BLD over the labeled neighbors at
// dequeue time. On return every cell of the grid is labeled. The returned
// vector is indexed by region label (slot 0 unused).
inline std::vector<RegionState> grow_regions(SerGrid& grid,
                                             const SeedLabeling& seeds,
                                             const GrowParams& params = {}) {
  const int n = grid.cell_count();
  std::vector<RegionState> regions(seeds.seed_region_count + 1);
  for (int i = 0; i < n; ++i) {
    grid.cell(i).label = seeds.labels[i];
    if (seeds.labels[i] != kUnlabeled)
      regions[seeds.labels[i]].add(grid.cell(i).mean, grid.cell(i).pixel_count());
  }

  SortedCandidateList ssl(n);
  int nbrs[4];

  // Preliminary pass: every non-seed SER adjacent to a seed region enters the
  // list with the minimum GCD over its adjacent regions.
  for (int i = 0; i < n; ++i) {
    if (grid.cell(i).label != kUnlabeled) continue;
    double best = std::numeric_limits<double>::infinity();
    std::int32_t best_region = kUnlabeled;
    const int cnt = grid.neighbors(i, nbrs);
    for (int k = 0; k < cnt; ++k) {
      const std::int32_t lbl = grid.cell(nbrs[k]).label;
      if (lbl == kUnlabeled) continue;
      const double gcd =
          growth_control_distance(grid.cell(i), regions[lbl], params.omega);
      if (gcd < best || (gcd == best && lbl < best_region)) {
        best = gcd;
        best_region = lbl;
      }
    }
    if (best_region != kUnlabeled) ssl.push(i, best, best_region);
  }

  while (!ssl.empty()) {
    const auto entry = ssl.pop();
    SerCell& cell = grid.cell(entry.cell);
    assert(cell.label == kUnlabeled);

    // Distinct labels among the four neighbors, with the neighbor cells per
    // label for the BLD term.
    std::int32_t labels[4];
    const SerCell* adjacent[4][4];
    int adj_count[4] = {0, 0, 0, 0};
    int label_count = 0;
    const int cnt = grid.neighbors(entry.cell, nbrs);
    for (int k = 0; k < cnt; ++k) {
      const SerCell& nb = grid.cell(nbrs[k]);
      if (nb.label == kUnlabeled) continue;
      int slot = -1;
      for (int s = 0; s < label_count; ++s)
        if (labels[s] == nb.label) slot = s;
      if (slot < 0) {
        slot = label_count++;
        labels[slot] = nb.label;
      }
      adjacent[slot][adj_count[slot]++] = &nb;
    }
    assert(label_count > 0);

    std::int32_t chosen = labels[0];
    if (label_count > 1) {
      double best = std::numeric_limits<double>::infinity();
      for (int s = 0; s < label_count; ++s) {
        const double bld = boundary_localization_distance(
            cell, regions[labels[s]],
            std::span<const SerCell* const>(adjacent[s], adj_count[s]),
            params.lambda1);
        if (bld < best || (bld == best && labels[s] < chosen)) {
          best = bld;
          chosen = labels[s];
        }
      }
    }

    cell.label = chosen;
    regions[chosen].add(cell.mean, cell.pixel_count());

    for (int k = 0; k < cnt; ++k) {
      const int nb = nbrs[k];
      if (grid.cell(nb).label != kUnlabeled || ssl.contains(nb)) continue;
      const double gcd =
          growth_control_distance(grid.cell(nb), regions[chosen], params.omega);
      ssl.push(nb, gcd, chosen);
    }
  }
  return regions;
}

}  // namespace ssrg
