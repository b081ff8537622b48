#pragma once

#include <stdexcept>
#include <vector>

#include "ssrg/ser_grid.hpp"

namespace ssrg {

struct SeedParams {
  double beta = 0.4;  // threshold coefficient, T_S = beta * EG_A
};

struct NoSeedsError : std::runtime_error {
  NoSeedsError() : std::runtime_error("no seed SERs below the threshold") {}
};

struct SeedLabeling {
  std::vector<bool> is_seed;          // per SER, EG_a <= T_S
  std::vector<std::int32_t> labels;   // 1..n for seed SERs, 0 otherwise
  int seed_region_count = 0;
  double threshold = 0.0;             // T_S actually used
};

// 4-connected component labeling over a boolean mask; labels are dense
// integers starting at 1, assigned in row-major first-encounter order.
inline std::pair<std::vector<std::int32_t>, int> connected_components(
    int cols, int rows, const std::vector<bool>& mask) {
  std::vector<std::int32_t> labels(mask.size(), kUnlabeled);
  std::vector<int> stack;
  int next = 0;
  for (int i = 0; i < cols * rows; ++i) {
    if (!mask[i] || labels[i] != kUnlabeled) continue;
    ++next;
    labels[i] = next;
    stack.push_back(i);
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      const int c = cur % cols, r = cur / cols;
      const int nbrs[4] = {c > 0 ? cur - 1 : -1, c + 1 < cols ? cur + 1 : -1,
                           r > 0 ? cur - cols : -1, r + 1 < rows ? cur + cols : -1};
      for (int nb : nbrs) {
        if (nb < 0 || !mask[nb] || labels[nb] != kUnlabeled) continue;
        labels[nb] = next;
        stack.push_back(nb);
      }
    }
  }
  return {std::move(labels), next};
}

// Classifies SERs against T_S = beta * EG_A and labels the 4-connected
// components of the seed SERs. Throws NoSeedsError if nothing passes.
inline SeedLabeling detect_seeds(const SerGrid& grid, double eg_global_mean,
                                 const SeedParams& params = {}) {
  if (params.beta <= 0.0)
    throw std::invalid_argument("detect_seeds: beta must be positive");
  SeedLabeling out;
  out.threshold = params.beta * eg_global_mean;
  out.is_seed.resize(grid.cell_count());
  for (int i = 0; i < grid.cell_count(); ++i)
    out.is_seed[i] = grid.cell(i).eg_mean <= out.threshold;
  auto [labels, count] =
      connected_components(grid.cols(), grid.rows(), out.is_seed);
  if (count == 0) throw NoSeedsError();
  out.labels = std::move(labels);
  out.seed_region_count = count;
  return out;
}

}  // namespace ssrg
