#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "ssrg/color.hpp"
#include "ssrg/features.hpp"
#include "ssrg/growing.hpp"
#include "ssrg/ser_grid.hpp"

namespace ssrg {

struct MergeParams {
  int max_small_size = 5;          // M_R, in SERs
  double xi = 0.1;                 // weight of the homogeneity distance in RD
  double termination_ratio = 1.04; // T_t
  double zeta = 0.8;               // final count factor, N_F = round(zeta * N_2)
};

struct MergeRegion {
  bool alive = false;
  long ser_count = 0;
  long pixel_count = 0;
  double sum_l = 0.0, sum_a = 0.0, sum_b = 0.0;  // pixel-weighted color sums
  std::array<std::vector<double>, 3> hist;       // per-channel pixel counts
  std::set<int> adjacent;
  double entropy = 0.0;  // mean per-channel Tsallis entropy of the histograms

  Lab mean() const {
    const double n = static_cast<double>(pixel_count);
    return {sum_l / n, sum_a / n, sum_b / n};
  }
};

// Region adjacency table over the grown SER labels. Histograms use global
// per-channel min/max ranges of the (filtered) Lab image.
struct RegionTable {
  int bins = 20;
  double entropy_q = 0.8;
  std::array<std::pair<double, double>, 3> channel_range{};
  std::vector<MergeRegion> regions;  // indexed by label; slot 0 unused
  std::vector<int> absorbed_into;    // merge chain: absorbed_into[j] = survivor

  int live_count() const {
    int n = 0;
    for (const auto& r : regions) n += r.alive ? 1 : 0;
    return n;
  }

  // Follows the merge chain from an original label to its surviving region.
  int resolve(int id) const {
    while (id < static_cast<int>(absorbed_into.size()) && absorbed_into[id] != id)
      id = absorbed_into[id];
    return id;
  }
};

inline void refresh_entropy(RegionTable& table, int id) {
  MergeRegion& r = table.regions[id];
  const double n = static_cast<double>(r.pixel_count);
  double sum = 0.0;
  std::vector<double> probs(table.bins);
  for (int ch = 0; ch < 3; ++ch) {
    for (int i = 0; i < table.bins; ++i) probs[i] = r.hist[ch][i] / n;
    sum += tsallis_entropy_of_histogram(probs, table.entropy_q);
  }
  r.entropy = sum / 3.0;
}

inline RegionTable build_region_table(const SerGrid& grid, const LabImage& lab,
                                      int bins = 20, double entropy_q = 0.8) {
  RegionTable table;
  table.bins = bins;
  table.entropy_q = entropy_q;

  for (int ch = 0; ch < 3; ++ch)
    table.channel_range[ch] = {std::numeric_limits<double>::infinity(),
                               -std::numeric_limits<double>::infinity()};
  for (const Lab& c : lab) {
    const double v[3] = {c.l, c.a, c.b};
    for (int ch = 0; ch < 3; ++ch) {
      table.channel_range[ch].first = std::min(table.channel_range[ch].first, v[ch]);
      table.channel_range[ch].second = std::max(table.channel_range[ch].second, v[ch]);
    }
  }

  std::int32_t max_label = 0;
  for (int i = 0; i < grid.cell_count(); ++i)
    max_label = std::max(max_label, grid.cell(i).label);
  table.regions.resize(max_label + 1);
  for (auto& r : table.regions)
    for (auto& h : r.hist) h.assign(bins, 0.0);

  for (int i = 0; i < grid.cell_count(); ++i) {
    const SerCell& cell = grid.cell(i);
    if (cell.label == kUnlabeled)
      throw std::invalid_argument("build_region_table: unlabeled SER");
    MergeRegion& r = table.regions[cell.label];
    r.alive = true;
    r.ser_count += 1;
    r.pixel_count += cell.pixel_count();
    for (int y = cell.y0; y < cell.y0 + cell.h; ++y) {
      for (int x = cell.x0; x < cell.x0 + cell.w; ++x) {
        const Lab& c = lab.at(x, y);
        r.sum_l += c.l;
        r.sum_a += c.a;
        r.sum_b += c.b;
        const double v[3] = {c.l, c.a, c.b};
        for (int ch = 0; ch < 3; ++ch)
          r.hist[ch][bin_index(v[ch], table.channel_range[ch].first,
                               table.channel_range[ch].second, bins)] += 1.0;
      }
    }
    int nbrs[4];
    const int cnt = grid.neighbors(i, nbrs);
    for (int k = 0; k < cnt; ++k) {
      const std::int32_t other = grid.cell(nbrs[k]).label;
      if (other != cell.label) r.adjacent.insert(other);
    }
  }

  for (std::size_t id = 1; id < table.regions.size(); ++id)
    if (table.regions[id].alive) refresh_entropy(table, static_cast<int>(id));
  return table;
}

// D_A: mean over channels of sqrt(1 - Bhattacharyya coefficient); in [0,1].
inline double color_histogram_distance(const RegionTable& table, int i, int j) {
  const MergeRegion& a = table.regions[i];
  const MergeRegion& b = table.regions[j];
  const double na = static_cast<double>(a.pixel_count);
  const double nb = static_cast<double>(b.pixel_count);
  double sum = 0.0;
  for (int ch = 0; ch < 3; ++ch) {
    double rho = 0.0;
    for (int k = 0; k < table.bins; ++k)
      rho += std::sqrt((a.hist[ch][k] / na) * (b.hist[ch][k] / nb));
    sum += std::sqrt(std::max(0.0, 1.0 - rho));
  }
  return sum / 3.0;
}

inline double homogeneity_distance(const RegionTable& table, int i, int j) {
  return std::abs(table.regions[i].entropy - table.regions[j].entropy);
}

inline double region_distance(const RegionTable& table, int i, int j, double xi) {
  return color_histogram_distance(table, i, j) + xi * homogeneity_distance(table, i, j);
}

inline double merge_importance(const RegionTable& table, int i, int j, double xi) {
  const long ns = std::min(table.regions[i].ser_count, table.regions[j].ser_count);
  return static_cast<double>(ns) * region_distance(table, i, j, xi);
}

// Merges j into i (the smaller id survives); histograms and sums add, the
// adjacency sets union, and neighbor tables are rewired. Returns the
// surviving id.
inline int merge_regions(RegionTable& table, int i, int j) {
  if (i > j) std::swap(i, j);
  if (table.absorbed_into.size() < table.regions.size()) {
    const std::size_t old = table.absorbed_into.size();
    table.absorbed_into.resize(table.regions.size());
    for (std::size_t k = old; k < table.absorbed_into.size(); ++k)
      table.absorbed_into[k] = static_cast<int>(k);
  }
  table.absorbed_into[j] = i;
  MergeRegion& a = table.regions[i];
  MergeRegion& b = table.regions[j];
  a.ser_count += b.ser_count;
  a.pixel_count += b.pixel_count;
  a.sum_l += b.sum_l;
  a.sum_a += b.sum_a;
  a.sum_b += b.sum_b;
  for (int ch = 0; ch < 3; ++ch)
    for (int k = 0; k < table.bins; ++k) a.hist[ch][k] += b.hist[ch][k];
  for (int nb : b.adjacent) {
    table.regions[nb].adjacent.erase(j);
    if (nb != i) {
      a.adjacent.insert(nb);
      table.regions[nb].adjacent.insert(i);
    }
  }
  a.adjacent.erase(i);
  a.adjacent.erase(j);
  b = MergeRegion{};
  refresh_entropy(table, i);
  return i;
}

// Merge 1: absorbs every region of size <= M_R SERs into its most similar
// adjacent region (minimum CD between mean colors), smallest regions first,
// re-evaluating sizes after each merge.
inline void merge_small_regions(RegionTable& table, int max_small_size) {
  for (;;) {
    int target = -1;
    for (std::size_t id = 1; id < table.regions.size(); ++id) {
      const MergeRegion& r = table.regions[id];
      if (!r.alive || r.ser_count > max_small_size || r.adjacent.empty()) continue;
      if (target < 0 || r.ser_count < table.regions[target].ser_count)
        target = static_cast<int>(id);
    }
    if (target < 0) break;
    const Lab mean = table.regions[target].mean();
    int best = -1;
    double best_cd = std::numeric_limits<double>::infinity();
    for (int nb : table.regions[target].adjacent) {
      const double cd = color_distance(mean, table.regions[nb].mean());
      if (cd < best_cd) {
        best_cd = cd;
        best = nb;
      }
    }
    merge_regions(table, target, best);
  }
}

namespace detail {

struct PairKey {
  int a, b;  // a < b
  bool operator<(const PairKey& o) const {
    return a != o.a ? a < o.a : b < o.b;
  }
};

}  // namespace detail

// Merge 2: repeatedly merges the adjacent pair with the globally minimum
// merge importance. MI values are cached per pair and recomputed only for
// pairs touching the merged region. Tracking of MI_max begins with the merge
// that brings the live count down to the desired count; from then on a merge
// whose MI exceeds termination_ratio * MI_max terminates the stage. A table
// that already starts at or below the desired count is left untouched, since
// no reference MI_max can be established without overshooting the target.
inline void merge_by_importance(RegionTable& table, int desired_regions,
                                const MergeParams& params = {},
                                std::vector<std::pair<int, int>>* merge_log = nullptr) {
  std::map<detail::PairKey, double> mi;
  for (std::size_t id = 1; id < table.regions.size(); ++id) {
    if (!table.regions[id].alive) continue;
    for (int nb : table.regions[id].adjacent)
      if (static_cast<int>(id) < nb)
        mi[{static_cast<int>(id), nb}] =
            merge_importance(table, static_cast<int>(id), nb, params.xi);
  }

  int live = table.live_count();
  bool have_max = false;
  double mi_max = 0.0;
  while (live > 1 && !mi.empty()) {
    auto best = mi.begin();
    for (auto it = std::next(mi.begin()); it != mi.end(); ++it)
      if (it->second < best->second) best = it;

    if (live <= desired_regions) {
      if (!have_max) break;  // already at/below target; nothing to gauge MIR by
      if (best->second / mi_max > params.termination_ratio) break;
    }

    const double executed_mi = best->second;
    if (merge_log) merge_log->emplace_back(best->first.a, best->first.b);
    const int survivor = merge_regions(table, best->first.a, best->first.b);
    --live;
    if (live <= desired_regions) {
      mi_max = have_max ? std::max(mi_max, executed_mi) : executed_mi;
      have_max = true;
    }

    // Drop pairs involving either merged id, then recompute the survivor's.
    for (auto it = mi.begin(); it != mi.end();) {
      if (it->first.a == best->first.a || it->first.b == best->first.a ||
          it->first.a == best->first.b || it->first.b == best->first.b)
        it = mi.erase(it);
      else
        ++it;
    }
    for (int nb : table.regions[survivor].adjacent) {
      const detail::PairKey key{std::min(survivor, nb), std::max(survivor, nb)};
      mi[key] = merge_importance(table, key.a, key.b, params.xi);
    }
  }
}

// Most similar neighbor of a region by RD; ties go to the smaller id.
inline int most_similar_neighbor(const RegionTable& table, int id, double xi) {
  int best = -1;
  double best_rd = std::numeric_limits<double>::infinity();
  for (int nb : table.regions[id].adjacent) {
    const double rd = region_distance(table, id, nb, xi);
    if (rd < best_rd) {
      best_rd = rd;
      best = nb;
    }
  }
  return best;
}

// Merge 3: merges mutually most similar pairs, smallest combined size first,
// until the live count reaches round(zeta * N_2). Stops early if no mutual
// pair exists.
inline void merge_mutual_most_similar(RegionTable& table,
                                      const MergeParams& params = {}) {
  const int n2 = table.live_count();
  const int target =
      std::max(1, static_cast<int>(std::floor(params.zeta * n2 + 0.5)));
  int live = n2;
  while (live > target) {
    int pick_a = -1, pick_b = -1;
    long pick_size = std::numeric_limits<long>::max();
    for (std::size_t id = 1; id < table.regions.size(); ++id) {
      if (!table.regions[id].alive) continue;
      const int a = static_cast<int>(id);
      const int b = most_similar_neighbor(table, a, params.xi);
      if (b < a) continue;  // visit each unordered pair once, from its low id
      if (b < 0 || most_similar_neighbor(table, b, params.xi) != a) continue;
      const long size = table.regions[a].ser_count + table.regions[b].ser_count;
      if (size < pick_size ||
          (size == pick_size &&
           (a < pick_a || (a == pick_a && b < pick_b)))) {
        pick_size = size;
        pick_a = a;
        pick_b = b;
      }
    }
    if (pick_a < 0) break;
    merge_regions(table, pick_a, pick_b);
    --live;
  }
}

// Rewrites grid labels to the surviving region of each merge chain, compacted
// to dense ids 1..R in row-major first-encounter order. Returns the live
// region count.
inline int apply_labels(const RegionTable& table, SerGrid& grid) {
  std::vector<std::int32_t> compact(table.regions.size(), kUnlabeled);
  std::int32_t next = 0;
  for (int i = 0; i < grid.cell_count(); ++i) {
    const int lbl = table.resolve(grid.cell(i).label);
    if (compact[lbl] == kUnlabeled) compact[lbl] = ++next;
    grid.cell(i).label = compact[lbl];
  }
  return next;
}

}  // namespace ssrg
