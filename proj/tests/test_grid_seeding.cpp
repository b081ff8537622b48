#include <doctest.h>

#include <random>

#include "ssrg/seeding.hpp"
#include "ssrg/ser_grid.hpp"
#include "synthetic.hpp"

using namespace ssrg;

TEST_CASE("grid construction covers the image exactly") {
  SUBCASE("exact multiple") {
    const SerGrid grid = build_grid(352, 240, 4);
    CHECK(grid.cols() == 88);
    CHECK(grid.rows() == 60);
    for (int i = 0; i < grid.cell_count(); ++i) {
      CHECK(grid.cell(i).w == 4);
      CHECK(grid.cell(i).h == 4);
    }
  }
  SUBCASE("partial edge cells") {
    const SerGrid grid = build_grid(10, 10, 4);
    CHECK(grid.cols() == 3);
    CHECK(grid.rows() == 3);
    CHECK(grid.cell(2, 0).w == 2);
    CHECK(grid.cell(0, 2).h == 2);
    CHECK(grid.cell(2, 2).w == 2);
    CHECK(grid.cell(2, 2).h == 2);
  }
  SUBCASE("single cell") {
    const SerGrid grid = build_grid(4, 4, 4);
    CHECK(grid.cell_count() == 1);
    CHECK(grid.cell(0).pixel_count() == 16);
  }
  SUBCASE("image smaller than one SER") {
    CHECK_THROWS_AS(build_grid(3, 8, 4), std::invalid_argument);
  }
}

TEST_CASE("partition is exhaustive and non-overlapping for random sizes") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> dim(5, 100), side(1, 9);
  for (int trial = 0; trial < 50; ++trial) {
    const int s = side(rng);
    const int w = std::max(dim(rng), s), h = std::max(dim(rng), s);
    const SerGrid grid = build_grid(w, h, s);
    std::vector<int> covered(static_cast<std::size_t>(w) * h, 0);
    for (int i = 0; i < grid.cell_count(); ++i) {
      const SerCell& cell = grid.cell(i);
      for (int y = cell.y0; y < cell.y0 + cell.h; ++y)
        for (int x = cell.x0; x < cell.x0 + cell.w; ++x)
          covered[static_cast<std::size_t>(y) * w + x] += 1;
    }
    for (int c : covered) CHECK(c == 1);
  }
}

TEST_CASE("SER statistics aggregate exactly") {
  const int w = 37, h = 22;
  LabImage lab(w, h);
  ScalarField eg(w, h);
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> dist(0.0, 100.0);
  for (Lab& c : lab) c = {dist(rng), dist(rng) - 50, dist(rng) - 50};
  for (double& v : eg) v = dist(rng);

  SerGrid grid = build_grid(w, h, 4);
  const double eg_mean = compute_ser_stats(grid, lab, eg);

  double lab_sum = 0.0, grid_sum = 0.0, eg_sum = 0.0;
  for (const Lab& c : lab) lab_sum += c.l;
  for (double v : eg) eg_sum += v;
  for (int i = 0; i < grid.cell_count(); ++i)
    grid_sum += grid.cell(i).mean.l * static_cast<double>(grid.cell(i).pixel_count());
  CHECK(grid_sum == doctest::Approx(lab_sum).epsilon(1e-9));
  CHECK(eg_mean == doctest::Approx(eg_sum / (w * h)).epsilon(1e-9));
}

TEST_CASE("SER statistics on a split EG field") {
  // 8x4 image, S=4: left cell EG 0, right cell EG 2.
  LabImage lab(8, 4, Lab{50, 0, 0});
  ScalarField eg(8, 4, 0.0);
  for (int y = 0; y < 4; ++y)
    for (int x = 4; x < 8; ++x) eg.at(x, y) = 2.0;
  SerGrid grid = build_grid(8, 4, 4);
  const double eg_global = compute_ser_stats(grid, lab, eg);
  CHECK(grid.cell(0, 0).eg_mean == doctest::Approx(0.0));
  CHECK(grid.cell(1, 0).eg_mean == doctest::Approx(2.0));
  CHECK(eg_global == doctest::Approx(1.0));
  CHECK(grid.cell(0, 0).mean.l == doctest::Approx(50.0));
}

TEST_CASE("connected components under 4-connectivity") {
  SUBCASE("all true is one component") {
    const auto [labels, count] = connected_components(3, 3, std::vector<bool>(9, true));
    CHECK(count == 1);
    for (auto l : labels) CHECK(l == 1);
  }
  SUBCASE("checkerboard is all singletons") {
    std::vector<bool> mask(9);
    for (int i = 0; i < 9; ++i) mask[i] = i % 2 == 0;
    const auto [labels, count] = connected_components(3, 3, mask);
    CHECK(count == 5);
  }
  SUBCASE("diagonal touch does not connect") {
    // Two 1x1 blocks meeting at a corner.
    std::vector<bool> mask{true, false, false, true};
    const auto [labels, count] = connected_components(2, 2, mask);
    CHECK(count == 2);
  }
  SUBCASE("labels are dense row-major first-encounter") {
    std::vector<bool> mask{false, true, false, true, false, true};
    const auto [labels, count] = connected_components(3, 2, mask);
    CHECK(count == 3);
    CHECK(labels[1] == 1);
    CHECK(labels[3] == 2);
    CHECK(labels[5] == 3);
  }
}

TEST_CASE("seed detection thresholds EG_a at beta * EG_A") {
  SUBCASE("all-zero EG makes every SER a seed") {
    SerGrid grid = build_grid(12, 12, 4);
    const auto seeds = detect_seeds(grid, 0.0);
    CHECK(seeds.seed_region_count == 1);
    for (bool s : seeds.is_seed) CHECK(s);
  }

  SUBCASE("ring of seeds around a non-seed center") {
    SerGrid grid = build_grid(12, 12, 4);
    grid.cell(1, 1).eg_mean = 10.0;
    const auto seeds = detect_seeds(grid, 10.0 / 9.0);
    CHECK_FALSE(seeds.is_seed[4]);
    CHECK(seeds.seed_region_count == 1);  // the 8 surrounding SERs form a ring
  }

  SUBCASE("non-seed separator splits components") {
    SerGrid grid = build_grid(12, 4, 4);  // 1x3 strip
    grid.cell(1, 0).eg_mean = 10.0;
    const auto seeds = detect_seeds(grid, 10.0 / 3.0);
    CHECK(seeds.seed_region_count == 2);
    CHECK(seeds.labels[0] == 1);
    CHECK(seeds.labels[2] == 2);
  }

  SUBCASE("no SER below the threshold is an error") {
    SerGrid grid = build_grid(8, 8, 4);
    for (int i = 0; i < grid.cell_count(); ++i) grid.cell(i).eg_mean = 5.0;
    // EG_A handed in smaller than every EG_a.
    CHECK_THROWS_AS(detect_seeds(grid, 1.0), NoSeedsError);
  }
}

TEST_CASE("raising beta never loses seeds") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> dist(0.0, 10.0);
  SerGrid grid = build_grid(40, 40, 4);
  double total = 0.0;
  for (int i = 0; i < grid.cell_count(); ++i) {
    grid.cell(i).eg_mean = dist(rng);
    total += grid.cell(i).eg_mean;
  }
  const double eg_global = total / grid.cell_count();
  int prev = 0;
  for (double beta : {0.2, 0.4, 0.8, 1.2, 2.0}) {
    const auto seeds = detect_seeds(grid, eg_global, {beta});
    int count = 0;
    for (bool s : seeds.is_seed) count += s ? 1 : 0;
    CHECK(count >= prev);
    prev = count;
    for (int i = 0; i < grid.cell_count(); ++i)
      CHECK(seeds.is_seed[i] == (grid.cell(i).eg_mean <= beta * eg_global));
  }
}
