#include <doctest.h>

#include <random>

#include "ssrg/boundary.hpp"
#include "ssrg/ser_grid.hpp"
#include "synthetic.hpp"

using namespace ssrg;

TEST_CASE("rasterize_labels expands SER labels to pixels") {
  SerGrid grid = build_grid(10, 6, 4);  // 3x2 cells with partial edges
  for (int i = 0; i < grid.cell_count(); ++i)
    grid.cell(i).label = i + 1;
  const Segmentation seg = rasterize_labels(grid, grid.cell_count());
  CHECK(seg.region_count == 6);
  CHECK(seg.labels.at(0, 0) == 1);
  CHECK(seg.labels.at(3, 3) == 1);
  CHECK(seg.labels.at(4, 0) == 2);
  CHECK(seg.labels.at(9, 5) == 6);
  for (std::int32_t l : seg.labels) CHECK(l != kUnlabeled);
}

TEST_CASE("pixel region distance combines CD and local contrast") {
  RegionState region;
  region.add({3, 4, 0}, 100);
  const Lab pixel{0, 0, 0};
  const Lab adj[2] = {{6, 8, 0}, {0, 0, 0}};  // CDs 10 and 0, mean 5
  CHECK(pixel_region_distance(pixel, region, std::span<const Lab>(adj, 2), 2.0) ==
        doctest::Approx(15.0));
  CHECK(pixel_region_distance(pixel, region, std::span<const Lab>(adj, 2), 0.0) ==
        doctest::Approx(5.0));
  CHECK(pixel_region_distance(pixel, region, std::span<const Lab>(adj, 1), 1.0) ==
        doctest::Approx(15.0));
  CHECK_THROWS_AS(
      pixel_region_distance(pixel, region, std::span<const Lab>(adj, 0), 2.0),
      std::invalid_argument);
}

TEST_CASE("region states aggregate the label map") {
  LabelMap labels(4, 2, 1);
  labels.at(3, 0) = 2;
  labels.at(3, 1) = 2;
  LabImage lab(4, 2, Lab{10, 0, 0});
  lab.at(3, 0) = {40, 0, 0};
  lab.at(3, 1) = {60, 0, 0};
  const auto states = region_states_from_labels(labels, lab, 2);
  CHECK(states[1].pixel_count == 6);
  CHECK(states[1].mean().l == doctest::Approx(10.0));
  CHECK(states[2].pixel_count == 2);
  CHECK(states[2].mean().l == doctest::Approx(50.0));
}

TEST_CASE("zero passes leave the segmentation untouched") {
  LabImage lab(8, 8, Lab{20, 0, 0});
  Segmentation seg;
  seg.labels = LabelMap(8, 8, 1);
  for (int y = 4; y < 8; ++y)
    for (int x = 0; x < 8; ++x) seg.labels.at(x, y) = 2;
  seg.region_count = 2;
  auto states = region_states_from_labels(seg.labels, lab, 2);
  const LabelMap before = seg.labels;
  refine_boundaries(seg, lab, states, {2.0, 0});
  for (int i = 0; i < 64; ++i) CHECK(seg.labels.data()[i] == before.data()[i]);
}

TEST_CASE("refinement pulls an offset boundary onto the color edge") {
  // Tone edge at x = 10 but the initial labels switch at x = 12; each pass
  // can move the boundary one pixel, so the default two passes recover it.
  const int w = 24, h = 12, tone_edge = 10, label_edge = 12;
  LabImage lab(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      lab.at(x, y) = x < tone_edge ? Lab{20, 0, 0} : Lab{80, 0, 0};

  Segmentation seg;
  seg.labels = LabelMap(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) seg.labels.at(x, y) = x < label_edge ? 1 : 2;
  seg.region_count = 2;

  auto states = region_states_from_labels(seg.labels, lab, 2);
  refine_boundaries(seg, lab, states, {});
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      CHECK(seg.labels.at(x, y) == (x < tone_edge ? 1 : 2));

  // Region sums track the reassignments exactly.
  const auto check = region_states_from_labels(seg.labels, lab, 2);
  CHECK(states[1].pixel_count == check[1].pixel_count);
  CHECK(states[1].sum_l == doctest::Approx(check[1].sum_l).epsilon(1e-9));
  CHECK(states[2].pixel_count == check[2].pixel_count);
}

TEST_CASE("a clean boundary is a fixed point of refinement") {
  const int w = 16, h = 8;
  LabImage lab(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      lab.at(x, y) = x < 8 ? Lab{10, 5, -5} : Lab{70, -10, 10};
  Segmentation seg;
  seg.labels = LabelMap(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) seg.labels.at(x, y) = x < 8 ? 1 : 2;
  seg.region_count = 2;
  auto states = region_states_from_labels(seg.labels, lab, 2);
  refine_boundaries(seg, lab, states, {2.0, 3});
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      CHECK(seg.labels.at(x, y) == (x < 8 ? 1 : 2));
}

TEST_CASE("refinement preserves the pixel partition on noisy input") {
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> noise(-5.0, 5.0);
  const int w = 32, h = 20;
  LabImage lab(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double base = x < 16 ? 25.0 : 65.0;
      lab.at(x, y) = {base + noise(rng), noise(rng), noise(rng)};
    }
  Segmentation seg;
  seg.labels = LabelMap(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) seg.labels.at(x, y) = x < 14 ? 1 : 2;
  seg.region_count = 2;
  auto states = region_states_from_labels(seg.labels, lab, 2);
  refine_boundaries(seg, lab, states, {});

  long count1 = 0, count2 = 0;
  for (std::int32_t l : seg.labels) {
    REQUIRE(l != kUnlabeled);
    (l == 1 ? count1 : count2) += 1;
  }
  CHECK(count1 + count2 == w * h);
  CHECK(states[1].pixel_count == count1);
  CHECK(states[2].pixel_count == count2);
  CHECK(count1 > 0);
  CHECK(count2 > 0);
}

TEST_CASE("refinement is deterministic") {
  std::mt19937 rng(91);
  std::uniform_real_distribution<double> noise(0.0, 100.0);
  const int w = 20, h = 20;
  LabImage lab(w, h);
  for (Lab& c : lab) c = {noise(rng), noise(rng) - 50, noise(rng) - 50};
  LabelMap init(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) init.at(x, y) = 1 + (x / 5) % 4;

  LabelMap results[2];
  for (int run = 0; run < 2; ++run) {
    Segmentation seg{init, 4};
    auto states = region_states_from_labels(seg.labels, lab, 4);
    refine_boundaries(seg, lab, states, {});
    results[run] = seg.labels;
  }
  for (int i = 0; i < w * h; ++i)
    CHECK(results[0].data()[i] == results[1].data()[i]);
}
