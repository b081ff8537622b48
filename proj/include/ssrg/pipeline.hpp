#pragma once

#include <vector>

#include "ssrg/boundary.hpp"
#include "ssrg/color.hpp"
#include "ssrg/config.hpp"
#include "ssrg/evaluation.hpp"
#include "ssrg/features.hpp"
#include "ssrg/growing.hpp"
#include "ssrg/merging.hpp"
#include "ssrg/seeding.hpp"
#include "ssrg/ser_grid.hpp"

namespace ssrg {

struct StageCounts {
  int inpr = 0;  // after growing
  int pr1 = 0;   // after small-region absorption
  int pr2 = 0;   // after importance-ordered merging (N_2)
  int fpr = 0;   // after mutual-most-similar merging (N_F)
};

struct SegmentResult {
  Segmentation segmentation;
  ComplexityEstimate complexity;
  StageCounts counts;
  EvalReport evaluation;

  // Intermediate fields and SER-stage label maps for stage dumps.
  ScalarField cv;
  ScalarField enhanced_gradient;
  ScalarField entropy;
  SeedLabeling seeds;
  SerGrid grid_inpr;  // labels after growing
  SerGrid grid_pr1;
  SerGrid grid_pr2;
  SerGrid grid_fpr;   // compacted final labels
};

// Runs the full pipeline: color conversion and pre-filtering, feature fields,
// complexity estimate, SER seeding and growing, the three merge stages,
// rasterization, pixel-wise boundary refinement, and self-evaluation.
inline SegmentResult segment(const RgbImage& image, const PipelineConfig& config = {}) {
  config.validate();
  SegmentResult result;

  const LabImage lab = bilateral_filter(srgb_to_lab(image), config.bilateral);
  result.cv = color_vector_magnitude(lab);

  const ScalarField gradient = lhdsee_gradient(result.cv, config.gradient);
  result.enhanced_gradient = enhance_gradient(gradient, config.gradient);
  result.entropy = entropy_field(result.cv, config.entropy);

  result.complexity =
      estimate_complexity(normalize_field(result.enhanced_gradient),
                          normalize_field(result.entropy), config.alpha,
                          config.kappa);
  const int desired = config.desired_regions_override
                          ? *config.desired_regions_override
                          : result.complexity.desired_regions;
  result.complexity.desired_regions = desired;

  SerGrid grid = build_grid(image.width(), image.height(), config.ser_side);
  const double eg_global_mean =
      compute_ser_stats(grid, lab, result.enhanced_gradient);
  result.seeds = detect_seeds(grid, eg_global_mean, config.seed);

  grow_regions(grid, result.seeds, config.grow);
  result.counts.inpr = result.seeds.seed_region_count;
  result.grid_inpr = grid;

  RegionTable table =
      build_region_table(grid, lab, config.gradient.bins, config.entropy.q);
  merge_small_regions(table, config.merge.max_small_size);
  result.counts.pr1 = table.live_count();
  result.grid_pr1 = grid;
  for (int i = 0; i < result.grid_pr1.cell_count(); ++i)
    result.grid_pr1.cell(i).label = table.resolve(result.grid_pr1.cell(i).label);

  // An estimated target below 2 is degenerate: it would merge every image
  // into a single region whenever the seeds split. The floor applies only to
  // the estimate; an explicit override is taken literally.
  const int merge_target = config.desired_regions_override
                               ? desired
                               : std::max(desired, 2);
  merge_by_importance(table, merge_target, config.merge);
  result.counts.pr2 = table.live_count();
  result.grid_pr2 = grid;
  for (int i = 0; i < result.grid_pr2.cell_count(); ++i)
    result.grid_pr2.cell(i).label = table.resolve(result.grid_pr2.cell(i).label);

  merge_mutual_most_similar(table, config.merge);
  result.counts.fpr = apply_labels(table, grid);
  result.grid_fpr = grid;

  result.segmentation = rasterize_labels(grid, result.counts.fpr);
  std::vector<RegionState> states = region_states_from_labels(
      result.segmentation.labels, lab, result.counts.fpr);
  refine_boundaries(result.segmentation, lab, states, config.refine);

  result.evaluation = evaluate_segmentation(result.segmentation.labels, image);
  return result;
}

}  // namespace ssrg
