#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "ssrg/image.hpp"

namespace ssrg {

struct RegionError {
  long area = 0;                      // A_i, pixels
  double squared_error = 0.0;         // e_i^2
  double mean_rgb[3] = {0, 0, 0};
};

struct EvalReport {
  double f_prime = 0.0;
  double q = 0.0;
  int region_count = 0;
  long largest_area = 0;                 // Max
  std::vector<RegionError> regions;      // indexed by dense region order
  std::map<long, int> area_multiplicity; // R(A)
};

// e_i: sum over the region's pixels of the Euclidean distance between the
// original RGB color and the region's mean RGB color.
inline double region_color_error(const LabelMap& labels, const RgbImage& original,
                                 std::int32_t region) {
  double sum[3] = {0, 0, 0};
  long count = 0;
  for (int y = 0; y < labels.height(); ++y)
    for (int x = 0; x < labels.width(); ++x)
      if (labels.at(x, y) == region) {
        const Rgb8& c = original.at(x, y);
        sum[0] += c.r;
        sum[1] += c.g;
        sum[2] += c.b;
        ++count;
      }
  if (count == 0) throw std::invalid_argument("region_color_error: empty region");
  const double mean[3] = {sum[0] / count, sum[1] / count, sum[2] / count};
  double e = 0.0;
  for (int y = 0; y < labels.height(); ++y)
    for (int x = 0; x < labels.width(); ++x)
      if (labels.at(x, y) == region) {
        const Rgb8& c = original.at(x, y);
        const double d0 = c.r - mean[0], d1 = c.g - mean[1], d2 = c.b - mean[2];
        e += std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
      }
  return e;
}

// Per-region areas, mean colors and color errors in one sweep, plus the
// Borsotti F' and Q scores. Log base 10 in the Q denominator.
inline EvalReport evaluate_segmentation(const LabelMap& labels,
                                        const RgbImage& original) {
  if (labels.width() != original.width() || labels.height() != original.height())
    throw std::invalid_argument("evaluate_segmentation: dimension mismatch");

  std::int32_t max_label = 0;
  for (std::int32_t l : labels) {
    if (l == kUnlabeled)
      throw std::invalid_argument("evaluate_segmentation: unlabeled pixel");
    max_label = std::max(max_label, l);
  }

  std::vector<long> area(max_label + 1, 0);
  std::vector<double> sum_r(max_label + 1), sum_g(max_label + 1), sum_b(max_label + 1);
  for (int y = 0; y < labels.height(); ++y)
    for (int x = 0; x < labels.width(); ++x) {
      const std::int32_t l = labels.at(x, y);
      const Rgb8& c = original.at(x, y);
      ++area[l];
      sum_r[l] += c.r;
      sum_g[l] += c.g;
      sum_b[l] += c.b;
    }

  std::vector<double> err(max_label + 1, 0.0);
  for (int y = 0; y < labels.height(); ++y)
    for (int x = 0; x < labels.width(); ++x) {
      const std::int32_t l = labels.at(x, y);
      const Rgb8& c = original.at(x, y);
      const double d0 = c.r - sum_r[l] / area[l];
      const double d1 = c.g - sum_g[l] / area[l];
      const double d2 = c.b - sum_b[l] / area[l];
      err[l] += std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
    }

  EvalReport report;
  for (std::int32_t l = 1; l <= max_label; ++l) {
    if (area[l] == 0) continue;
    RegionError r;
    r.area = area[l];
    r.squared_error = err[l] * err[l];
    r.mean_rgb[0] = sum_r[l] / area[l];
    r.mean_rgb[1] = sum_g[l] / area[l];
    r.mean_rgb[2] = sum_b[l] / area[l];
    report.regions.push_back(r);
    report.area_multiplicity[r.area] += 1;
    report.largest_area = std::max(report.largest_area, r.area);
  }
  report.region_count = static_cast<int>(report.regions.size());

  const double image_area =
      static_cast<double>(labels.width()) * labels.height();
  const double prefactor = 1.0 / (10000.0 * image_area);

  double multiplicity_term = 0.0;  // sum over occupied areas of R(A)^(1+1/A)
  for (const auto& [a, r_of_a] : report.area_multiplicity)
    multiplicity_term +=
        std::pow(static_cast<double>(r_of_a), 1.0 + 1.0 / static_cast<double>(a));

  double error_term = 0.0;  // sum of e_i^2 / sqrt(A_i)
  double q_sum = 0.0;
  for (const RegionError& r : report.regions) {
    error_term += r.squared_error / std::sqrt(static_cast<double>(r.area));
    const double r_of_a = report.area_multiplicity.at(r.area);
    q_sum += r.squared_error / (1.0 + std::log10(static_cast<double>(r.area))) +
             (r_of_a / static_cast<double>(r.area)) *
                 (r_of_a / static_cast<double>(r.area));
  }

  report.f_prime = prefactor * std::sqrt(multiplicity_term) * error_term;
  report.q = prefactor * std::sqrt(static_cast<double>(report.region_count)) * q_sum;
  return report;
}

}  // namespace ssrg
