#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "ssrg/image.hpp"

namespace ssrg {

struct GradientParams {
  int window_side = 11;   // L_W
  int bins = 20;          // M
  double offset = 0.2;    // delta
  double exponent = 4.0;  // gamma
};

struct EntropyParams {
  double q = 0.8;
  int bins = 20;
  int window_side = 11;
};

struct ComplexityEstimate {
  double f_eg = 0.0;       // fractal dimension of the enhanced-gradient field
  double f_te = 0.0;       // fractal dimension of the entropy field
  double f_avg = 0.0;      // (f_eg + f_te) / 2
  int desired_regions = 1; // N_D
};

// Bin index for value v over [lo,hi] with the top edge folded into the last
// bin. A degenerate range puts everything into bin 0.
inline int bin_index(double v, double lo, double hi, int bins) {
  if (hi <= lo) return 0;
  const int i = static_cast<int>((v - lo) / (hi - lo) * bins);
  return std::clamp(i, 0, bins - 1);
}

// L1 distance between the normalized histograms of two value lists; in [0,2].
inline double histogram_difference(std::span<const double> values_u,
                                   std::span<const double> values_v, int bins,
                                   double lo, double hi) {
  if (values_u.empty() || values_v.empty())
    throw std::invalid_argument("histogram_difference: empty value list");
  std::vector<double> hu(bins, 0.0), hv(bins, 0.0);
  for (double v : values_u) hu[bin_index(v, lo, hi, bins)] += 1.0;
  for (double v : values_v) hv[bin_index(v, lo, hi, bins)] += 1.0;
  const double nu = static_cast<double>(values_u.size());
  const double nv = static_cast<double>(values_v.size());
  double d = 0.0;
  for (int i = 0; i < bins; ++i) d += std::abs(hu[i] / nu - hv[i] / nv);
  return d;
}

// Local-histogram-difference salient edge extraction. For each pixel, the
// L_W x L_W window is split by the vertical midline, horizontal midline, main
// diagonal and anti-diagonal into four symmetric sub-window pairs; pixels on
// the splitting line belong to neither half. G is the maximum L1 histogram
// distance over the four pairs. Histogram bins span the global min/max of the
// field; windows are truncated at the borders.
inline ScalarField lhdsee_gradient(const ScalarField& cv,
                                   const GradientParams& p = {}) {
  if (p.window_side < 3 || p.window_side % 2 == 0)
    throw std::invalid_argument("lhdsee_gradient: window_side must be odd >= 3");
  if (p.bins < 2) throw std::invalid_argument("lhdsee_gradient: bins must be >= 2");

  const auto [min_it, max_it] = std::minmax_element(cv.begin(), cv.end());
  const double lo = *min_it, hi = *max_it;
  const int w = cv.width(), h = cv.height();
  const int radius = p.window_side / 2;

  // Precomputed bin index per pixel; histogram fills become increments.
  std::vector<int> bin_of(cv.size());
  for (std::size_t i = 0; i < cv.size(); ++i)
    bin_of[i] = bin_index(cv.data()[i], lo, hi, p.bins);

  ScalarField out(w, h, 0.0);
  std::vector<int> cnt_u(4), cnt_v(4);
  std::vector<std::vector<double>> hists_u(4, std::vector<double>(p.bins));
  std::vector<std::vector<double>> hists_v(4, std::vector<double>(p.bins));

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int k = 0; k < 4; ++k) {
        std::fill(hists_u[k].begin(), hists_u[k].end(), 0.0);
        std::fill(hists_v[k].begin(), hists_v[k].end(), 0.0);
        cnt_u[k] = cnt_v[k] = 0;
      }
      const int y0 = std::max(0, y - radius), y1 = std::min(h - 1, y + radius);
      const int x0 = std::max(0, x - radius), x1 = std::min(w - 1, x + radius);
      for (int yy = y0; yy <= y1; ++yy) {
        const int dy = yy - y;
        for (int xx = x0; xx <= x1; ++xx) {
          const int dx = xx - x;
          const int b = bin_of[static_cast<std::size_t>(yy) * w + xx];
          if (dx < 0) { hists_u[0][b] += 1.0; ++cnt_u[0]; }
          else if (dx > 0) { hists_v[0][b] += 1.0; ++cnt_v[0]; }
          if (dy < 0) { hists_u[1][b] += 1.0; ++cnt_u[1]; }
          else if (dy > 0) { hists_v[1][b] += 1.0; ++cnt_v[1]; }
          if (dx > dy) { hists_u[2][b] += 1.0; ++cnt_u[2]; }
          else if (dx < dy) { hists_v[2][b] += 1.0; ++cnt_v[2]; }
          if (dx + dy < 0) { hists_u[3][b] += 1.0; ++cnt_u[3]; }
          else if (dx + dy > 0) { hists_v[3][b] += 1.0; ++cnt_v[3]; }
        }
      }
      double g = 0.0;
      for (int k = 0; k < 4; ++k) {
        if (cnt_u[k] == 0 || cnt_v[k] == 0) continue;  // corner truncation
        double gk = 0.0;
        for (int i = 0; i < p.bins; ++i)
          gk += std::abs(hists_u[k][i] / cnt_u[k] - hists_v[k][i] / cnt_v[k]);
        g = std::max(g, gk);
      }
      out.at(x, y) = std::min(g, 2.0);  // guard rounding above the L1 bound
    }
  }
  return out;
}

inline double enhance_gradient(double g, double offset, double exponent) {
  return g <= offset ? 0.0 : std::pow(g - offset, exponent);
}

// EG = (G - delta)^gamma above the offset, 0 below (Fig. 2 power transform).
inline ScalarField enhance_gradient(const ScalarField& g,
                                    const GradientParams& p = {}) {
  ScalarField out(g.width(), g.height());
  auto dst = out.begin();
  for (double v : g) *dst++ = enhance_gradient(v, p.offset, p.exponent);
  return out;
}

// Tsallis entropy of a normalized histogram, S_q = (1 - sum p_i^q) / (q - 1).
inline double tsallis_entropy_of_histogram(std::span<const double> probs,
                                           double q) {
  double s = 0.0;
  for (double p : probs)
    if (p > 0.0) s += std::pow(p, q);
  return (1.0 - s) / (q - 1.0);
}

inline double tsallis_entropy(std::span<const double> values,
                              const EntropyParams& p, double lo, double hi) {
  if (values.empty())
    throw std::invalid_argument("tsallis_entropy: empty value list");
  if (p.q <= 0.0 || p.q == 1.0)
    throw std::invalid_argument("tsallis_entropy: q must be > 0 and != 1");
  std::vector<double> hist(p.bins, 0.0);
  for (double v : values) hist[bin_index(v, lo, hi, p.bins)] += 1.0;
  for (double& b : hist) b /= static_cast<double>(values.size());
  return tsallis_entropy_of_histogram(hist, p.q);
}

// Per-pixel Tsallis entropy of a sliding window over the field, bins spanning
// the field's global min/max. Border windows are truncated.
inline ScalarField entropy_field(const ScalarField& cv,
                                 const EntropyParams& p = {}) {
  const auto [min_it, max_it] = std::minmax_element(cv.begin(), cv.end());
  const double lo = *min_it, hi = *max_it;
  const int w = cv.width(), h = cv.height();
  const int radius = p.window_side / 2;

  std::vector<int> bin_of(cv.size());
  for (std::size_t i = 0; i < cv.size(); ++i)
    bin_of[i] = bin_index(cv.data()[i], lo, hi, p.bins);

  ScalarField out(w, h);
  std::vector<double> hist(p.bins);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::fill(hist.begin(), hist.end(), 0.0);
      const int y0 = std::max(0, y - radius), y1 = std::min(h - 1, y + radius);
      const int x0 = std::max(0, x - radius), x1 = std::min(w - 1, x + radius);
      int n = 0;
      for (int yy = y0; yy <= y1; ++yy)
        for (int xx = x0; xx <= x1; ++xx) {
          hist[bin_of[static_cast<std::size_t>(yy) * w + xx]] += 1.0;
          ++n;
        }
      for (double& b : hist) b /= n;
      out.at(x, y) = tsallis_entropy_of_histogram(hist, p.q);
    }
  }
  return out;
}

// Differential box counting with adaptable box height. Grid sizes s are drawn
// from a fixed ladder, box height h = s * range / side, and the dimension is
// the least-squares slope of log N(s) against log(1/s), clamped to [2,3].
inline double fractal_dimension(const ScalarField& field) {
  const int w = field.width(), h = field.height();
  if (w < 16 || h < 16)
    throw std::invalid_argument("fractal_dimension: field must be at least 16x16");

  const auto [min_it, max_it] = std::minmax_element(field.begin(), field.end());
  const double fmin = *min_it;
  const double range = *max_it - *min_it;
  const int side = std::min(w, h);

  static constexpr int kSizes[] = {2, 3, 4, 6, 8, 12, 16, 32};
  std::vector<double> xs, ys;
  for (int s : kSizes) {
    if (s > side / 2) break;
    const double box_h = s * range / side;
    double count = 0.0;
    for (int by = 0; by < h; by += s) {
      for (int bx = 0; bx < w; bx += s) {
        double bmin = field.at(bx, by), bmax = bmin;
        const int ey = std::min(h, by + s), ex = std::min(w, bx + s);
        for (int y = by; y < ey; ++y)
          for (int x = bx; x < ex; ++x) {
            const double v = field.at(x, y);
            bmin = std::min(bmin, v);
            bmax = std::max(bmax, v);
          }
        if (box_h <= 0.0) {
          count += 1.0;
        } else {
          const double lo_box = std::floor((bmin - fmin) / box_h);
          const double hi_box = std::floor((bmax - fmin) / box_h);
          count += hi_box - lo_box + 1.0;
        }
      }
    }
    xs.push_back(std::log(1.0 / s));
    ys.push_back(std::log(count));
  }

  // Least-squares slope of ys against xs.
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return std::clamp(slope, 2.0, 3.0);
}

// N_D = round(alpha * (F_A - 2)^kappa), clamped to >= 1.
inline int desired_region_count(double f_eg, double f_te, double alpha = 170.0,
                                double kappa = 2.0) {
  const double f_avg = (f_eg + f_te) / 2.0;
  const double raw = alpha * std::pow(std::max(0.0, f_avg - 2.0), kappa);
  return std::max(1, static_cast<int>(std::floor(raw + 0.5)));
}

inline ComplexityEstimate estimate_complexity(const ScalarField& eg_normalized,
                                              const ScalarField& entropy_normalized,
                                              double alpha = 170.0,
                                              double kappa = 2.0) {
  ComplexityEstimate est;
  est.f_eg = fractal_dimension(eg_normalized);
  est.f_te = fractal_dimension(entropy_normalized);
  est.f_avg = (est.f_eg + est.f_te) / 2.0;
  est.desired_regions = desired_region_count(est.f_eg, est.f_te, alpha, kappa);
  return est;
}

}  // namespace ssrg
