#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ssrg/image.hpp"

namespace ssrg {

// sRGB companding, D65 reference white.
namespace detail {

inline double srgb_decompand(double c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

inline double srgb_compand(double c) {
  return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

inline constexpr double kXn = 0.95047;
inline constexpr double kYn = 1.0;
inline constexpr double kZn = 1.08883;

inline double lab_f(double t) {
  constexpr double eps = 216.0 / 24389.0;   // (6/29)^3
  constexpr double kappa = 841.0 / 108.0;   // 3*(6/29)^2 inverted below
  return t > eps ? std::cbrt(t) : kappa * t + 4.0 / 29.0;
}

inline double lab_f_inv(double f) {
  constexpr double delta = 6.0 / 29.0;
  return f > delta ? f * f * f : (f - 4.0 / 29.0) * 3.0 * delta * delta;
}

}  // namespace detail

inline Lab srgb_to_lab(Rgb8 c) {
  const double r = detail::srgb_decompand(c.r / 255.0);
  const double g = detail::srgb_decompand(c.g / 255.0);
  const double b = detail::srgb_decompand(c.b / 255.0);
  const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
  const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
  const double fx = detail::lab_f(x / detail::kXn);
  const double fy = detail::lab_f(y / detail::kYn);
  const double fz = detail::lab_f(z / detail::kZn);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

inline Rgb8 lab_to_srgb(Lab c) {
  const double fy = (c.l + 16.0) / 116.0;
  const double fx = fy + c.a / 500.0;
  const double fz = fy - c.b / 200.0;
  const double x = detail::lab_f_inv(fx) * detail::kXn;
  const double y = detail::lab_f_inv(fy) * detail::kYn;
  const double z = detail::lab_f_inv(fz) * detail::kZn;
  const double r = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z;
  const double g = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z;
  const double b = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z;
  auto to8 = [](double v) {
    v = detail::srgb_compand(std::clamp(v, 0.0, 1.0));
    return static_cast<std::uint8_t>(std::lround(v * 255.0));
  };
  return {to8(r), to8(g), to8(b)};
}

inline LabImage srgb_to_lab(const RgbImage& image) {
  LabImage out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x)
      out.at(x, y) = srgb_to_lab(image.at(x, y));
  return out;
}

inline double color_distance(Lab c1, Lab c2) {
  const double dl = c1.l - c2.l;
  const double da = c1.a - c2.a;
  const double db = c1.b - c2.b;
  return std::sqrt(dl * dl + da * da + db * db);
}

struct BilateralParams {
  int window_side = 7;
  double sigma_d = 2.0;
  double sigma_r = 8.0;
  int passes = 2;
};

// One pass of the bilateral filter, applied per channel with a per-channel
// range weight. Windows are truncated at image borders and the weights
// renormalized over the available pixels.
inline LabImage bilateral_filter_pass(const LabImage& image,
                                      const BilateralParams& p) {
  if (p.window_side < 1 || p.window_side % 2 == 0)
    throw std::invalid_argument("bilateral_filter: window_side must be odd");
  if (p.sigma_d <= 0.0 || p.sigma_r <= 0.0)
    throw std::invalid_argument("bilateral_filter: sigmas must be positive");

  const int radius = p.window_side / 2;
  std::vector<double> spatial(static_cast<std::size_t>(p.window_side) *
                              p.window_side);
  for (int dy = -radius; dy <= radius; ++dy)
    for (int dx = -radius; dx <= radius; ++dx)
      spatial[(dy + radius) * p.window_side + (dx + radius)] =
          std::exp(-(dx * dx + dy * dy) / (2.0 * p.sigma_d * p.sigma_d));

  const double inv_2sr2 = 1.0 / (2.0 * p.sigma_r * p.sigma_r);
  LabImage out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const Lab center = image.at(x, y);
      double num[3] = {0, 0, 0};
      double den[3] = {0, 0, 0};
      const int y0 = std::max(0, y - radius), y1 = std::min(image.height() - 1, y + radius);
      const int x0 = std::max(0, x - radius), x1 = std::min(image.width() - 1, x + radius);
      for (int yy = y0; yy <= y1; ++yy) {
        for (int xx = x0; xx <= x1; ++xx) {
          const double ws =
              spatial[(yy - y + radius) * p.window_side + (xx - x + radius)];
          const Lab v = image.at(xx, yy);
          const double dc[3] = {v.l - center.l, v.a - center.a, v.b - center.b};
          const double ch[3] = {v.l, v.a, v.b};
          for (int k = 0; k < 3; ++k) {
            const double w = ws * std::exp(-dc[k] * dc[k] * inv_2sr2);
            num[k] += w * ch[k];
            den[k] += w;
          }
        }
      }
      out.at(x, y) = {num[0] / den[0], num[1] / den[1], num[2] / den[2]};
    }
  }
  return out;
}

inline LabImage bilateral_filter(LabImage image, const BilateralParams& p = {}) {
  for (int i = 0; i < p.passes; ++i) image = bilateral_filter_pass(image, p);
  return image;
}

// Affine rescale of a field onto [lo,hi]; a constant field maps to all lo.
inline ScalarField normalize_field(const ScalarField& field, double lo = 0.0,
                                   double hi = 255.0) {
  const auto [min_it, max_it] = std::minmax_element(field.begin(), field.end());
  ScalarField out(field.width(), field.height(), lo);
  if (*max_it > *min_it) {
    const double scale = (hi - lo) / (*max_it - *min_it);
    auto dst = out.begin();
    for (double v : field) *dst++ = lo + (v - *min_it) * scale;
  }
  return out;
}

// Magnitude of the CIELAB color vector per pixel, rescaled into [0,255].
inline ScalarField color_vector_magnitude(const LabImage& image) {
  ScalarField raw(image.width(), image.height());
  auto dst = raw.begin();
  for (const Lab& c : image)
    *dst++ = std::sqrt(c.l * c.l + c.a * c.a + c.b * c.b);
  return normalize_field(raw);
}

}  // namespace ssrg
