#pragma once

// Deterministic synthetic inputs shared by the unit and acceptance suites.

#include <random>

#include "ssrg/color.hpp"
#include "ssrg/image.hpp"

namespace ssrg::testing {

inline ScalarField constant_field(int w, int h, double value) {
  return ScalarField(w, h, value);
}

// Vertical two-tone field: columns < edge_x get `left`, the rest `right`.
inline ScalarField two_tone_field(int w, int h, int edge_x, double left,
                                  double right) {
  ScalarField f(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) f.at(x, y) = x < edge_x ? left : right;
  return f;
}

inline ScalarField random_field(int w, int h, double lo, double hi,
                                unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  ScalarField f(w, h);
  for (double& v : f) v = dist(rng);
  return f;
}

inline RgbImage constant_image(int w, int h, Rgb8 color) {
  return RgbImage(w, h, color);
}

// Vertical two-tone RGB image; gray levels chosen by the caller.
inline RgbImage two_tone_image(int w, int h, int edge_x, Rgb8 left, Rgb8 right) {
  RgbImage img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img.at(x, y) = x < edge_x ? left : right;
  return img;
}

// Random axis-aligned flat rectangles over a flat background. Flat interiors
// guarantee seed SERs exist.
inline RgbImage random_rectangles_image(int w, int h, int rect_count,
                                        unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> cx(0, w - 1), cy(0, h - 1);
  std::uniform_int_distribution<int> chan(0, 255);
  RgbImage img(w, h, {static_cast<std::uint8_t>(chan(rng)),
                      static_cast<std::uint8_t>(chan(rng)),
                      static_cast<std::uint8_t>(chan(rng))});
  for (int i = 0; i < rect_count; ++i) {
    int x0 = cx(rng), x1 = cx(rng), y0 = cy(rng), y1 = cy(rng);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    const Rgb8 color{static_cast<std::uint8_t>(chan(rng)),
                     static_cast<std::uint8_t>(chan(rng)),
                     static_cast<std::uint8_t>(chan(rng))};
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) img.at(x, y) = color;
  }
  return img;
}

// Rectangles plus low-amplitude per-pixel noise, a stand-in for a natural
// photograph with both flat and textured areas.
inline RgbImage natural_like_image(int w, int h, unsigned seed) {
  RgbImage img = random_rectangles_image(w, h, 24, seed);
  std::mt19937 rng(seed + 1);
  std::uniform_int_distribution<int> noise(-3, 3);
  for (Rgb8& p : img) {
    auto jitter = [&](std::uint8_t c) {
      const int v = static_cast<int>(c) + noise(rng);
      return static_cast<std::uint8_t>(std::clamp(v, 0, 255));
    };
    p = {jitter(p.r), jitter(p.g), jitter(p.b)};
  }
  return img;
}

}  // namespace ssrg::testing
