#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ssrg {

struct Rgb8 {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb8&) const = default;
};

// CIELAB triple. L* in [0,100] for in-gamut colors, a*/b* signed.
struct Lab {
  double l = 0.0, a = 0.0, b = 0.0;
  bool operator==(const Lab&) const = default;
};

template <typename T>
class Image {
 public:
  Image() = default;
  Image(int width, int height, T fill = T{})
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(width) * height, fill) {
    if (width < 1 || height < 1)
      throw std::invalid_argument("Image: dimensions must be >= 1");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
  const T& at(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }
  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  bool operator==(const Image&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using RgbImage = Image<Rgb8>;
using LabImage = Image<Lab>;
using ScalarField = Image<double>;
using LabelMap = Image<std::int32_t>;

inline constexpr std::int32_t kUnlabeled = 0;

}  // namespace ssrg
