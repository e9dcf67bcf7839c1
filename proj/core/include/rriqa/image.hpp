#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rriqa {

// A single 2-D channel of finite real-valued pixels, row-major.
class ImagePlane {
 public:
  ImagePlane() = default;
  ImagePlane(int width, int height, double fill = 0.0);
  // Throws InvalidArgument if data.size() != width * height or any value is not finite.
  ImagePlane(int width, int height, std::vector<double> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double operator()(int x, int y) const noexcept { return data_[index(x, y)]; }
  double& operator()(int x, int y) noexcept { return data_[index(x, y)]; }

  std::span<const double> values() const noexcept { return data_; }
  std::span<double> values() noexcept { return data_; }

  bool operator==(const ImagePlane&) const = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// Three same-sized planes with values in [0, 255].
struct RgbImage {
  ImagePlane r;
  ImagePlane g;
  ImagePlane b;

  RgbImage() = default;
  // Throws InvalidArgument when the planes disagree in size or leave [0, 255].
  RgbImage(ImagePlane red, ImagePlane green, ImagePlane blue);
  RgbImage(int width, int height, double fill = 0.0);

  int width() const noexcept { return r.width(); }
  int height() const noexcept { return r.height(); }

  bool operator==(const RgbImage&) const = default;
};

// Largest top-left sub-plane whose dimensions are multiples of `factor`.
ImagePlane crop_to_even(const ImagePlane& plane, int factor);
RgbImage crop_to_even(const RgbImage& image, int factor);

}  // namespace rriqa
