#include "rriqa/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rriqa/error.hpp"

namespace rriqa {

namespace {

std::size_t checked_area(int width, int height) {
  if (width < 0 || height < 0) {
    throw Error(Errc::InvalidArgument, "negative image dimensions");
  }
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace

ImagePlane::ImagePlane(int width, int height, double fill)
    : width_(width), height_(height), data_(checked_area(width, height), fill) {
  if (!std::isfinite(fill)) {
    throw Error(Errc::InvalidArgument, "plane fill value is not finite");
  }
}

ImagePlane::ImagePlane(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (data_.size() != checked_area(width, height)) {
    throw Error(Errc::InvalidArgument, "plane data length " + std::to_string(data_.size()) +
                                           " does not match " + std::to_string(width) + "x" +
                                           std::to_string(height));
  }
  if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(Errc::InvalidArgument, "plane contains non-finite values");
  }
}

RgbImage::RgbImage(ImagePlane red, ImagePlane green, ImagePlane blue)
    : r(std::move(red)), g(std::move(green)), b(std::move(blue)) {
  if (r.width() != g.width() || r.width() != b.width() || r.height() != g.height() ||
      r.height() != b.height()) {
    throw Error(Errc::InvalidArgument, "RGB planes differ in size");
  }
  for (const ImagePlane* p : {&r, &g, &b}) {
    const auto v = p->values();
    if (std::any_of(v.begin(), v.end(), [](double x) { return x < 0.0 || x > 255.0; })) {
      throw Error(Errc::InvalidArgument, "RGB channel value outside [0, 255]");
    }
  }
}

RgbImage::RgbImage(int width, int height, double fill)
    : RgbImage(ImagePlane(width, height, fill), ImagePlane(width, height, fill),
               ImagePlane(width, height, fill)) {}

ImagePlane crop_to_even(const ImagePlane& plane, int factor) {
  if (factor < 1) {
    throw Error(Errc::InvalidArgument, "crop factor must be >= 1");
  }
  const int w = plane.width() / factor * factor;
  const int h = plane.height() / factor * factor;
  if (w == 0 || h == 0) {
    throw Error(Errc::ImageTooSmall, std::to_string(plane.width()) + "x" +
                                         std::to_string(plane.height()) +
                                         " cannot be cropped to a multiple of " +
                                         std::to_string(factor));
  }
  if (w == plane.width() && h == plane.height()) {
    return plane;
  }
  ImagePlane out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out(x, y) = plane(x, y);
    }
  }
  return out;
}

RgbImage crop_to_even(const RgbImage& image, int factor) {
  return RgbImage(crop_to_even(image.r, factor), crop_to_even(image.g, factor),
                  crop_to_even(image.b, factor));
}

}  // namespace rriqa
