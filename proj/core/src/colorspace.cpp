#include "rriqa/colorspace.hpp"

#include <cmath>

#include "rriqa/error.hpp"

namespace rriqa {

namespace {

double srgb_to_linear(double v) noexcept {
  const double c = v / 255.0;
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_compand(double t) noexcept {
  constexpr double kDelta = 6.0 / 29.0;
  return t > kDelta * kDelta * kDelta ? std::cbrt(t) : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

double row_sum(int row) noexcept {
  return kSrgbToXyz[row][0] + kSrgbToXyz[row][1] + kSrgbToXyz[row][2];
}

}  // namespace

std::string_view to_string(ColorSpace space) noexcept {
  switch (space) {
    case ColorSpace::Grayscale: return "gray";
    case ColorSpace::Rgb: return "rgb";
    case ColorSpace::Cielab: return "lab";
  }
  return "unknown";
}

ColorSpace parse_color_space(std::string_view text) {
  if (text == "gray" || text == "grayscale") return ColorSpace::Grayscale;
  if (text == "rgb") return ColorSpace::Rgb;
  if (text == "lab" || text == "cielab") return ColorSpace::Cielab;
  throw Error(Errc::InvalidArgument, "unknown color space '" + std::string(text) + "'");
}

Lab srgb_to_lab(double r, double g, double b) noexcept {
  const double lr = srgb_to_linear(r);
  const double lg = srgb_to_linear(g);
  const double lb = srgb_to_linear(b);
  std::array<double, 3> f{};
  for (int row = 0; row < 3; ++row) {
    const double v = kSrgbToXyz[row][0] * lr + kSrgbToXyz[row][1] * lg + kSrgbToXyz[row][2] * lb;
    f[row] = lab_compand(v / row_sum(row));
  }
  // Neutral inputs give f[0] == f[1] == f[2] up to rounding; snap so a*, b* are exactly zero.
  if (r == g && g == b) {
    return {116.0 * f[1] - 16.0, 0.0, 0.0};
  }
  return {116.0 * f[1] - 16.0, 500.0 * (f[0] - f[1]), 200.0 * (f[1] - f[2])};
}

ChannelStack to_grayscale(const RgbImage& image) {
  ImagePlane y(image.width(), image.height());
  auto out = y.values();
  const auto r = image.r.values();
  const auto g = image.g.values();
  const auto b = image.b.values();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = kLumaWeights[0] * r[i] + kLumaWeights[1] * g[i] + kLumaWeights[2] * b[i];
  }
  ChannelStack stack{ColorSpace::Grayscale, {}};
  stack.channels.push_back({"Y", std::move(y)});
  return stack;
}

ChannelStack to_rgb_stack(const RgbImage& image) {
  ChannelStack stack{ColorSpace::Rgb, {}};
  stack.channels.push_back({"R", image.r});
  stack.channels.push_back({"G", image.g});
  stack.channels.push_back({"B", image.b});
  return stack;
}

ChannelStack to_cielab(const RgbImage& image) {
  const int w = image.width();
  const int h = image.height();
  ImagePlane l(w, h), a(w, h), bb(w, h);
  const auto r = image.r.values();
  const auto g = image.g.values();
  const auto b = image.b.values();
  auto lv = l.values();
  auto av = a.values();
  auto bv = bb.values();
  for (std::size_t i = 0; i < lv.size(); ++i) {
    const Lab lab = srgb_to_lab(r[i], g[i], b[i]);
    lv[i] = lab.l;
    av[i] = lab.a;
    bv[i] = lab.b;
  }
  ChannelStack stack{ColorSpace::Cielab, {}};
  stack.channels.push_back({"L", std::move(l)});
  stack.channels.push_back({"a", std::move(a)});
  stack.channels.push_back({"b", std::move(bb)});
  return stack;
}

ChannelStack to_color_space(const RgbImage& image, ColorSpace space) {
  switch (space) {
    case ColorSpace::Grayscale: return to_grayscale(image);
    case ColorSpace::Rgb: return to_rgb_stack(image);
    case ColorSpace::Cielab: return to_cielab(image);
  }
  throw Error(Errc::InvalidArgument, "unknown color space");
}

}  // namespace rriqa
