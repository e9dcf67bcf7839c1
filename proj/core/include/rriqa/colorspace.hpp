#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "rriqa/image.hpp"

namespace rriqa {

enum class ColorSpace { Grayscale, Rgb, Cielab };

std::string_view to_string(ColorSpace space) noexcept;
// Accepts "gray"/"grayscale", "rgb", "lab"/"cielab". Throws InvalidArgument otherwise.
ColorSpace parse_color_space(std::string_view text);

struct NamedPlane {
  std::string name;
  ImagePlane plane;
};

// Grayscale carries one channel, RGB and CIELAB carry three; all planes share dimensions.
struct ChannelStack {
  ColorSpace space = ColorSpace::Grayscale;
  std::vector<NamedPlane> channels;
};

// BT.601 luma weights.
inline constexpr std::array<double, 3> kLumaWeights{0.299, 0.587, 0.114};

// sRGB primaries to CIE XYZ, D65 white. The row sums define the reference white so
// that (255, 255, 255) lands exactly on L* = 100, a* = b* = 0.
inline constexpr std::array<std::array<double, 3>, 3> kSrgbToXyz{{
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
}};

struct Lab {
  double l;
  double a;
  double b;
};

// Single-pixel sRGB (0..255 per channel) to CIELAB under D65.
Lab srgb_to_lab(double r, double g, double b) noexcept;

ChannelStack to_grayscale(const RgbImage& image);
ChannelStack to_rgb_stack(const RgbImage& image);
ChannelStack to_cielab(const RgbImage& image);
ChannelStack to_color_space(const RgbImage& image, ColorSpace space);

}  // namespace rriqa
