#include "rriqa/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "rriqa/error.hpp"

namespace rriqa {

namespace {

// JPEG Annex K luminance table.
constexpr std::array<int, 64> kJpegLuma{
    16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
    14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
    18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99};

double to_byte(double v) { return std::clamp(std::round(v), 0.0, 255.0); }

ImagePlane requantize(ImagePlane p) {
  for (double& v : p.values()) v = to_byte(v);
  return p;
}

template <class F>
RgbImage per_channel(const RgbImage& img, F&& f) {
  ImagePlane r = requantize(f(img.r, 0));
  ImagePlane g = requantize(f(img.g, 1));
  ImagePlane b = requantize(f(img.b, 2));
  return RgbImage(std::move(r), std::move(g), std::move(b));
}

ImagePlane add_noise(const ImagePlane& p, double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, sigma);
  ImagePlane out = p;
  for (double& v : out.values()) v += n(rng);
  return out;
}

ImagePlane quantize(const ImagePlane& p, double step) {
  ImagePlane out = p;
  for (double& v : out.values()) v = std::round(v / step) * step;
  return out;
}

// Orthonormal 8-point DCT-II basis.
std::array<double, 64> dct_basis() {
  std::array<double, 64> c{};
  for (int k = 0; k < 8; ++k) {
    const double s = k == 0 ? std::sqrt(0.125) : 0.5;
    for (int n = 0; n < 8; ++n) {
      c[k * 8 + n] = s * std::cos(std::numbers::pi * (2 * n + 1) * k / 16.0);
    }
  }
  return c;
}

ImagePlane jpeg_like(const ImagePlane& p, double scale) {
  static const std::array<double, 64> c = dct_basis();
  ImagePlane out = p;
  const int w = p.width();
  const int h = p.height();
  std::array<double, 64> block{};
  std::array<double, 64> tmp{};
  for (int by = 0; by < h; by += 8) {
    for (int bx = 0; bx < w; bx += 8) {
      for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
          block[y * 8 + x] = p(std::min(bx + x, w - 1), std::min(by + y, h - 1)) - 128.0;
        }
      }
      // Forward: rows then columns.
      for (int y = 0; y < 8; ++y) {
        for (int k = 0; k < 8; ++k) {
          double s = 0.0;
          for (int n = 0; n < 8; ++n) s += c[k * 8 + n] * block[y * 8 + n];
          tmp[y * 8 + k] = s;
        }
      }
      for (int k = 0; k < 8; ++k) {
        for (int x = 0; x < 8; ++x) {
          double s = 0.0;
          for (int n = 0; n < 8; ++n) s += c[k * 8 + n] * tmp[n * 8 + x];
          block[k * 8 + x] = s;
        }
      }
      for (int i = 0; i < 64; ++i) {
        const double q = std::max(1.0, kJpegLuma[static_cast<std::size_t>(i)] * scale);
        block[i] = std::round(block[i] / q) * q;
      }
      for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
          double s = 0.0;
          for (int k = 0; k < 8; ++k) s += c[k * 8 + y] * block[k * 8 + x];
          tmp[y * 8 + x] = s;
        }
      }
      for (int y = 0; y < 8 && by + y < h; ++y) {
        for (int x = 0; x < 8 && bx + x < w; ++x) {
          double s = 0.0;
          for (int k = 0; k < 8; ++k) s += c[k * 8 + x] * tmp[y * 8 + k];
          out(bx + x, by + y) = s + 128.0;
        }
      }
    }
  }
  return out;
}

void require_level(int level) {
  if (level < 1) throw Error(Errc::InvalidArgument, "distortion level must be >= 1");
}

}  // namespace

std::string_view to_string(SyntheticDistortion d) noexcept {
  switch (d) {
    case SyntheticDistortion::Noise:
      return "noise";
    case SyntheticDistortion::Blur:
      return "blur";
    case SyntheticDistortion::Quantize:
      return "quantize";
    case SyntheticDistortion::JpegLike:
      return "jpeg";
  }
  return "unknown";
}

SyntheticDistortion parse_synthetic_distortion(std::string_view text) {
  for (SyntheticDistortion d : {SyntheticDistortion::Noise, SyntheticDistortion::Blur,
                                SyntheticDistortion::Quantize, SyntheticDistortion::JpegLike}) {
    if (to_string(d) == text) return d;
  }
  throw Error(Errc::InvalidArgument, "unknown synthetic distortion '" + std::string(text) + "'");
}

int tid_type(SyntheticDistortion d) noexcept {
  switch (d) {
    case SyntheticDistortion::Noise:
      return 1;
    case SyntheticDistortion::Blur:
      return 8;
    case SyntheticDistortion::Quantize:
      return 7;
    case SyntheticDistortion::JpegLike:
      return 10;
  }
  return 0;
}

double noise_sigma(int level) noexcept { return 6.0 * level; }
double blur_sigma(int level) noexcept { return 0.6 * level; }
double quantize_step(int level) noexcept { return 8.0 * level; }
double jpeg_table_scale(int level) noexcept { return std::ldexp(1.0, level - 2); }

ImagePlane gaussian_blur(const ImagePlane& plane, double sigma) {
  if (!(sigma > 0.0)) return plane;
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-0.5 * i * i / (sigma * sigma));
    k[static_cast<std::size_t>(i + radius)] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  const int w = plane.width();
  const int h = plane.height();
  ImagePlane tmp(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        s += k[static_cast<std::size_t>(i + radius)] * plane(std::clamp(x + i, 0, w - 1), y);
      }
      tmp(x, y) = s;
    }
  }
  ImagePlane out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        s += k[static_cast<std::size_t>(i + radius)] * tmp(x, std::clamp(y + i, 0, h - 1));
      }
      out(x, y) = s;
    }
  }
  return out;
}

RgbImage dead_leaves(int width, int height, std::uint64_t seed) {
  if (width < 1 || height < 1) {
    throw Error(Errc::InvalidArgument, "dead-leaves image must be non-empty");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r_min = 2.0;
  const double r_max = 0.25 * std::min(width, height) + r_min;
  std::array<ImagePlane, 3> planes{ImagePlane(width, height, 128.0),
                                   ImagePlane(width, height, 128.0),
                                   ImagePlane(width, height, 128.0)};
  std::vector<std::uint8_t> covered(static_cast<std::size_t>(width) * height, 0);
  std::size_t remaining = covered.size();
  // Front to back: each disc paints only pixels no earlier disc covered.
  for (int disc = 0; disc < 20000 && remaining > 0; ++disc) {
    // Radius density proportional to r^-3 on [r_min, r_max].
    const double u = unit(rng);
    const double r = 1.0 / std::sqrt((1.0 - u) / (r_min * r_min) + u / (r_max * r_max));
    const double cx = unit(rng) * width;
    const double cy = unit(rng) * height;
    std::array<double, 3> color{};
    for (double& c : color) c = 30.0 + 195.0 * unit(rng);
    const double gx = (unit(rng) - 0.5) * 40.0 / r;
    const double gy = (unit(rng) - 0.5) * 40.0 / r;
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - r)));
    const int x1 = std::min(width - 1, static_cast<int>(std::ceil(cx + r)));
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - r)));
    const int y1 = std::min(height - 1, static_cast<int>(std::ceil(cy + r)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const double dx = x + 0.5 - cx;
        const double dy = y + 0.5 - cy;
        if (dx * dx + dy * dy > r * r) continue;
        const std::size_t i = static_cast<std::size_t>(y) * width + x;
        if (covered[i]) continue;
        covered[i] = 1;
        --remaining;
        const double shade = gx * dx + gy * dy;
        for (int c = 0; c < 3; ++c) planes[static_cast<std::size_t>(c)](x, y) = color[c] + shade;
      }
    }
  }
  std::normal_distribution<double> grain(0.0, 2.0);
  for (ImagePlane& p : planes) {
    for (double& v : p.values()) v = to_byte(v + grain(rng));
  }
  return RgbImage(std::move(planes[0]), std::move(planes[1]), std::move(planes[2]));
}

RgbImage distort(const RgbImage& image, SyntheticDistortion d, int level, std::uint64_t seed) {
  require_level(level);
  switch (d) {
    case SyntheticDistortion::Noise: {
      std::mt19937_64 rng(seed);
      return per_channel(image,
                         [&](const ImagePlane& p, int) { return add_noise(p, noise_sigma(level), rng); });
    }
    case SyntheticDistortion::Blur:
      return per_channel(image,
                         [&](const ImagePlane& p, int) { return gaussian_blur(p, blur_sigma(level)); });
    case SyntheticDistortion::Quantize:
      return per_channel(image,
                         [&](const ImagePlane& p, int) { return quantize(p, quantize_step(level)); });
    case SyntheticDistortion::JpegLike:
      return per_channel(image,
                         [&](const ImagePlane& p, int) { return jpeg_like(p, jpeg_table_scale(level)); });
  }
  throw Error(Errc::InvalidArgument, "unknown synthetic distortion");
}

}  // namespace rriqa
