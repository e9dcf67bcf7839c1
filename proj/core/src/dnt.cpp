#include <algorithm>
#include <cmath>

#include "rriqa/decompose.hpp"

namespace rriqa {

namespace {

constexpr double kMultiplierFloor = 1e-6;
constexpr double kZeroVariance = 1e-12;

double variance(std::span<const double> v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(v.size());
}

ImagePlane normalize(const ImagePlane& band) {
  const int w = band.width();
  const int h = band.height();
  ImagePlane out(w, h);
  const double var = variance(band.values());
  if (var < kZeroVariance) {
    return out;
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double energy = 0.0;
      int count = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        const int yy = y + dy;
        if (yy < 0 || yy >= h) continue;
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = x + dx;
          if (xx < 0 || xx >= w) continue;
          energy += band(xx, yy) * band(xx, yy);
          ++count;
        }
      }
      const double z = std::max(std::sqrt(energy / count / var), kMultiplierFloor);
      out(x, y) = band(x, y) / z;
    }
  }
  return out;
}

}  // namespace

SubbandSet dnt(const ImagePlane& plane, const DecompositionConfig& config) {
  SubbandSet bands = wavelet(plane, config);
  bands.transform = Transform::WaveletDnt;
  for (Subband& sb : bands.subbands) {
    if (sb.kind == BandKind::Detail) {
      sb.coefficients = normalize(sb.coefficients);
    }
  }
  return bands;
}

}  // namespace rriqa
