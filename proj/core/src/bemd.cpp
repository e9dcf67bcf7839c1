#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rriqa/decompose.hpp"
#include "rriqa/error.hpp"
#include "rriqa/thin_plate.hpp"

namespace rriqa {

namespace {

constexpr int kMinimumSide = 8;
constexpr std::size_t kMinimumExtrema = 3;
constexpr double kEnvelopeTolerance = 1e-4;
constexpr int kEnvelopeIterations = 12;
constexpr double kKnotsPerStep = 2.0;
constexpr int kMaxGridStep = 16;

struct Extrema {
  std::vector<Knot> maxima;
  std::vector<Knot> minima;
};

// Strict extrema over the in-bounds 3x3 neighbourhood.
Extrema find_extrema(const ImagePlane& p) {
  Extrema e;
  const int w = p.width();
  const int h = p.height();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double v = p(x, y);
      bool is_max = true;
      bool is_min = true;
      for (int dy = -1; dy <= 1 && (is_max || is_min); ++dy) {
        const int yy = y + dy;
        if (yy < 0 || yy >= h) continue;
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = x + dx;
          if ((dx == 0 && dy == 0) || xx < 0 || xx >= w) continue;
          const double n = p(xx, yy);
          if (n >= v) is_max = false;
          if (n <= v) is_min = false;
        }
      }
      if (is_max) e.maxima.push_back({x, y, v});
      if (is_min) e.minima.push_back({x, y, v});
    }
  }
  return e;
}

// Envelope grid step from the mean spacing between knots: dense extrema are solved at
// full resolution, sparse ones on a coarser grid where the surface is smooth anyway.
ThinPlateOptions envelope_options(const ImagePlane& p, std::size_t knots) {
  ThinPlateOptions o;
  o.tolerance = kEnvelopeTolerance;
  o.max_iterations = kEnvelopeIterations;
  const double spacing = std::sqrt(static_cast<double>(p.size()) / static_cast<double>(knots));
  o.grid_step = std::clamp(static_cast<int>(spacing / kKnotsPerStep), 1, kMaxGridStep);
  return o;
}

bool has_enough_extrema(const Extrema& e) {
  return e.maxima.size() >= kMinimumExtrema && e.minima.size() >= kMinimumExtrema;
}

// One IMF candidate by sifting; returns false when there is nothing oscillatory left.
bool sift(const ImagePlane& signal, const DecompositionConfig& config, ImagePlane& imf) {
  ImagePlane h = signal;
  bool sifted = false;
  for (int it = 0; it < config.sift_max_iters; ++it) {
    const Extrema e = find_extrema(h);
    if (!has_enough_extrema(e)) break;
    const ImagePlane upper = thin_plate_surface(h.width(), h.height(), e.maxima,
                                                envelope_options(h, e.maxima.size()));
    const ImagePlane lower = thin_plate_surface(h.width(), h.height(), e.minima,
                                                envelope_options(h, e.minima.size()));
    auto hv = h.values();
    const auto uv = upper.values();
    const auto lv = lower.values();
    double change = 0.0;
    double energy = 0.0;
    for (std::size_t i = 0; i < hv.size(); ++i) {
      const double mean = 0.5 * (uv[i] + lv[i]);
      if (!std::isfinite(mean)) {
        throw Error(Errc::SiftingDiverged, "envelope mean is not finite");
      }
      energy += hv[i] * hv[i];
      change += mean * mean;
      hv[i] -= mean;
    }
    sifted = true;
    if (energy == 0.0 || change / energy < config.sift_sd_threshold) break;
  }
  if (sifted) imf = std::move(h);
  return sifted;
}

}  // namespace

SubbandSet bemd(const ImagePlane& plane, const DecompositionConfig& config) {
  config.validate();
  if (plane.width() < kMinimumSide || plane.height() < kMinimumSide) {
    throw Error(Errc::ImageTooSmall, "BEMD needs at least " + std::to_string(kMinimumSide) + "x" +
                                         std::to_string(kMinimumSide) + " pixels");
  }
  SubbandSet out{Transform::Bemd, {}, config};
  ImagePlane residue = plane;
  bool exhausted = false;
  for (int k = 0; k < config.imf_count; ++k) {
    ImagePlane imf(plane.width(), plane.height());
    if (!exhausted && sift(residue, config, imf)) {
      auto rv = residue.values();
      const auto iv = imf.values();
      for (std::size_t i = 0; i < rv.size(); ++i) rv[i] -= iv[i];
    } else {
      exhausted = true;
    }
    out.subbands.push_back({k + 1, 0, BandKind::Imf, std::move(imf)});
  }
  out.subbands.push_back({config.imf_count + 1, 0, BandKind::Residue, std::move(residue)});
  return out;
}

}  // namespace rriqa
