#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rriqa/decompose.hpp"
#include "rriqa/error.hpp"

using rriqa::BandKind;
using rriqa::DecompositionConfig;
using rriqa::ImagePlane;

namespace {

ImagePlane noise_plane(int w, int h, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  ImagePlane p(w, h);
  for (double& v : p.values()) v = n(rng);
  return p;
}

double relative_rmse(const ImagePlane& a, const ImagePlane& b) {
  double e = 0.0;
  double n = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    e += (a.values()[i] - b.values()[i]) * (a.values()[i] - b.values()[i]);
    n += b.values()[i] * b.values()[i];
  }
  return std::sqrt(e / n);
}

}  // namespace

TEST(SteerablePyramid, BandLayout) {
  const auto set = rriqa::steerable_pyramid(noise_plane(64, 48, 1), DecompositionConfig{});
  ASSERT_EQ(set.subbands.size(), 14u);
  EXPECT_EQ(set.subbands.front().kind, BandKind::Highpass);
  EXPECT_EQ(set.subbands.back().kind, BandKind::Lowpass);
  const auto oriented = set.feature_bands();
  ASSERT_EQ(oriented.size(), 12u);
  for (const auto* b : oriented) {
    EXPECT_EQ(b->kind, BandKind::Oriented);
    EXPECT_EQ(b->coefficients.width(), 64 >> b->scale);
    EXPECT_EQ(b->coefficients.height(), 48 >> b->scale);
  }
}

TEST(SteerablePyramid, ConstantPlaneHasZeroBandpass) {
  const auto set = rriqa::steerable_pyramid(ImagePlane(64, 64, 117.0), DecompositionConfig{});
  for (const auto* b : set.feature_bands()) {
    for (double v : b->coefficients.values()) EXPECT_NEAR(v, 0.0, 1e-9);
  }
}

TEST(SteerablePyramid, RoundTrip) {
  const ImagePlane p = noise_plane(128, 96, 2);
  const auto set = rriqa::steerable_pyramid(p, DecompositionConfig{});
  EXPECT_LT(relative_rmse(rriqa::reconstruct_steerable_pyramid(set), p), 1e-3);
}

TEST(SteerablePyramid, Linear) {
  const ImagePlane p = noise_plane(64, 64, 3);
  ImagePlane q = p;
  for (double& v : q.values()) v *= -2.5;
  const auto a = rriqa::steerable_pyramid(p, DecompositionConfig{});
  const auto b = rriqa::steerable_pyramid(q, DecompositionConfig{});
  for (std::size_t s = 0; s < a.subbands.size(); ++s) {
    const auto av = a.subbands[s].coefficients.values();
    const auto bv = b.subbands[s].coefficients.values();
    double scale = 0.0;
    for (double v : av) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < av.size(); ++i) EXPECT_NEAR(bv[i], -2.5 * av[i], 1e-9 * 2.5 * scale);
  }
}

TEST(SteerablePyramid, OrientationSelectivity) {
  // Vertical stripes vary along x only: the band tuned to horizontal frequency wins.
  ImagePlane p(64, 64);
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) p(x, y) = std::sin(2.0 * M_PI * x / 4.0);
  }
  const auto set = rriqa::steerable_pyramid(p, DecompositionConfig{});
  std::vector<double> energy(4, 0.0);
  for (const auto* b : set.feature_bands()) {
    if (b->scale != 0) continue;
    for (double v : b->coefficients.values()) energy[static_cast<std::size_t>(b->orientation)] += v * v;
  }
  EXPECT_GT(energy[0], 10.0 * energy[2]);
}

TEST(SteerablePyramid, Errors) {
  const auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const rriqa::Error& e) {
      return e.code();
    }
    return rriqa::Errc::Io;
  };
  EXPECT_EQ(code([] { rriqa::steerable_pyramid(ImagePlane(60, 64), DecompositionConfig{}); }),
            rriqa::Errc::InvalidArgument);
  EXPECT_EQ(code([] { rriqa::steerable_pyramid(ImagePlane(4, 4), DecompositionConfig{}); }),
            rriqa::Errc::ImageTooSmall);
  DecompositionConfig bad;
  bad.orientations = 0;
  EXPECT_EQ(code([&] { rriqa::steerable_pyramid(ImagePlane(64, 64), bad); }),
            rriqa::Errc::InvalidArgument);
}
