#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rriqa/error.hpp"
#include "rriqa/synthetic.hpp"

using rriqa::SyntheticDistortion;

namespace {

double mse(const rriqa::RgbImage& a, const rriqa::RgbImage& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.r.size(); ++i) {
    e += std::pow(a.r.values()[i] - b.r.values()[i], 2) + std::pow(a.g.values()[i] - b.g.values()[i], 2) +
         std::pow(a.b.values()[i] - b.b.values()[i], 2);
  }
  return e / (3.0 * static_cast<double>(a.r.size()));
}

constexpr SyntheticDistortion kAll[] = {SyntheticDistortion::Noise, SyntheticDistortion::Blur,
                                        SyntheticDistortion::Quantize, SyntheticDistortion::JpegLike};

}  // namespace

TEST(Synthetic, Names) {
  for (auto d : kAll) EXPECT_EQ(rriqa::parse_synthetic_distortion(rriqa::to_string(d)), d);
  EXPECT_THROW(rriqa::parse_synthetic_distortion("ringing"), rriqa::Error);
  EXPECT_EQ(rriqa::tid_type(SyntheticDistortion::Noise), 1);
  EXPECT_EQ(rriqa::tid_type(SyntheticDistortion::Blur), 8);
  EXPECT_EQ(rriqa::tid_type(SyntheticDistortion::Quantize), 7);
  EXPECT_EQ(rriqa::tid_type(SyntheticDistortion::JpegLike), 10);
}

TEST(Synthetic, SeverityGrows) {
  EXPECT_GT(rriqa::noise_sigma(5), rriqa::noise_sigma(1));
  for (int l = 1; l < 5; ++l) {
    EXPECT_LT(rriqa::noise_sigma(l), rriqa::noise_sigma(l + 1));
    EXPECT_LT(rriqa::blur_sigma(l), rriqa::blur_sigma(l + 1));
    EXPECT_LT(rriqa::quantize_step(l), rriqa::quantize_step(l + 1));
    EXPECT_LT(rriqa::jpeg_table_scale(l), rriqa::jpeg_table_scale(l + 1));
  }
}

TEST(Synthetic, DeadLeavesDeterministicAndInRange) {
  const auto a = rriqa::dead_leaves(96, 64, 3);
  const auto b = rriqa::dead_leaves(96, 64, 3);
  const auto c = rriqa::dead_leaves(96, 64, 4);
  EXPECT_EQ(a.r, b.r);
  EXPECT_EQ(a.b, b.b);
  EXPECT_NE(a.r, c.r);
  for (double v : a.g.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 255.0);
    EXPECT_EQ(v, std::round(v));
  }
  EXPECT_GT(rriqa::oracle::naive_variance(a.r.values()), 100.0);
}

TEST(Synthetic, DistortionDeterministicAndMonotone) {
  const auto ref = rriqa::dead_leaves(64, 64, 5);
  for (auto d : kAll) {
    EXPECT_EQ(rriqa::distort(ref, d, 3, 9).r, rriqa::distort(ref, d, 3, 9).r);
    double previous = 0.0;
    for (int l = 1; l <= 5; ++l) {
      const double e = mse(ref, rriqa::distort(ref, d, l, 9));
      EXPECT_GT(e, previous) << rriqa::to_string(d) << " level " << l;
      previous = e;
    }
  }
}

TEST(Synthetic, NoiseStrength) {
  const auto ref = rriqa::dead_leaves(128, 128, 6);
  rriqa::RgbImage flat = ref;
  for (auto* p : {&flat.r, &flat.g, &flat.b}) {
    for (double& v : p->values()) v = 128.0;
  }
  const auto noisy = rriqa::distort(flat, SyntheticDistortion::Noise, 2, 1);
  EXPECT_NEAR(std::sqrt(mse(flat, noisy)), rriqa::noise_sigma(2), 0.3);
}

TEST(Synthetic, BlurPreservesConstantsAndMean) {
  const rriqa::ImagePlane flat(20, 20, 42.0);
  for (double v : rriqa::gaussian_blur(flat, 2.0).values()) EXPECT_NEAR(v, 42.0, 1e-12);
  rriqa::ImagePlane impulse(31, 31, 0.0);
  impulse(15, 15) = 1.0;
  const auto b = rriqa::gaussian_blur(impulse, 1.5);
  double sum = 0.0;
  for (double v : b.values()) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_NEAR(b(14, 15), b(16, 15), 1e-15);
  EXPECT_NEAR(b(15, 14), b(14, 15), 1e-15);
}

TEST(Synthetic, Errors) {
  const auto ref = rriqa::dead_leaves(16, 16, 1);
  EXPECT_THROW(rriqa::distort(ref, SyntheticDistortion::Noise, 0, 1), rriqa::Error);
  EXPECT_THROW(rriqa::dead_leaves(0, 16, 1), rriqa::Error);
}
