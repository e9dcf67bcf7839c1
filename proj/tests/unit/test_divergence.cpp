#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rriqa/divergence.hpp"
#include "rriqa/error.hpp"

using rriqa::GaussianParams;
using rriqa::GgdParams;

TEST(KldGgd, SelfDivergenceIsZero) {
  const GgdParams p{1.3, 0.7};
  EXPECT_EQ(rriqa::kld_ggd(p, p).value, 0.0);
  EXPECT_EQ(rriqa::kld_ggd(p, p).kind, rriqa::DistanceKind::KldGgd);
}

TEST(KldGgd, GaussianCaseMatchesQuadrature) {
  const double v = rriqa::kld_ggd({1.0, 2.0}, {2.0, 2.0}).value;
  EXPECT_NEAR(v, std::log(2.0) + 1.0 / 8.0 - 0.5, 1e-12);
  EXPECT_NEAR(v, rriqa::oracle::kld_ggd_numeric({1.0, 2.0}, {2.0, 2.0}).value, 1e-9);
  EXPECT_NEAR(v, 0.31815, 1e-5);
}

TEST(KldGgd, LaplacianVsGaussianMatchesQuadrature) {
  const GgdParams p{1.0, 1.0};
  const GgdParams q{2.0, 2.0};
  EXPECT_NEAR(rriqa::kld_ggd(p, q).value, rriqa::oracle::kld_ggd_numeric(p, q).value, 1e-6);
}

TEST(KldGgd, RandomPairsMatchQuadrature) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> alpha(0.1, 10.0);
  std::uniform_real_distribution<double> beta(0.3, 4.0);
  for (int i = 0; i < 40; ++i) {
    const GgdParams p{alpha(rng), beta(rng)};
    const GgdParams q{alpha(rng), beta(rng)};
    const double closed = rriqa::kld_ggd(p, q).value;
    const double numeric = rriqa::oracle::kld_ggd_numeric(p, q).value;
    EXPECT_NEAR(closed, numeric, 1e-6 * std::max(1.0, std::abs(numeric)))
        << p.alpha << " " << p.beta << " " << q.alpha << " " << q.beta;
    EXPECT_GE(closed, 0.0);
  }
}

TEST(KldGgd, JointRescalingInvariance) {
  const GgdParams p{0.8, 1.2};
  const GgdParams q{1.9, 0.6};
  const double a = rriqa::kld_ggd(p, q).value;
  const double b = rriqa::kld_ggd({p.alpha * 17.0, p.beta}, {q.alpha * 17.0, q.beta}).value;
  EXPECT_NEAR(a, b, 1e-12 * a);
}

TEST(KldGgd, InvalidParams) {
  EXPECT_THROW(rriqa::kld_ggd({0.0, 1.0}, {1.0, 1.0}), rriqa::Error);
  EXPECT_THROW(rriqa::kld_ggd({1.0, 1.0}, {1.0, -1.0}), rriqa::Error);
  EXPECT_THROW(rriqa::kld_ggd({NAN, 1.0}, {1.0, 1.0}), rriqa::Error);
}

TEST(KldGaussian, ClosedFormAndQuadrature) {
  const GaussianParams p{0.0, 1.0};
  const GaussianParams q{0.0, 2.0};
  EXPECT_NEAR(rriqa::kld_gaussian(p, q).value, std::log(2.0) + 1.0 / 8.0 - 0.5, 1e-14);
  EXPECT_EQ(rriqa::kld_gaussian(p, p).value, 0.0);

  const GaussianParams r{0.7, 1.4};
  const GaussianParams s{-0.3, 0.9};
  const double closed = rriqa::kld_gaussian(r, s).value;
  const double expected = std::log(s.sigma / r.sigma) +
                          (r.sigma * r.sigma + (r.mean - s.mean) * (r.mean - s.mean)) /
                              (2.0 * s.sigma * s.sigma) -
                          0.5;
  EXPECT_NEAR(closed, expected, 1e-14);
}

TEST(KldGaussian, PointMasses) {
  EXPECT_EQ(rriqa::kld_gaussian({1.0, 0.0}, {1.0, 0.0}).value, 0.0);
  EXPECT_THROW(rriqa::kld_gaussian({0.0, 1.0}, {0.0, 0.0}), rriqa::Error);
  EXPECT_THROW(rriqa::kld_gaussian({0.0, 0.0}, {1.0, 0.0}), rriqa::Error);
}

TEST(DntDistance, Examples) {
  const rriqa::DntStatistics a{{0.0, 2.0}, {2.0, 3.4, 0.1}};
  const rriqa::DntStatistics b{{0.0, 5.0}, {5.0, 4.0, -0.3}};
  EXPECT_EQ(rriqa::dnt_distance(a, a, {0.3, 1.0, 2.0, 5.0}).value, 0.0);
  EXPECT_DOUBLE_EQ(rriqa::dnt_distance(a, b, {1.0, 0.0, 0.0, 0.0}).value,
                   rriqa::kld_gaussian(a.gaussian, b.gaussian).value);
  EXPECT_DOUBLE_EQ(rriqa::dnt_distance(a, b, {0.0, 1.0, 0.0, 0.0}).value, 3.0);
  EXPECT_NEAR(rriqa::dnt_distance(a, b, {0.0, 0.0, 1.0, 1.0}).value, 0.6 + 0.4, 1e-12);
  EXPECT_EQ(rriqa::dnt_distance(a, b, {}).kind, rriqa::DistanceKind::MomentDiff);
}

TEST(EntropyDiff, Examples) {
  const rriqa::BlockEntropySet a{3, {2.0}};
  const rriqa::BlockEntropySet b{3, {3.5}};
  EXPECT_EQ(rriqa::entropy_diff(a, a).value, 0.0);
  EXPECT_DOUBLE_EQ(rriqa::entropy_diff(a, b).value, 1.5);
  EXPECT_DOUBLE_EQ(rriqa::entropy_diff(a, b, true).value, -1.5);
  EXPECT_EQ(rriqa::entropy_diff(a, b).kind, rriqa::DistanceKind::EntropyDiff);
}

TEST(EntropyDiff, MatchesNaiveLoop) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n(1.0, 2.0);
  rriqa::BlockEntropySet a{3, std::vector<double>(777)};
  rriqa::BlockEntropySet b{3, std::vector<double>(777)};
  for (double& v : a.entropies) v = n(rng);
  for (double& v : b.entropies) v = n(rng);
  double abs_sum = 0.0;
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t i = 0; i < 777; ++i) {
    abs_sum += std::abs(a.entropies[i] - b.entropies[i]);
    sa += a.entropies[i];
    sb += b.entropies[i];
  }
  EXPECT_NEAR(rriqa::entropy_diff(a, b).value, abs_sum / 777.0, 1e-12);
  EXPECT_NEAR(rriqa::entropy_diff(a, b, true).value, (sa - sb) / 777.0, 1e-12);
}

TEST(EntropyDiff, Mismatch) {
  try {
    rriqa::entropy_diff({3, {1.0, 2.0}}, {3, {1.0}});
    FAIL();
  } catch (const rriqa::Error& e) {
    EXPECT_EQ(e.code(), rriqa::Errc::BlockCountMismatch);
  }
  EXPECT_THROW(rriqa::entropy_diff({3, {1.0}}, {5, {1.0}}), rriqa::Error);
}
