#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

namespace oracle = rriqa::oracle;

TEST(Oracles, GgdDensity) {
  for (const rriqa::GgdParams p : {rriqa::GgdParams{1.0, 2.0}, {0.3, 0.5}, {4.0, 8.0}}) {
    EXPECT_EQ(oracle::kld_ggd_numeric(p, p).value, 0.0);
    const double log_norm = oracle::ggd_log_density(0.0, p);
    EXPECT_NEAR(std::exp(log_norm), p.beta / (2.0 * p.alpha * std::tgamma(1.0 / p.beta)), 1e-12);
  }
}

TEST(Oracles, TailBound) {
  // Laplacian: P(|X| > b) = exp(-b / alpha).
  EXPECT_NEAR(oracle::ggd_tail_bound({2.0, 1.0}, 1e-6), 2.0 * std::log(1e6), 1e-9);
  // Gaussian with variance alpha^2 / 2: P(|X| > b) = erfc(b / alpha).
  const double b = oracle::ggd_tail_bound({1.0, 2.0}, 1e-4);
  EXPECT_NEAR(std::erfc(b), 1e-4, 1e-12);
}

TEST(Oracles, KldNumericGaussianClosedForm) {
  const auto log_normal = [](double sigma) {
    return [sigma](double x) { return -0.5 * x * x / (sigma * sigma) - std::log(sigma * std::sqrt(2.0 * M_PI)); };
  };
  const auto q = oracle::kld_numeric(log_normal(1.0), log_normal(3.0), 40.0);
  EXPECT_NEAR(q.value, std::log(3.0) + 1.0 / 18.0 - 0.5, 1e-12);
}

TEST(Oracles, SampleGgdMoments) {
  // E|X| = alpha Gamma(2/beta) / Gamma(1/beta), E X^2 = alpha^2 Gamma(3/beta) / Gamma(1/beta).
  const double alpha = 1.5;
  const double beta = 0.8;
  const auto x = oracle::sample_ggd(alpha, beta, 400000, 1);
  double m1 = 0.0;
  double m2 = 0.0;
  double positive = 0.0;
  for (double v : x) {
    m1 += std::abs(v);
    m2 += v * v;
    positive += v > 0.0;
  }
  const double n = static_cast<double>(x.size());
  EXPECT_NEAR(m1 / n, alpha * std::tgamma(2.0 / beta) / std::tgamma(1.0 / beta), 0.01);
  EXPECT_NEAR(m2 / n, alpha * alpha * std::tgamma(3.0 / beta) / std::tgamma(1.0 / beta), 0.1);
  EXPECT_NEAR(positive / n, 0.5, 0.005);
  EXPECT_EQ(oracle::sample_ggd(alpha, beta, 10, 5), oracle::sample_ggd(alpha, beta, 10, 5));
}

TEST(Oracles, Ranks) {
  const std::vector<double> x{10, 20, 20, 5, 20};
  EXPECT_EQ(oracle::naive_ranks(x), (std::vector<double>{2, 4, 4, 1, 4}));
  const std::vector<double> a{1, 2, 3, 4};
  const std::vector<double> b{1, 3, 2, 4};
  EXPECT_NEAR(oracle::naive_spearman(a, b), oracle::spearman_rank_difference(a, b), 1e-15);
  EXPECT_NEAR(oracle::spearman_rank_difference(a, b), 0.8, 1e-15);
}

TEST(Oracles, NaiveStatistics) {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{2, 4, 6, 8};
  EXPECT_DOUBLE_EQ(oracle::naive_mean(x), 2.5);
  EXPECT_DOUBLE_EQ(oracle::naive_variance(x), 1.25);
  EXPECT_NEAR(oracle::naive_pearson(x, y), 1.0, 1e-15);
}
