#pragma once

#include <span>
#include <vector>

#include "rriqa/image.hpp"

namespace rriqa {

// Generalized Gaussian density p(x) = beta / (2 alpha Gamma(1/beta)) exp(-(|x|/alpha)^beta).
struct GgdParams {
  double alpha = 1.0;
  double beta = 2.0;
  // Set when the shape hit one end of the search interval.
  bool clamped = false;

  bool operator==(const GgdParams&) const = default;
};

struct GaussianParams {
  double mean = 0.0;
  double sigma = 0.0;

  bool operator==(const GaussianParams&) const = default;
};

struct SubbandMoments {
  double std = 0.0;
  double kurtosis = 3.0;
  double skewness = 0.0;

  bool operator==(const SubbandMoments&) const = default;
};

// Per-block differential entropies in nats, blocks in row-major order.
struct BlockEntropySet {
  int block_size = 3;
  std::vector<double> entropies;

  bool operator==(const BlockEntropySet&) const = default;
};

inline constexpr double kGgdBetaMin = 0.05;
inline constexpr double kGgdBetaMax = 10.0;
inline constexpr std::size_t kGgdMinSamples = 64;
inline constexpr std::size_t kMomentMinSamples = 16;
inline constexpr double kDegenerateVariance = 1e-12;

// Maximum-likelihood GGD fit. Throws TooFewSamples below 64 samples and DegenerateInput
// when the sample variance is below 1e-12.
GgdParams fit_ggd(std::span<const double> samples);

// Sample mean and population standard deviation. Throws TooFewSamples below 16 samples.
GaussianParams fit_gaussian(std::span<const double> samples);

// Population standard deviation, skewness m3/m2^1.5 and kurtosis m4/m2^2.
SubbandMoments moments(std::span<const double> samples);

// Tiles the plane into non-overlapping block_size x block_size blocks (partial blocks
// dropped) and returns (n/2) ln(2 pi e (var_block + noise_variance)) per block. The
// total variance is floored at 1e-12.
BlockEntropySet block_entropies(const ImagePlane& subband, int block_size,
                                double noise_variance);

// Population variance, two-pass.
double sample_variance(std::span<const double> samples);

}  // namespace rriqa
