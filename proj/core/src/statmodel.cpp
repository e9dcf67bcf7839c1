#include "rriqa/statmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/digamma.hpp>

#include "rriqa/error.hpp"

namespace rriqa {

namespace {

constexpr double kBetaTolerance = 1e-9;

void require_samples(std::span<const double> samples, std::size_t minimum) {
  if (samples.size() < minimum) {
    throw Error(Errc::TooFewSamples, "need at least " + std::to_string(minimum) +
                                         " samples, got " + std::to_string(samples.size()));
  }
}

double mean_of(std::span<const double> samples) {
  double s = 0.0;
  for (double v : samples) s += v;
  return s / static_cast<double>(samples.size());
}

// Profile likelihood equation of the GGD shape on normalized magnitudes. Decreasing in
// beta; its root is the ML shape.
struct ShapeEquation {
  std::vector<double> log_abs;  // ln|x| of the nonzero samples
  std::size_t n = 0;            // all samples, zeros included

  double operator()(double beta) const {
    double sum = 0.0;
    double sum_log = 0.0;
    for (double l : log_abs) {
      const double p = std::exp(beta * l);
      sum += p;
      sum_log += p * l;
    }
    return 1.0 + boost::math::digamma(1.0 / beta) / beta - sum_log / sum +
           std::log(beta * sum / static_cast<double>(n)) / beta;
  }
};

}  // namespace

double sample_variance(std::span<const double> samples) {
  if (samples.empty()) return 0.0;
  const double m = mean_of(samples);
  double s = 0.0;
  for (double v : samples) s += (v - m) * (v - m);
  return s / static_cast<double>(samples.size());
}

GgdParams fit_ggd(std::span<const double> samples) {
  require_samples(samples, kGgdMinSamples);
  if (sample_variance(samples) < kDegenerateVariance) {
    throw Error(Errc::DegenerateInput, "GGD fit on a sample with near-zero variance");
  }
  double mean_abs = 0.0;
  for (double v : samples) mean_abs += std::abs(v);
  mean_abs /= static_cast<double>(samples.size());

  ShapeEquation g;
  g.n = samples.size();
  g.log_abs.reserve(samples.size());
  for (double v : samples) {
    if (v != 0.0) g.log_abs.push_back(std::log(std::abs(v) / mean_abs));
  }

  GgdParams out;
  double lo = kGgdBetaMin;
  double hi = kGgdBetaMax;
  const double g_lo = g(lo);
  const double g_hi = g(hi);
  if (g_lo <= 0.0) {
    out.beta = lo;
    out.clamped = true;
  } else if (g_hi >= 0.0) {
    out.beta = hi;
    out.clamped = true;
  } else {
    while (hi - lo > kBetaTolerance * lo) {
      const double mid = 0.5 * (lo + hi);
      if (g(mid) > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out.beta = 0.5 * (lo + hi);
  }
  double sum = 0.0;
  for (double l : g.log_abs) sum += std::exp(out.beta * l);
  out.alpha = mean_abs * std::pow(out.beta * sum / static_cast<double>(g.n), 1.0 / out.beta);
  return out;
}

GaussianParams fit_gaussian(std::span<const double> samples) {
  require_samples(samples, kMomentMinSamples);
  return {mean_of(samples), std::sqrt(sample_variance(samples))};
}

SubbandMoments moments(std::span<const double> samples) {
  require_samples(samples, kMomentMinSamples);
  const double m = mean_of(samples);
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double v : samples) {
    const double d = v - m;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  const double n = static_cast<double>(samples.size());
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 < kDegenerateVariance) {
    throw Error(Errc::DegenerateInput, "moments of a sample with near-zero variance");
  }
  return {std::sqrt(m2), m4 / (m2 * m2), m3 / std::pow(m2, 1.5)};
}

BlockEntropySet block_entropies(const ImagePlane& subband, int block_size,
                                double noise_variance) {
  if (block_size < 1) {
    throw Error(Errc::InvalidArgument, "block size must be positive");
  }
  if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance)) {
    throw Error(Errc::InvalidArgument, "noise variance must be finite and non-negative");
  }
  if (subband.width() < block_size || subband.height() < block_size) {
    throw Error(Errc::SubbandTooSmall, "subband " + std::to_string(subband.width()) + "x" +
                                           std::to_string(subband.height()) +
                                           " is smaller than one block");
  }
  BlockEntropySet out;
  out.block_size = block_size;
  const int bx = subband.width() / block_size;
  const int by = subband.height() / block_size;
  const double n = static_cast<double>(block_size) * block_size;
  const double two_pi_e = 2.0 * std::numbers::pi * std::numbers::e;
  out.entropies.reserve(static_cast<std::size_t>(bx) * by);
  for (int j = 0; j < by; ++j) {
    for (int i = 0; i < bx; ++i) {
      double sum = 0.0;
      for (int y = 0; y < block_size; ++y) {
        for (int x = 0; x < block_size; ++x) sum += subband(i * block_size + x, j * block_size + y);
      }
      const double mean = sum / n;
      double var = 0.0;
      for (int y = 0; y < block_size; ++y) {
        for (int x = 0; x < block_size; ++x) {
          const double d = subband(i * block_size + x, j * block_size + y) - mean;
          var += d * d;
        }
      }
      var /= n;
      // Floored so flat blocks without a stabilizer stay finite.
      const double total = std::max(var + noise_variance, kDegenerateVariance);
      out.entropies.push_back(0.5 * n * std::log(two_pi_e * total));
    }
  }
  return out;
}

}  // namespace rriqa
