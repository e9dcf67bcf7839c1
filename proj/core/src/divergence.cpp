#include "rriqa/divergence.hpp"

#include <cmath>
#include <string>

#include "rriqa/error.hpp"

namespace rriqa {

std::string_view to_string(DistanceKind kind) noexcept {
  switch (kind) {
    case DistanceKind::KldGgd:
      return "kld_ggd";
    case DistanceKind::KldGaussian:
      return "kld_gaussian";
    case DistanceKind::MomentDiff:
      return "moment_diff";
    case DistanceKind::EntropyDiff:
      return "entropy_diff";
  }
  return "unknown";
}

SubbandDistance kld_ggd(const GgdParams& p, const GgdParams& q) {
  const auto valid = [](const GgdParams& g) {
    return std::isfinite(g.alpha) && std::isfinite(g.beta) && g.alpha > 0.0 && g.beta > 0.0;
  };
  if (!valid(p) || !valid(q)) {
    throw Error(Errc::InvalidParams, "GGD parameters must be finite and positive");
  }
  if (p.alpha == q.alpha && p.beta == q.beta) return {0.0, DistanceKind::KldGgd};
  const double b1 = p.beta;
  const double b2 = q.beta;
  const double log_ratio = std::log(b1) + std::log(q.alpha) + std::lgamma(1.0 / b2) -
                           std::log(b2) - std::log(p.alpha) - std::lgamma(1.0 / b1);
  const double cross = std::exp(b2 * std::log(p.alpha / q.alpha) + std::lgamma((b2 + 1.0) / b1) -
                                std::lgamma(1.0 / b1));
  return {log_ratio + cross - 1.0 / b1, DistanceKind::KldGgd};
}

SubbandDistance kld_gaussian(const GaussianParams& p, const GaussianParams& q) {
  if (!std::isfinite(p.mean) || !std::isfinite(q.mean) || !std::isfinite(p.sigma) ||
      !std::isfinite(q.sigma) || p.sigma < 0.0 || q.sigma < 0.0) {
    throw Error(Errc::InvalidParams, "Gaussian parameters must be finite with sigma >= 0");
  }
  if (q.sigma == 0.0) {
    if (p.sigma == 0.0 && p.mean == q.mean) return {0.0, DistanceKind::KldGaussian};
    throw Error(Errc::InvalidParams, "divergence against a point mass is infinite");
  }
  if (p.sigma == 0.0) {
    throw Error(Errc::InvalidParams, "divergence of a point mass is infinite");
  }
  const double dm = p.mean - q.mean;
  const double value = std::log(q.sigma / p.sigma) +
                       (p.sigma * p.sigma + dm * dm) / (2.0 * q.sigma * q.sigma) - 0.5;
  return {value, DistanceKind::KldGaussian};
}

SubbandDistance dnt_distance(const DntStatistics& ref, const DntStatistics& dst,
                             const std::array<double, 4>& weights) {
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(Errc::InvalidArgument, "DNT weights must be finite and non-negative");
    }
  }
  double value = 0.0;
  if (weights[0] != 0.0) value += weights[0] * kld_gaussian(ref.gaussian, dst.gaussian).value;
  value += weights[1] * std::abs(ref.moments.std - dst.moments.std);
  value += weights[2] * std::abs(ref.moments.kurtosis - dst.moments.kurtosis);
  value += weights[3] * std::abs(ref.moments.skewness - dst.moments.skewness);
  return {value, DistanceKind::MomentDiff};
}

SubbandDistance entropy_diff(const BlockEntropySet& ref, const BlockEntropySet& dst,
                             bool signed_difference) {
  if (ref.block_size != dst.block_size || ref.entropies.size() != dst.entropies.size()) {
    throw Error(Errc::BlockCountMismatch,
                "entropy sets differ: " + std::to_string(ref.entropies.size()) + " blocks of " +
                    std::to_string(ref.block_size) + " vs " +
                    std::to_string(dst.entropies.size()) + " blocks of " +
                    std::to_string(dst.block_size));
  }
  if (ref.entropies.empty()) return {0.0, DistanceKind::EntropyDiff};
  double sum = 0.0;
  for (std::size_t k = 0; k < ref.entropies.size(); ++k) {
    const double d = ref.entropies[k] - dst.entropies[k];
    sum += signed_difference ? d : std::abs(d);
  }
  return {sum / static_cast<double>(ref.entropies.size()), DistanceKind::EntropyDiff};
}

}  // namespace rriqa
