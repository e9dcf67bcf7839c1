#pragma once

#include <array>
#include <string_view>

#include "rriqa/statmodel.hpp"

namespace rriqa {

enum class DistanceKind { KldGgd, KldGaussian, MomentDiff, EntropyDiff };

std::string_view to_string(DistanceKind kind) noexcept;

struct SubbandDistance {
  double value = 0.0;
  DistanceKind kind = DistanceKind::KldGgd;
};

// KLD(p || q) between two GGDs in nats. Throws InvalidParams for nonpositive parameters.
SubbandDistance kld_ggd(const GgdParams& p, const GgdParams& q);

// KLD(p || q) between two Gaussians in nats. A zero-width q is only allowed when p is the
// same point mass (result 0); otherwise InvalidParams.
SubbandDistance kld_gaussian(const GaussianParams& p, const GaussianParams& q);

struct DntStatistics {
  GaussianParams gaussian;
  SubbandMoments moments;

  bool operator==(const DntStatistics&) const = default;
};

// w0 KLD + w1 |std diff| + w2 |kurtosis diff| + w3 |skewness diff|.
SubbandDistance dnt_distance(const DntStatistics& ref, const DntStatistics& dst,
                             const std::array<double, 4>& weights);

// Mean absolute per-block entropy difference. With signed_difference the result is
// (sum ref - sum dst) / K instead. Throws BlockCountMismatch on shape disagreement.
SubbandDistance entropy_diff(const BlockEntropySet& ref, const BlockEntropySet& dst,
                             bool signed_difference = false);

}  // namespace rriqa
