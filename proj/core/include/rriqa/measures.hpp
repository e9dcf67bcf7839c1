#pragma once

#include <string>
#include <variant>
#include <vector>

#include "rriqa/config.hpp"
#include "rriqa/decompose.hpp"
#include "rriqa/divergence.hpp"
#include "rriqa/image.hpp"
#include "rriqa/statmodel.hpp"

namespace rriqa {

using SubbandModel = std::variant<GgdParams, DntStatistics, BlockEntropySet>;

struct SubbandFeatures {
  int scale = 0;
  int orientation = 0;
  BandKind kind = BandKind::Oriented;
  // Variance below 1e-12: no model was fitted and `model` holds defaults.
  bool degenerate = false;
  SubbandModel model;

  bool operator==(const SubbandFeatures&) const = default;
};

struct ChannelFeatures {
  std::string name;
  std::vector<SubbandFeatures> subbands;

  bool operator==(const ChannelFeatures&) const = default;
};

// The reduced-reference payload.
struct FeatureSet {
  MeasureConfig config;
  // Dimensions of the analysed planes after cropping.
  int width = 0;
  int height = 0;
  std::vector<ChannelFeatures> channels;

  std::size_t subband_count() const noexcept;
  bool operator==(const FeatureSet&) const = default;
};

struct ChannelScore {
  std::string name;
  double score = 0.0;
};

struct SubbandScore {
  std::string channel;
  int scale = 0;
  int orientation = 0;
  BandKind kind = BandKind::Oriented;
  SubbandDistance distance;
};

struct DistortionScore {
  double total = 0.0;
  std::vector<ChannelScore> per_channel;
  std::vector<SubbandScore> per_subband;
};

// Parameters standing in for a subband whose variance vanished.
inline constexpr GgdParams kDegenerateGgd{1e-6, 2.0, false};
inline constexpr double kDegenerateSigma = 1e-6;

// Sender side: colour conversion, decomposition and per-subband model fitting.
// Pyramid and wavelet measures crop the image to a multiple of 2^scales first.
FeatureSet extract_features(const RgbImage& image, const MeasureConfig& config);

// Receiver side: compares two payloads. Throws ConfigMismatch when the reference was
// extracted under an incompatible configuration or the payload shapes disagree.
DistortionScore score_features(const FeatureSet& reference, const FeatureSet& distorted,
                               const MeasureConfig& config);

// Extracts the distorted image's features under `config` and scores them against the
// reference payload.
DistortionScore score(const FeatureSet& reference, const RgbImage& distorted,
                      const MeasureConfig& config);

DistortionScore score_pair(const RgbImage& reference, const RgbImage& distorted,
                           const MeasureConfig& config);

}  // namespace rriqa
