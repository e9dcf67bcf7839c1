#include "rriqa/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rriqa/colorspace.hpp"
#include "rriqa/error.hpp"

namespace rriqa {

namespace {

SubbandSet decompose_channel(const ImagePlane& plane, const MeasureConfig& config) {
  switch (config.measure) {
    case Measure::Wnism:
      return steerable_pyramid(plane, config.decomposition);
    case Measure::Dnt:
      return dnt(plane, config.decomposition);
    case Measure::Emism:
      return bemd(plane, config.decomposition);
    case Measure::Rred:
      return wavelet(plane, config.decomposition);
  }
  throw Error(Errc::InvalidArgument, "unknown measure");
}

std::vector<const Subband*> selected_bands(const SubbandSet& set, const MeasureConfig& config) {
  if (config.measure == Measure::Emism) return set.feature_bands(config.emism_include_residue);
  std::vector<const Subband*> bands = set.feature_bands();
  if (config.measure == Measure::Rred && config.rred.subbands == RredSubbands::FinestHorizontal) {
    std::erase_if(bands, [](const Subband* b) {
      return !(b->scale == 1 && b->orientation == kHorizontalDetail);
    });
  }
  return bands;
}

SubbandFeatures fit_band(const Subband& band, const MeasureConfig& config) {
  SubbandFeatures f;
  f.scale = band.scale;
  f.orientation = band.orientation;
  f.kind = band.kind;
  const auto values = band.coefficients.values();
  const double variance = sample_variance(values);
  switch (config.measure) {
    case Measure::Wnism:
    case Measure::Emism:
      if (variance < kDegenerateVariance) {
        f.degenerate = true;
        f.model = GgdParams{};
      } else {
        f.model = fit_ggd(values);
      }
      break;
    case Measure::Dnt: {
      DntStatistics stats;
      stats.gaussian = fit_gaussian(values);
      if (variance < kDegenerateVariance) {
        f.degenerate = true;
        stats.moments = SubbandMoments{stats.gaussian.sigma, 3.0, 0.0};
      } else {
        stats.moments = moments(values);
      }
      f.model = stats;
      break;
    }
    case Measure::Rred: {
      const double noise = std::max(config.rred.noise_factor * variance, kRredNoiseFloor);
      f.model = block_entropies(band.coefficients, config.rred.block_size, noise);
      break;
    }
  }
  return f;
}

bool same_shape(const SubbandFeatures& a, const SubbandFeatures& b) {
  return a.scale == b.scale && a.orientation == b.orientation && a.kind == b.kind &&
         a.model.index() == b.model.index();
}

SubbandDistance band_distance(const SubbandFeatures& ref, const SubbandFeatures& dst,
                              const MeasureConfig& config) {
  switch (config.measure) {
    case Measure::Wnism:
    case Measure::Emism: {
      if (ref.degenerate && dst.degenerate) return {0.0, DistanceKind::KldGgd};
      const GgdParams p = ref.degenerate ? kDegenerateGgd : std::get<GgdParams>(ref.model);
      const GgdParams q = dst.degenerate ? kDegenerateGgd : std::get<GgdParams>(dst.model);
      const SubbandDistance d = kld_ggd(p, q);
      return {std::max(d.value, 0.0), d.kind};
    }
    case Measure::Dnt: {
      if (ref.degenerate && dst.degenerate) return {0.0, DistanceKind::MomentDiff};
      DntStatistics p = std::get<DntStatistics>(ref.model);
      DntStatistics q = std::get<DntStatistics>(dst.model);
      if (ref.degenerate) p.gaussian.sigma = kDegenerateSigma;
      if (dst.degenerate) q.gaussian.sigma = kDegenerateSigma;
      const SubbandDistance d = dnt_distance(p, q, config.dnt_weights);
      return {std::max(d.value, 0.0), d.kind};
    }
    case Measure::Rred:
      return entropy_diff(std::get<BlockEntropySet>(ref.model),
                          std::get<BlockEntropySet>(dst.model), config.rred.signed_difference);
  }
  throw Error(Errc::InvalidArgument, "unknown measure");
}

double pool(double sum, const MeasureConfig& config) {
  if (config.measure == Measure::Wnism || config.measure == Measure::Emism) {
    return std::log2(1.0 + sum / config.d0);
  }
  return sum;
}

void require_compatible(const FeatureSet& features, const MeasureConfig& config) {
  if (!features_compatible(features.config, config)) {
    throw Error(Errc::ConfigMismatch,
                "features were extracted as " + std::string(to_string(features.config.measure)) +
                    "/" + std::string(to_string(features.config.space)) +
                    " with different settings than the requested " +
                    std::string(to_string(config.measure)) + "/" +
                    std::string(to_string(config.space)));
  }
}

}  // namespace

std::size_t FeatureSet::subband_count() const noexcept {
  std::size_t n = 0;
  for (const ChannelFeatures& c : channels) n += c.subbands.size();
  return n;
}

FeatureSet extract_features(const RgbImage& image, const MeasureConfig& config) {
  config.validate();
  const int factor = config.measure == Measure::Emism ? 1 : 1 << config.decomposition.scales;
  const RgbImage cropped = crop_to_even(image, factor);
  const ChannelStack stack = to_color_space(cropped, config.space);

  FeatureSet out;
  out.config = config;
  out.width = cropped.width();
  out.height = cropped.height();
  for (const NamedPlane& channel : stack.channels) {
    const SubbandSet set = decompose_channel(channel.plane, config);
    ChannelFeatures cf;
    cf.name = channel.name;
    for (const Subband* band : selected_bands(set, config)) {
      cf.subbands.push_back(fit_band(*band, config));
    }
    out.channels.push_back(std::move(cf));
  }
  return out;
}

DistortionScore score_features(const FeatureSet& reference, const FeatureSet& distorted,
                               const MeasureConfig& config) {
  config.validate();
  require_compatible(reference, config);
  require_compatible(distorted, config);
  if (reference.channels.size() != distorted.channels.size()) {
    throw Error(Errc::ConfigMismatch, "channel counts differ");
  }
  DistortionScore out;
  for (std::size_t c = 0; c < reference.channels.size(); ++c) {
    const ChannelFeatures& rc = reference.channels[c];
    const ChannelFeatures& dc = distorted.channels[c];
    if (rc.name != dc.name || rc.subbands.size() != dc.subbands.size()) {
      throw Error(Errc::ConfigMismatch, "channel '" + rc.name + "' has a different layout");
    }
    double sum = 0.0;
    for (std::size_t s = 0; s < rc.subbands.size(); ++s) {
      if (!same_shape(rc.subbands[s], dc.subbands[s])) {
        throw Error(Errc::ConfigMismatch, "subband layout differs in channel '" + rc.name + "'");
      }
      const SubbandDistance d = band_distance(rc.subbands[s], dc.subbands[s], config);
      sum += d.value;
      out.per_subband.push_back(
          {rc.name, rc.subbands[s].scale, rc.subbands[s].orientation, rc.subbands[s].kind, d});
    }
    const double weight = c < config.channel_weights.size() ? config.channel_weights[c] : 1.0;
    out.per_channel.push_back({rc.name, weight * pool(sum, config)});
  }
  for (const ChannelScore& cs : out.per_channel) out.total += cs.score;
  return out;
}

DistortionScore score(const FeatureSet& reference, const RgbImage& distorted,
                      const MeasureConfig& config) {
  require_compatible(reference, config);
  return score_features(reference, extract_features(distorted, config), config);
}

DistortionScore score_pair(const RgbImage& reference, const RgbImage& distorted,
                           const MeasureConfig& config) {
  return score_features(extract_features(reference, config), extract_features(distorted, config),
                        config);
}

}  // namespace rriqa
