#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "rriqa/colorspace.hpp"
#include "rriqa/decompose.hpp"

namespace rriqa {

enum class Measure { Wnism, Dnt, Emism, Rred };

std::string_view to_string(Measure measure) noexcept;
// Accepts "wnism", "dnt", "emism", "rred" in any case. Throws InvalidArgument otherwise.
Measure parse_measure(std::string_view text);

enum class RredSubbands { FinestHorizontal, AllSummed };

std::string_view to_string(RredSubbands selection) noexcept;
RredSubbands parse_rred_subbands(std::string_view text);

struct RredOptions {
  int block_size = 3;
  // Stabilizer variance as a fraction of the subband variance.
  double noise_factor = 0.1;
  RredSubbands subbands = RredSubbands::FinestHorizontal;
  bool signed_difference = false;

  bool operator==(const RredOptions&) const = default;
};

inline constexpr double kRredNoiseFloor = 1e-6;

struct MeasureConfig {
  Measure measure = Measure::Wnism;
  ColorSpace space = ColorSpace::Grayscale;
  double d0 = 0.1;
  DecompositionConfig decomposition;
  std::array<double, 4> dnt_weights{1.0, 1.0, 1.0, 1.0};
  RredOptions rred;
  std::array<double, 3> channel_weights{1.0, 1.0, 1.0};
  bool emism_include_residue = false;

  // Throws InvalidArgument on out-of-range values.
  void validate() const;
  bool operator==(const MeasureConfig&) const = default;
};

// FNV-1a over the fields that change extracted features (measure, space, decomposition,
// RRED block size, noise factor and subband selection, EMISM residue flag). Fields used
// only when scoring are ignored.
std::uint64_t feature_hash(const MeasureConfig& config) noexcept;

// True when features extracted under a can be scored under b.
bool features_compatible(const MeasureConfig& a, const MeasureConfig& b) noexcept;

}  // namespace rriqa
