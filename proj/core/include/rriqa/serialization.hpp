#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rriqa/measures.hpp"

namespace rriqa {

// Compact JSON payload with a fixed field order; reals carry 17 significant digits.
std::string to_json(const FeatureSet& features);

// Throws InvalidPayload on malformed documents or a config hash that does not match
// the embedded configuration.
FeatureSet feature_set_from_json(std::string_view text);

// Pretty-printed score with the per-subband breakdown.
std::string to_json(const DistortionScore& score);

void write_feature_file(const std::filesystem::path& path, const FeatureSet& features);
FeatureSet read_feature_file(const std::filesystem::path& path);

}  // namespace rriqa
