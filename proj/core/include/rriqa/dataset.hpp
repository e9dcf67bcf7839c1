#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rriqa/image.hpp"
#include "rriqa/synthetic.hpp"

namespace rriqa {

struct EvaluationRecord {
  int reference_id = 0;
  int distortion_type = 0;
  int level = 0;
  double mos = 0.0;
  std::filesystem::path distorted_path;
  std::filesystem::path reference_path;
  std::optional<double> score;
};

inline constexpr int kTidDistortionTypes = 24;

// Label of TID 2013 distortion type 1..24. Throws InvalidArgument outside that range.
std::string_view distortion_label(int type);

struct ParsedName {
  int reference_id = 0;
  int distortion_type = 0;
  int level = 0;
};

// Parses "i<RR>_<TT>_<L>.<ext>" case-insensitively.
std::optional<ParsedName> parse_distorted_name(std::string_view filename);

struct DatasetLoad {
  std::vector<EvaluationRecord> records;
  // Unparseable names, MOS entries without images and the like.
  std::vector<std::string> warnings;
};

// Reads root/reference_images, root/distorted_images and root/mos_with_names.txt
// (or root/mos.txt, values in sorted filename order). Records come back sorted by
// (reference, type, level). Throws MissingMosFile and MissingReference.
DatasetLoad load_tid2013(const std::filesystem::path& root);

// Writes a TID-style tree under out_dir: reference i is I<ii>.BMP, distorted images
// i<ii>_<tt>_<l>.bmp with proxy MOS -level. Deterministic in seed.
std::vector<EvaluationRecord> synth_dataset(const std::vector<RgbImage>& references,
                                            std::span<const SyntheticDistortion> types,
                                            int levels, std::uint64_t seed,
                                            const std::filesystem::path& out_dir);

}  // namespace rriqa
