#pragma once

#include <filesystem>

#include "rriqa/image.hpp"

namespace rriqa {

// Decodes an 8-bit-per-channel BMP or PNG, detected from the file's magic bytes.
// Grayscale and palette images are expanded to three channels.
RgbImage load_image(const std::filesystem::path& path);

// Channel values are rounded and clamped to [0, 255] on write.
void save_bmp(const RgbImage& image, const std::filesystem::path& path);
void save_png(const RgbImage& image, const std::filesystem::path& path);
// Picks the encoder from the extension (.bmp or .png, case-insensitive).
void save_image(const RgbImage& image, const std::filesystem::path& path);

}  // namespace rriqa
