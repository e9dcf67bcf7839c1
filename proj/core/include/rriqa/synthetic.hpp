#pragma once

#include <cstdint>
#include <string_view>

#include "rriqa/image.hpp"

namespace rriqa {

enum class SyntheticDistortion { Noise, Blur, Quantize, JpegLike };

std::string_view to_string(SyntheticDistortion d) noexcept;
// Accepts "noise", "blur", "quantize", "jpeg". Throws InvalidArgument otherwise.
SyntheticDistortion parse_synthetic_distortion(std::string_view text);

// Distortion type number of the corresponding TID 2013 row: 1, 8, 7 and 10.
int tid_type(SyntheticDistortion d) noexcept;

// Severity parameters per level (level >= 1).
double noise_sigma(int level) noexcept;      // 6 level
double blur_sigma(int level) noexcept;       // 0.6 level
double quantize_step(int level) noexcept;    // 8 level
double jpeg_table_scale(int level) noexcept; // 2^(level - 2)

// Dead-leaves colour image: occluding discs with power-law radii, per-disc linear shading
// and mild grain. Deterministic in seed.
RgbImage dead_leaves(int width, int height, std::uint64_t seed);

// Applies the distortion at the given level and re-quantizes to 8 bits. Noise uses
// seed; the other distortions ignore it.
RgbImage distort(const RgbImage& image, SyntheticDistortion d, int level, std::uint64_t seed);

// Separable Gaussian filter with clamped borders.
ImagePlane gaussian_blur(const ImagePlane& plane, double sigma);

}  // namespace rriqa
