#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "rriqa/image.hpp"

namespace rriqa {

struct DecompositionConfig {
  int scales = 3;
  int orientations = 4;
  int imf_count = 3;
  int sift_max_iters = 10;
  double sift_sd_threshold = 0.3;

  // Throws InvalidArgument unless every field is positive.
  void validate() const;
  bool operator==(const DecompositionConfig&) const = default;
};

enum class Transform { SteerablePyramid, WaveletDnt, Bemd, Wavelet };

enum class BandKind { Oriented, Highpass, Lowpass, Detail, Approximation, Imf, Residue };

std::string_view to_string(BandKind kind) noexcept;

// Wavelet detail orientations.
inline constexpr int kHorizontalDetail = 0;
inline constexpr int kVerticalDetail = 1;
inline constexpr int kDiagonalDetail = 2;

struct Subband {
  int scale = 0;
  int orientation = 0;
  BandKind kind = BandKind::Oriented;
  ImagePlane coefficients;
};

struct SubbandSet {
  Transform transform = Transform::SteerablePyramid;
  std::vector<Subband> subbands;
  DecompositionConfig config;

  // The bands that carry features: oriented pyramid bands, wavelet details, or IMFs.
  std::vector<const Subband*> feature_bands(bool include_residue = false) const;
};

// Self-inverting frequency-domain steerable pyramid. Plane dimensions must be multiples
// of 2^scales. Produces scales x orientations oriented bands (full resolution at scale 0,
// halved per scale), a full-resolution highpass band and a lowpass residual.
SubbandSet steerable_pyramid(const ImagePlane& plane, const DecompositionConfig& config);
ImagePlane reconstruct_steerable_pyramid(const SubbandSet& bands);

// Orthogonal separable wavelet (least-asymmetric, 8 taps) with periodic extension.
// Detail bands are labelled scale 1..scales; 3 orientations per scale plus one
// approximation band at the coarsest scale.
SubbandSet wavelet(const ImagePlane& plane, const DecompositionConfig& config);
ImagePlane inverse_wavelet(const SubbandSet& bands);
std::span<const double> wavelet_lowpass_filter() noexcept;

// Wavelet decomposition whose detail coefficients are divided by the local GSM
// multiplier estimate sqrt(mean 3x3 energy / subband variance), floored at 1e-6.
SubbandSet dnt(const ImagePlane& plane, const DecompositionConfig& config);

// Bidimensional empirical mode decomposition: imf_count full-resolution IMFs and a
// residue that together sum to the input.
SubbandSet bemd(const ImagePlane& plane, const DecompositionConfig& config);

}  // namespace rriqa
