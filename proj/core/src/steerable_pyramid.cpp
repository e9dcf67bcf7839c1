#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "fft.hpp"
#include "rriqa/decompose.hpp"
#include "rriqa/error.hpp"

namespace rriqa {

namespace {

using Spectrum = std::vector<std::complex<double>>;

// Radial transitions in log2(radius), radius normalized to 1 at the axis Nyquist.
// hi0/lo0 split at [-1, 0]; each pyramid level splits at [-2, -1] of its own grid.
double highpass_profile(double log_r) {
  if (log_r >= 0.0) return 1.0;
  if (log_r <= -1.0) return 0.0;
  return std::cos(std::numbers::pi / 2.0 * log_r);
}

double lowpass_profile(double log_r) {
  if (log_r >= 0.0) return 0.0;
  if (log_r <= -1.0) return 1.0;
  return std::abs(std::sin(std::numbers::pi / 2.0 * log_r));
}

struct FrequencyGrid {
  int width;
  int height;
  std::vector<double> log_radius;  // -inf at DC
  std::vector<double> angle;

  FrequencyGrid(int w, int h) : width(w), height(h) {
    const std::size_t n = static_cast<std::size_t>(w) * h;
    log_radius.resize(n);
    angle.resize(n);
    for (int ky = 0; ky < h; ++ky) {
      const int fy = ky < (h + 1) / 2 ? ky : ky - h;
      const double v = fy / (h / 2.0);
      for (int kx = 0; kx < w; ++kx) {
        const int fx = kx < (w + 1) / 2 ? kx : kx - w;
        const double u = fx / (w / 2.0);
        const std::size_t i = static_cast<std::size_t>(ky) * w + kx;
        const double r = std::hypot(u, v);
        log_radius[i] = r > 0.0 ? std::log2(r) : -std::numeric_limits<double>::infinity();
        angle[i] = std::atan2(v, u);
      }
    }
  }
};

double angular_gain(int orientations) {
  const int order = orientations - 1;
  // 2^(2 order) (order!)^2 / (K (2 order)!)
  double c = std::pow(2.0, 2.0 * order) / orientations;
  for (int i = 1; i <= order; ++i) c *= i;
  for (int i = 1; i <= order; ++i) c *= i;
  for (int i = 1; i <= 2 * order; ++i) c /= i;
  return std::sqrt(c);
}

// (-i)^order
std::complex<double> band_phase(int orientations) {
  static const std::complex<double> kPhases[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  return kPhases[(orientations - 1) % 4];
}

double angular_profile(double angle, int band, int orientations, double gain) {
  const double theta = angle - std::numbers::pi * band / orientations;
  return gain * std::pow(std::cos(theta), orientations - 1);
}

Spectrum to_spectrum(const ImagePlane& plane) {
  Spectrum s(plane.size());
  const auto v = plane.values();
  for (std::size_t i = 0; i < v.size(); ++i) s[i] = v[i];
  detail::fft2d_forward(s, plane.width(), plane.height());
  return s;
}

ImagePlane to_plane(Spectrum s, int width, int height) {
  detail::fft2d_inverse(s, width, height);
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i].real();
  return ImagePlane(width, height, std::move(out));
}

int signed_frequency(int k, int n) { return k < (n + 1) / 2 ? k : k - n; }

// Keeps the central half of the spectrum. The 1/4 gain makes the result the spectrum
// of the spatially decimated lowpass image.
Spectrum crop_half(const Spectrum& s, int width, int height) {
  const int w2 = width / 2;
  const int h2 = height / 2;
  Spectrum out(static_cast<std::size_t>(w2) * h2);
  for (int ky = 0; ky < h2; ++ky) {
    const int fy = signed_frequency(ky, h2);
    const int src_y = fy >= 0 ? fy : fy + height;
    for (int kx = 0; kx < w2; ++kx) {
      const int fx = signed_frequency(kx, w2);
      const int src_x = fx >= 0 ? fx : fx + width;
      out[static_cast<std::size_t>(ky) * w2 + kx] =
          0.25 * s[static_cast<std::size_t>(src_y) * width + src_x];
    }
  }
  return out;
}

Spectrum embed_double(const Spectrum& s, int width, int height) {
  const int w2 = width * 2;
  const int h2 = height * 2;
  Spectrum out(static_cast<std::size_t>(w2) * h2);
  for (int ky = 0; ky < height; ++ky) {
    const int fy = signed_frequency(ky, height);
    const int dst_y = fy >= 0 ? fy : fy + h2;
    for (int kx = 0; kx < width; ++kx) {
      const int fx = signed_frequency(kx, width);
      const int dst_x = fx >= 0 ? fx : fx + w2;
      out[static_cast<std::size_t>(dst_y) * w2 + dst_x] =
          4.0 * s[static_cast<std::size_t>(ky) * width + kx];
    }
  }
  return out;
}

void check_pyramid_input(const ImagePlane& plane, const DecompositionConfig& config) {
  config.validate();
  const int factor = 1 << config.scales;
  if (plane.width() < factor || plane.height() < factor) {
    throw Error(Errc::ImageTooSmall, std::to_string(plane.width()) + "x" +
                                         std::to_string(plane.height()) + " is too small for " +
                                         std::to_string(config.scales) + " scales");
  }
  if (plane.width() % factor != 0 || plane.height() % factor != 0) {
    throw Error(Errc::InvalidArgument, "plane dimensions must be multiples of " +
                                           std::to_string(factor) + " (use crop_to_even)");
  }
}

}  // namespace

SubbandSet steerable_pyramid(const ImagePlane& plane, const DecompositionConfig& config) {
  check_pyramid_input(plane, config);
  const int orientations = config.orientations;
  const double gain = angular_gain(orientations);
  const std::complex<double> phase = band_phase(orientations);

  SubbandSet out{Transform::SteerablePyramid, {}, config};
  int w = plane.width();
  int h = plane.height();
  const Spectrum image = to_spectrum(plane);

  FrequencyGrid grid(w, h);
  Spectrum high(image.size());
  Spectrum low(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    high[i] = image[i] * highpass_profile(grid.log_radius[i]);
    low[i] = image[i] * lowpass_profile(grid.log_radius[i]);
  }
  out.subbands.push_back({0, 0, BandKind::Highpass, to_plane(std::move(high), w, h)});

  for (int scale = 0; scale < config.scales; ++scale) {
    if (scale > 0) grid = FrequencyGrid(w, h);
    for (int band = 0; band < orientations; ++band) {
      Spectrum s(low.size());
      for (std::size_t i = 0; i < low.size(); ++i) {
        const double mask = highpass_profile(grid.log_radius[i] + 1.0) *
                            angular_profile(grid.angle[i], band, orientations, gain);
        s[i] = low[i] * phase * mask;
      }
      out.subbands.push_back({scale, band, BandKind::Oriented, to_plane(std::move(s), w, h)});
    }
    for (std::size_t i = 0; i < low.size(); ++i) {
      low[i] *= lowpass_profile(grid.log_radius[i] + 1.0);
    }
    low = crop_half(low, w, h);
    w /= 2;
    h /= 2;
  }
  out.subbands.push_back({config.scales, 0, BandKind::Lowpass, to_plane(std::move(low), w, h)});
  return out;
}

ImagePlane reconstruct_steerable_pyramid(const SubbandSet& bands) {
  const DecompositionConfig& config = bands.config;
  const int orientations = config.orientations;
  const std::size_t expected = static_cast<std::size_t>(config.scales * orientations + 2);
  if (bands.transform != Transform::SteerablePyramid || bands.subbands.size() != expected) {
    throw Error(Errc::InvalidArgument, "not a complete steerable pyramid");
  }
  const double gain = angular_gain(orientations);
  const std::complex<double> phase = std::conj(band_phase(orientations));

  const Subband& lowpass = bands.subbands.back();
  int w = lowpass.coefficients.width();
  int h = lowpass.coefficients.height();
  Spectrum low = to_spectrum(lowpass.coefficients);

  for (int scale = config.scales - 1; scale >= 0; --scale) {
    low = embed_double(low, w, h);
    w *= 2;
    h *= 2;
    const FrequencyGrid grid(w, h);
    for (std::size_t i = 0; i < low.size(); ++i) {
      low[i] *= lowpass_profile(grid.log_radius[i] + 1.0);
    }
    for (int band = 0; band < orientations; ++band) {
      const Subband& sb = bands.subbands[1 + static_cast<std::size_t>(scale * orientations + band)];
      if (sb.coefficients.width() != w || sb.coefficients.height() != h) {
        throw Error(Errc::InvalidArgument, "pyramid band has unexpected dimensions");
      }
      const Spectrum s = to_spectrum(sb.coefficients);
      for (std::size_t i = 0; i < low.size(); ++i) {
        const double mask = highpass_profile(grid.log_radius[i] + 1.0) *
                            angular_profile(grid.angle[i], band, orientations, gain);
        low[i] += s[i] * phase * mask;
      }
    }
  }

  const FrequencyGrid grid(w, h);
  const Spectrum high = to_spectrum(bands.subbands.front().coefficients);
  for (std::size_t i = 0; i < low.size(); ++i) {
    low[i] = low[i] * lowpass_profile(grid.log_radius[i]) +
             high[i] * highpass_profile(grid.log_radius[i]);
  }
  return to_plane(std::move(low), w, h);
}

}  // namespace rriqa
