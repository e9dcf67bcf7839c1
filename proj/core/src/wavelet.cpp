#include <array>
#include <string>
#include <vector>

#include "rriqa/decompose.hpp"
#include "rriqa/error.hpp"

namespace rriqa {

namespace {

// Symlet-4 decomposition lowpass.
constexpr std::array<double, 8> kLowpass{
    -0.07576571478927333, -0.02963552764599851, 0.49761866763201545, 0.8037387518059161,
    0.29785779560527736,  -0.09921954357684722, -0.012603967262037833, 0.0322231006040427,
};

constexpr std::array<double, 8> make_highpass() {
  std::array<double, 8> g{};
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    g[k] = sign * kLowpass[kLowpass.size() - 1 - k];
  }
  return g;
}

constexpr std::array<double, 8> kHighpass = make_highpass();

// One periodic analysis step over `n` samples spaced `stride` apart.
void analyze(const double* in, std::size_t stride, int n, double* low, double* high,
             std::size_t out_stride) {
  const int half = n / 2;
  for (int i = 0; i < half; ++i) {
    double a = 0.0;
    double d = 0.0;
    for (std::size_t k = 0; k < kLowpass.size(); ++k) {
      const double x = in[static_cast<std::size_t>((2 * i + static_cast<int>(k)) % n) * stride];
      a += kLowpass[k] * x;
      d += kHighpass[k] * x;
    }
    low[static_cast<std::size_t>(i) * out_stride] = a;
    high[static_cast<std::size_t>(i) * out_stride] = d;
  }
}

void synthesize(const double* low, const double* high, std::size_t in_stride, int n, double* out,
                std::size_t stride) {
  for (int m = 0; m < n; ++m) out[static_cast<std::size_t>(m) * stride] = 0.0;
  const int half = n / 2;
  for (int i = 0; i < half; ++i) {
    const double a = low[static_cast<std::size_t>(i) * in_stride];
    const double d = high[static_cast<std::size_t>(i) * in_stride];
    for (std::size_t k = 0; k < kLowpass.size(); ++k) {
      const std::size_t m = static_cast<std::size_t>((2 * i + static_cast<int>(k)) % n);
      out[m * stride] += kLowpass[k] * a + kHighpass[k] * d;
    }
  }
}

struct Quad {
  ImagePlane ll, lh, hl, hh;
};

// lh: lowpass along x, highpass along y (horizontal edges).
Quad analyze_2d(const ImagePlane& in) {
  const int w = in.width();
  const int h = in.height();
  const int w2 = w / 2;
  const int h2 = h / 2;
  std::vector<double> row_low(static_cast<std::size_t>(w2) * h);
  std::vector<double> row_high(static_cast<std::size_t>(w2) * h);
  const double* src = in.values().data();
  for (int y = 0; y < h; ++y) {
    const std::size_t o = static_cast<std::size_t>(y);
    analyze(src + o * w, 1, w, row_low.data() + o * w2, row_high.data() + o * w2, 1);
  }
  Quad q{ImagePlane(w2, h2), ImagePlane(w2, h2), ImagePlane(w2, h2), ImagePlane(w2, h2)};
  for (int x = 0; x < w2; ++x) {
    analyze(row_low.data() + x, w2, h, q.ll.values().data() + x, q.lh.values().data() + x, w2);
    analyze(row_high.data() + x, w2, h, q.hl.values().data() + x, q.hh.values().data() + x, w2);
  }
  return q;
}

ImagePlane synthesize_2d(const Quad& q) {
  const int w2 = q.ll.width();
  const int h2 = q.ll.height();
  const int w = 2 * w2;
  const int h = 2 * h2;
  std::vector<double> row_low(static_cast<std::size_t>(w2) * h);
  std::vector<double> row_high(static_cast<std::size_t>(w2) * h);
  for (int x = 0; x < w2; ++x) {
    synthesize(q.ll.values().data() + x, q.lh.values().data() + x, w2, h, row_low.data() + x, w2);
    synthesize(q.hl.values().data() + x, q.hh.values().data() + x, w2, h, row_high.data() + x, w2);
  }
  std::vector<double> out(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    const std::size_t o = static_cast<std::size_t>(y);
    synthesize(row_low.data() + o * w2, row_high.data() + o * w2, 1, w, out.data() + o * w, 1);
  }
  return ImagePlane(w, h, std::move(out));
}

}  // namespace

std::span<const double> wavelet_lowpass_filter() noexcept { return kLowpass; }

SubbandSet wavelet(const ImagePlane& plane, const DecompositionConfig& config) {
  config.validate();
  const int factor = 1 << config.scales;
  if (plane.width() < factor || plane.height() < factor) {
    throw Error(Errc::ImageTooSmall, std::to_string(plane.width()) + "x" +
                                         std::to_string(plane.height()) + " is too small for " +
                                         std::to_string(config.scales) + " wavelet scales");
  }
  if (plane.width() % factor != 0 || plane.height() % factor != 0) {
    throw Error(Errc::InvalidArgument, "plane dimensions must be multiples of " +
                                           std::to_string(factor) + " (use crop_to_even)");
  }
  SubbandSet out{Transform::Wavelet, {}, config};
  ImagePlane approx = plane;
  for (int scale = 1; scale <= config.scales; ++scale) {
    Quad q = analyze_2d(approx);
    out.subbands.push_back({scale, kHorizontalDetail, BandKind::Detail, std::move(q.lh)});
    out.subbands.push_back({scale, kVerticalDetail, BandKind::Detail, std::move(q.hl)});
    out.subbands.push_back({scale, kDiagonalDetail, BandKind::Detail, std::move(q.hh)});
    approx = std::move(q.ll);
  }
  out.subbands.push_back({config.scales, 0, BandKind::Approximation, std::move(approx)});
  return out;
}

ImagePlane inverse_wavelet(const SubbandSet& bands) {
  const int scales = bands.config.scales;
  if (bands.transform != Transform::Wavelet ||
      bands.subbands.size() != static_cast<std::size_t>(3 * scales + 1)) {
    throw Error(Errc::InvalidArgument, "not a complete wavelet decomposition");
  }
  ImagePlane approx = bands.subbands.back().coefficients;
  for (int scale = scales; scale >= 1; --scale) {
    const std::size_t base = static_cast<std::size_t>(3 * (scale - 1));
    Quad q{std::move(approx), bands.subbands[base].coefficients,
           bands.subbands[base + 1].coefficients, bands.subbands[base + 2].coefficients};
    approx = synthesize_2d(q);
  }
  return approx;
}

}  // namespace rriqa
