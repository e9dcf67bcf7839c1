#include "rriqa/config.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <string>

#include "rriqa/error.hpp"

namespace rriqa {

namespace {

std::string lower(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

class Fnv1a {
 public:
  void add(std::uint64_t v) noexcept {
    for (int i = 0; i < 8; ++i) {
      hash_ ^= (v >> (8 * i)) & 0xffU;
      hash_ *= 0x100000001b3ULL;
    }
  }
  void add(double v) noexcept { add(std::bit_cast<std::uint64_t>(v)); }
  void add(int v) noexcept { add(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))); }
  std::uint64_t value() const noexcept { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::string_view to_string(Measure measure) noexcept {
  switch (measure) {
    case Measure::Wnism:
      return "wnism";
    case Measure::Dnt:
      return "dnt";
    case Measure::Emism:
      return "emism";
    case Measure::Rred:
      return "rred";
  }
  return "unknown";
}

Measure parse_measure(std::string_view text) {
  const std::string s = lower(text);
  if (s == "wnism") return Measure::Wnism;
  if (s == "dnt") return Measure::Dnt;
  if (s == "emism") return Measure::Emism;
  if (s == "rred") return Measure::Rred;
  throw Error(Errc::InvalidArgument, "unknown measure '" + std::string(text) + "'");
}

std::string_view to_string(RredSubbands selection) noexcept {
  return selection == RredSubbands::FinestHorizontal ? "finest_horizontal" : "all_summed";
}

RredSubbands parse_rred_subbands(std::string_view text) {
  const std::string s = lower(text);
  if (s == "finest_horizontal") return RredSubbands::FinestHorizontal;
  if (s == "all_summed") return RredSubbands::AllSummed;
  throw Error(Errc::InvalidArgument, "unknown RRED subband selection '" + std::string(text) + "'");
}

void MeasureConfig::validate() const {
  decomposition.validate();
  if (!(d0 > 0.0) || !std::isfinite(d0)) {
    throw Error(Errc::InvalidArgument, "d0 must be positive and finite");
  }
  if (rred.block_size < 1) {
    throw Error(Errc::InvalidArgument, "RRED block size must be positive");
  }
  if (!(rred.noise_factor >= 0.0) || !std::isfinite(rred.noise_factor)) {
    throw Error(Errc::InvalidArgument, "RRED noise factor must be finite and non-negative");
  }
  for (double w : dnt_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(Errc::InvalidArgument, "DNT weights must be finite and non-negative");
    }
  }
  for (double w : channel_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(Errc::InvalidArgument, "channel weights must be finite and non-negative");
    }
  }
}

std::uint64_t feature_hash(const MeasureConfig& c) noexcept {
  Fnv1a h;
  h.add(static_cast<int>(c.measure));
  h.add(static_cast<int>(c.space));
  h.add(c.decomposition.scales);
  h.add(c.decomposition.orientations);
  h.add(c.decomposition.imf_count);
  h.add(c.decomposition.sift_max_iters);
  h.add(c.decomposition.sift_sd_threshold);
  h.add(c.rred.block_size);
  h.add(c.rred.noise_factor);
  h.add(static_cast<int>(c.rred.subbands));
  h.add(static_cast<int>(c.emism_include_residue));
  return h.value();
}

bool features_compatible(const MeasureConfig& a, const MeasureConfig& b) noexcept {
  return a.measure == b.measure && a.space == b.space && a.decomposition == b.decomposition &&
         a.rred.block_size == b.rred.block_size && a.rred.noise_factor == b.rred.noise_factor &&
         a.rred.subbands == b.rred.subbands &&
         a.emism_include_residue == b.emism_include_residue;
}

}  // namespace rriqa
