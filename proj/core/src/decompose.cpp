#include "rriqa/decompose.hpp"

#include "rriqa/error.hpp"

namespace rriqa {

void DecompositionConfig::validate() const {
  if (scales < 1 || orientations < 1 || imf_count < 1 || sift_max_iters < 1 ||
      !(sift_sd_threshold > 0.0)) {
    throw Error(Errc::InvalidArgument, "decomposition parameters must be positive");
  }
  if (scales > 12) {
    throw Error(Errc::InvalidArgument, "at most 12 scales are supported");
  }
}

std::string_view to_string(BandKind kind) noexcept {
  switch (kind) {
    case BandKind::Oriented: return "oriented";
    case BandKind::Highpass: return "highpass";
    case BandKind::Lowpass: return "lowpass";
    case BandKind::Detail: return "detail";
    case BandKind::Approximation: return "approximation";
    case BandKind::Imf: return "imf";
    case BandKind::Residue: return "residue";
  }
  return "unknown";
}

std::vector<const Subband*> SubbandSet::feature_bands(bool include_residue) const {
  std::vector<const Subband*> out;
  for (const Subband& sb : subbands) {
    const bool keep = sb.kind == BandKind::Oriented || sb.kind == BandKind::Detail ||
                      sb.kind == BandKind::Imf ||
                      (include_residue && sb.kind == BandKind::Residue);
    if (keep) out.push_back(&sb);
  }
  return out;
}

}  // namespace rriqa
