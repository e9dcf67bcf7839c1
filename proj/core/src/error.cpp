#include "rriqa/error.hpp"

namespace rriqa {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::UnsupportedFormat: return "UnsupportedFormat";
    case Errc::CorruptImage: return "CorruptImage";
    case Errc::ImageTooSmall: return "ImageTooSmall";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::SiftingDiverged: return "SiftingDiverged";
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::SubbandTooSmall: return "SubbandTooSmall";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::BlockCountMismatch: return "BlockCountMismatch";
    case Errc::ConfigMismatch: return "ConfigMismatch";
    case Errc::DegenerateScores: return "DegenerateScores";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::MissingMosFile: return "MissingMosFile";
    case Errc::MissingReference: return "MissingReference";
    case Errc::UnparseableFilename: return "UnparseableFilename";
    case Errc::InvalidPayload: return "InvalidPayload";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace rriqa
