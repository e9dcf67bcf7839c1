#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rriqa {

enum class Errc {
  FileNotFound,
  UnsupportedFormat,
  CorruptImage,
  ImageTooSmall,
  InvalidArgument,
  SiftingDiverged,
  DegenerateInput,
  TooFewSamples,
  SubbandTooSmall,
  InvalidParams,
  BlockCountMismatch,
  ConfigMismatch,
  DegenerateScores,
  DivisionByZero,
  MissingMosFile,
  MissingReference,
  UnparseableFilename,
  InvalidPayload,
  Io,
};

std::string_view to_string(Errc code) noexcept;

// Every library failure is reported as an Error carrying one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace rriqa
