#include "dysphonia/errors.hpp"

namespace dysphonia {

const char* to_string(WavErrorCode code) noexcept {
  switch (code) {
    case WavErrorCode::kMissingFile: return "missing file";
    case WavErrorCode::kNotRiffWave: return "not a RIFF/WAVE file";
    case WavErrorCode::kNonPcm: return "non-PCM encoding";
    case WavErrorCode::kUnsupportedBitDepth: return "unsupported bit depth";
    case WavErrorCode::kUnsupportedChannels: return "unsupported channel count";
    case WavErrorCode::kTruncatedData: return "truncated data chunk";
    case WavErrorCode::kEmptyAudio: return "zero-length audio";
  }
  return "unknown wav error";
}

WavError::WavError(WavErrorCode code, const std::string& path, const std::string& detail)
    : Error(std::string(to_string(code)) + (path.empty() ? "" : " in '" + path + "'") +
            (detail.empty() ? "" : ": " + detail)),
      code_(code) {}

ManifestError::ManifestError(std::size_t line, const std::string& detail)
    : Error("manifest line " + std::to_string(line) + ": " + detail), line_(line) {}

UndefinedFeature::UndefinedFeature(std::string feature, const std::string& detail)
    : Error("undefined feature '" + feature + "': " + detail), feature_(std::move(feature)), detail_(detail) {}

}  // namespace dysphonia
