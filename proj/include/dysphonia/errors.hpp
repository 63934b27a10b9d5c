#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dysphonia {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied an argument outside an operation's contract.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

enum class WavErrorCode {
  kMissingFile,
  kNotRiffWave,
  kNonPcm,
  kUnsupportedBitDepth,
  kUnsupportedChannels,
  kTruncatedData,
  kEmptyAudio,
};

const char* to_string(WavErrorCode code) noexcept;

class WavError : public Error {
 public:
  WavError(WavErrorCode code, const std::string& path, const std::string& detail);
  WavErrorCode code() const noexcept { return code_; }

 private:
  WavErrorCode code_;
};

class ManifestError : public Error {
 public:
  ManifestError(std::size_t line, const std::string& detail);
  /// 1-based line number of the offending record.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A feature cannot be computed for the given input (too few cycles, zero power, ...).
class UndefinedFeature : public Error {
 public:
  UndefinedFeature(std::string feature, const std::string& detail);
  const std::string& feature() const noexcept { return feature_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string feature_;
  std::string detail_;
};

}  // namespace dysphonia
