#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace dysphonia {

/// Decoded mono waveform. Samples are finite and lie in [-1, 1].
class AudioSignal {
 public:
  /// Validates the invariants (non-empty, finite, |x| <= 1, rate > 0).
  AudioSignal(std::vector<double> samples, std::uint32_t sample_rate, std::string source_path = {});

  std::span<const double> samples() const noexcept { return samples_; }
  std::uint32_t sample_rate() const noexcept { return sample_rate_; }
  const std::string& source_path() const noexcept { return source_path_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double duration_s() const noexcept {
    return static_cast<double>(samples_.size()) / static_cast<double>(sample_rate_);
  }

 private:
  std::vector<double> samples_;
  std::uint32_t sample_rate_;
  std::string source_path_;
};

struct Frame {
  std::size_t start_index = 0;
  std::size_t length = 0;
  std::size_t hop = 0;

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// Scales samples so that max |x| = 1. All-zero input is returned unchanged.
void peak_normalize(std::span<double> samples);

/// Decodes a RIFF/WAVE PCM file (16 or 24 bit, mono or stereo). Stereo is
/// averaged per sample, integers are scaled by full scale (2^15 or 2^23),
/// then the result is peak-normalized. Throws WavError.
AudioSignal load_wav(const std::filesystem::path& path);

/// Same as load_wav but from an in-memory file image.
AudioSignal decode_wav(std::span<const std::uint8_t> bytes, const std::string& source_path = {});

/// Encodes samples in [-1, 1] as PCM. bits must be 16 or 24; channels 1 or 2
/// (stereo writes the same sample to both channels).
std::vector<std::uint8_t> encode_wav(std::span<const double> samples, std::uint32_t sample_rate,
                                     int bits = 16, int channels = 1);

void write_wav(const std::filesystem::path& path, std::span<const double> samples,
               std::uint32_t sample_rate, int bits = 16);

/// Frames of round(frame_ms) samples every round(hop_ms) samples. Trailing
/// partial frames are dropped; a frame longer than the signal yields none.
std::vector<Frame> frame_signal(std::size_t signal_length, std::uint32_t sample_rate,
                                double frame_ms, double hop_ms);
std::vector<Frame> frame_signal(const AudioSignal& signal, double frame_ms, double hop_ms);

inline std::span<const double> frame_view(std::span<const double> samples, const Frame& frame) {
  return samples.subspan(frame.start_index, frame.length);
}

}  // namespace dysphonia
