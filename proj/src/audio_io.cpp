#include "dysphonia/audio_io.hpp"

#include "dysphonia/errors.hpp"
#include "dysphonia/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

namespace dysphonia {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

struct WavFormat {
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

WavFormat parse_fmt(const std::uint8_t* p, std::uint32_t size, const std::string& path) {
  if (size < 16) throw WavError(WavErrorCode::kNotRiffWave, path, "fmt chunk too short");
  std::uint16_t tag = read_u16(p);
  if (tag == kFormatExtensible) {
    if (size < 40) throw WavError(WavErrorCode::kNotRiffWave, path, "short extensible fmt chunk");
    tag = read_u16(p + 24);
  }
  if (tag != kFormatPcm) {
    throw WavError(WavErrorCode::kNonPcm, path, "format tag " + std::to_string(tag));
  }
  WavFormat fmt;
  fmt.channels = read_u16(p + 2);
  fmt.sample_rate = read_u32(p + 4);
  fmt.block_align = read_u16(p + 12);
  fmt.bits = read_u16(p + 14);
  if (fmt.bits != 16 && fmt.bits != 24) {
    throw WavError(WavErrorCode::kUnsupportedBitDepth, path, std::to_string(fmt.bits) + " bits");
  }
  if (fmt.channels != 1 && fmt.channels != 2) {
    throw WavError(WavErrorCode::kUnsupportedChannels, path,
                   std::to_string(fmt.channels) + " channels");
  }
  if (fmt.sample_rate == 0) throw WavError(WavErrorCode::kNotRiffWave, path, "sample rate 0");
  if (fmt.block_align != fmt.channels * (fmt.bits / 8)) {
    throw WavError(WavErrorCode::kNotRiffWave, path, "inconsistent block alignment");
  }
  return fmt;
}

double decode_sample(const std::uint8_t* p, int bits) {
  if (bits == 16) {
    const auto v = static_cast<std::int16_t>(read_u16(p));
    return static_cast<double>(v) / 32768.0;
  }
  std::int32_t v = static_cast<std::int32_t>(p[0] | (p[1] << 8) | (p[2] << 16));
  if (v & 0x800000) v -= 0x1000000;
  return static_cast<double>(v) / 8388608.0;
}

}  // namespace

AudioSignal::AudioSignal(std::vector<double> samples, std::uint32_t sample_rate,
                         std::string source_path)
    : samples_(std::move(samples)), sample_rate_(sample_rate), source_path_(std::move(source_path)) {
  if (samples_.empty()) throw InvalidArgument("AudioSignal: no samples");
  if (sample_rate_ == 0) throw InvalidArgument("AudioSignal: sample rate must be positive");
  for (double x : samples_) {
    if (!std::isfinite(x) || std::fabs(x) > 1.0) {
      throw InvalidArgument("AudioSignal: samples must be finite and within [-1, 1]");
    }
  }
}

void peak_normalize(std::span<double> samples) {
  const double peak = kernels::max_abs(samples);
  if (peak == 0.0 || peak == 1.0) return;
  for (double& x : samples) x /= peak;
}

AudioSignal decode_wav(std::span<const std::uint8_t> bytes, const std::string& source_path) {
  const std::uint8_t* base = bytes.data();
  const std::size_t total = bytes.size();
  if (total < 12 || std::memcmp(base, "RIFF", 4) != 0 || std::memcmp(base + 8, "WAVE", 4) != 0) {
    throw WavError(WavErrorCode::kNotRiffWave, source_path, "missing RIFF/WAVE header");
  }

  bool have_fmt = false;
  WavFormat fmt;
  std::size_t pos = 12;
  while (pos + 8 <= total) {
    const std::uint8_t* chunk = base + pos;
    const std::uint32_t size = read_u32(chunk + 4);
    const std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (body + size > total) throw WavError(WavErrorCode::kNotRiffWave, source_path, "fmt chunk truncated");
      fmt = parse_fmt(base + body, size, source_path);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw WavError(WavErrorCode::kNotRiffWave, source_path, "data chunk before fmt chunk");
      if (size == 0) throw WavError(WavErrorCode::kEmptyAudio, source_path, "");
      if (body + size > total) {
        throw WavError(WavErrorCode::kTruncatedData, source_path,
                       "declared " + std::to_string(size) + " bytes, " +
                           std::to_string(total - body) + " available");
      }
      if (size % fmt.block_align != 0) {
        throw WavError(WavErrorCode::kTruncatedData, source_path, "partial sample frame");
      }
      const std::size_t frames = size / fmt.block_align;
      const std::size_t width = fmt.bits / 8;
      std::vector<double> samples(frames);
      const std::uint8_t* p = base + body;
      for (std::size_t i = 0; i < frames; ++i, p += fmt.block_align) {
        if (fmt.channels == 1) {
          samples[i] = decode_sample(p, fmt.bits);
        } else {
          samples[i] = 0.5 * (decode_sample(p, fmt.bits) + decode_sample(p + width, fmt.bits));
        }
      }
      peak_normalize(samples);
      return AudioSignal(std::move(samples), fmt.sample_rate, source_path);
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt) throw WavError(WavErrorCode::kNotRiffWave, source_path, "no fmt chunk");
  throw WavError(WavErrorCode::kTruncatedData, source_path, "no data chunk");
}

AudioSignal load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WavError(WavErrorCode::kMissingFile, path.string(), "cannot open");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_wav(bytes, path.string());
}

std::vector<std::uint8_t> encode_wav(std::span<const double> samples, std::uint32_t sample_rate,
                                     int bits, int channels) {
  if (bits != 16 && bits != 24) throw InvalidArgument("encode_wav: bits must be 16 or 24");
  if (channels != 1 && channels != 2) throw InvalidArgument("encode_wav: channels must be 1 or 2");
  if (sample_rate == 0) throw InvalidArgument("encode_wav: sample rate must be positive");
  const std::uint16_t width = static_cast<std::uint16_t>(bits / 8);
  const std::uint16_t block_align = static_cast<std::uint16_t>(width * channels);
  const std::uint32_t data_size = static_cast<std::uint32_t>(samples.size() * block_align);

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_size);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, static_cast<std::uint16_t>(channels));
  put_u32(out, sample_rate);
  put_u32(out, sample_rate * block_align);
  put_u16(out, block_align);
  put_u16(out, static_cast<std::uint16_t>(bits));
  put_tag(out, "data");
  put_u32(out, data_size);

  const double full_scale = bits == 16 ? 32767.0 : 8388607.0;
  for (double x : samples) {
    const auto q = static_cast<std::int32_t>(std::lround(std::clamp(x, -1.0, 1.0) * full_scale));
    for (int c = 0; c < channels; ++c) {
      for (int b = 0; b < width; ++b) out.push_back(static_cast<std::uint8_t>((q >> (8 * b)) & 0xFF));
    }
  }
  return out;
}

void write_wav(const std::filesystem::path& path, std::span<const double> samples,
               std::uint32_t sample_rate, int bits) {
  const auto bytes = encode_wav(samples, sample_rate, bits);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<Frame> frame_signal(std::size_t signal_length, std::uint32_t sample_rate,
                                double frame_ms, double hop_ms) {
  if (!(frame_ms > 0.0) || !(hop_ms > 0.0)) {
    throw InvalidArgument("frame_signal: frame and hop durations must be positive");
  }
  const auto length = static_cast<std::size_t>(std::llround(frame_ms * sample_rate / 1000.0));
  const auto hop = static_cast<std::size_t>(std::llround(hop_ms * sample_rate / 1000.0));
  if (length == 0 || hop == 0) {
    throw InvalidArgument("frame_signal: frame or hop shorter than one sample");
  }
  std::vector<Frame> frames;
  if (length > signal_length) return frames;
  frames.reserve((signal_length - length) / hop + 1);
  for (std::size_t start = 0; start + length <= signal_length; start += hop) {
    frames.push_back(Frame{start, length, hop});
  }
  return frames;
}

std::vector<Frame> frame_signal(const AudioSignal& signal, double frame_ms, double hop_ms) {
  return frame_signal(signal.size(), signal.sample_rate(), frame_ms, hop_ms);
}

}  // namespace dysphonia
