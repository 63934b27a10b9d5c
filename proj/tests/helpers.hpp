#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("dysphonia_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::vector<double> uniform_signal(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);
  return x;
}

/// Little-endian RIFF/WAVE image built field by field.
struct WavBuilder {
  std::uint16_t format = 1;
  std::uint16_t channels = 1;
  std::uint32_t rate = 8000;
  std::uint16_t bits = 16;
  std::vector<std::uint8_t> data;
  bool extensible = false;
  std::uint32_t declared_data_size = 0xFFFFFFFF;  // use data.size() when left at default
  std::vector<std::uint8_t> extra_chunk;          // inserted before fmt when non-empty

  static void u16(std::vector<std::uint8_t>& o, std::uint16_t v) {
    o.push_back(static_cast<std::uint8_t>(v & 0xFF));
    o.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  static void u32(std::vector<std::uint8_t>& o, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) o.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
  }
  static void tag(std::vector<std::uint8_t>& o, const char* t) { o.insert(o.end(), t, t + 4); }

  void add_sample(std::int32_t v) {
    const int bytes = bits / 8;
    for (int i = 0; i < bytes; ++i) data.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
  }

  std::vector<std::uint8_t> build() const {
    std::vector<std::uint8_t> body;
    tag(body, "WAVE");
    if (!extra_chunk.empty()) {
      tag(body, "LIST");
      u32(body, static_cast<std::uint32_t>(extra_chunk.size()));
      body.insert(body.end(), extra_chunk.begin(), extra_chunk.end());
      if (extra_chunk.size() % 2) body.push_back(0);
    }
    tag(body, "fmt ");
    u32(body, extensible ? 40 : 16);
    u16(body, extensible ? 0xFFFE : format);
    u16(body, channels);
    u32(body, rate);
    const std::uint16_t align = static_cast<std::uint16_t>(channels * bits / 8);
    u32(body, rate * align);
    u16(body, align);
    u16(body, bits);
    if (extensible) {
      u16(body, 22);
      u16(body, bits);
      u32(body, channels == 1 ? 4 : 3);
      u16(body, format);  // sub-format GUID begins with the format tag
      const std::uint8_t rest[14] = {0x00, 0x00, 0x00, 0x00, 0x10, 0x00, 0x80, 0x00,
                                     0x00, 0xAA, 0x00, 0x38, 0x9B, 0x71};
      body.insert(body.end(), rest, rest + 14);
    }
    tag(body, "data");
    u32(body, declared_data_size == 0xFFFFFFFF ? static_cast<std::uint32_t>(data.size()) : declared_data_size);
    body.insert(body.end(), data.begin(), data.end());
    std::vector<std::uint8_t> out;
    tag(out, "RIFF");
    u32(out, static_cast<std::uint32_t>(body.size()));
    out.insert(out.end(), body.begin(), body.end());
    return out;
  }
};

}  // namespace testing
