#include "helpers.hpp"

#include "dysphonia/audio_io.hpp"
#include "dysphonia/errors.hpp"
#include "dysphonia/manifest.hpp"

#include <doctest.h>

#include <cmath>

using namespace dysphonia;
using testing::WavBuilder;

namespace {

WavErrorCode decode_error(const std::vector<std::uint8_t>& bytes) {
  try {
    decode_wav(bytes, "x.wav");
  } catch (const WavError& e) {
    return e.code();
  }
  FAIL("expected WavError");
  return WavErrorCode::kMissingFile;
}

}  // namespace

TEST_CASE("mono 16-bit full-scale pair decodes to +-1") {
  WavBuilder b;
  b.add_sample(16384);
  b.add_sample(-16384);
  const AudioSignal s = decode_wav(b.build());
  REQUIRE(s.size() == 2);
  CHECK(s.samples()[0] == 1.0);
  CHECK(s.samples()[1] == -1.0);
  CHECK(s.sample_rate() == 8000);
}

TEST_CASE("stereo frames are averaged before normalization") {
  WavBuilder b;
  b.channels = 2;
  // (0.4, 0.8) -> 0.6 and (0.2, 0.4) -> 0.3; peak normalization maps 0.6 to 1.
  for (double v : {0.4, 0.8, 0.2, 0.4}) b.add_sample(static_cast<std::int32_t>(std::lround(v * 32768)));
  const AudioSignal s = decode_wav(b.build());
  REQUIRE(s.size() == 2);
  CHECK(s.samples()[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.samples()[1] == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("all-zero audio stays zero") {
  WavBuilder b;
  for (int i = 0; i < 100; ++i) b.add_sample(0);
  const AudioSignal s = decode_wav(b.build());
  REQUIRE(s.size() == 100);
  for (double v : s.samples()) CHECK(v == 0.0);
}

TEST_CASE("24-bit and extensible headers decode") {
  WavBuilder b;
  b.bits = 24;
  b.extensible = true;
  b.add_sample(4194304);   // 0.5 full scale
  b.add_sample(-2097152);  // -0.25
  const AudioSignal s = decode_wav(b.build());
  REQUIRE(s.size() == 2);
  CHECK(s.samples()[0] == 1.0);
  CHECK(s.samples()[1] == -0.5);
}

TEST_CASE("unknown chunks with odd sizes are skipped") {
  WavBuilder b;
  b.extra_chunk = {1, 2, 3};
  b.add_sample(1000);
  b.add_sample(-2000);
  const AudioSignal s = decode_wav(b.build());
  REQUIRE(s.size() == 2);
  CHECK(s.samples()[1] == -1.0);
}

TEST_CASE("decoder errors are distinct") {
  SUBCASE("not RIFF") { CHECK(decode_error({'J', 'U', 'N', 'K', 0, 0, 0, 0, 'W', 'A', 'V', 'E'}) == WavErrorCode::kNotRiffWave); }
  SUBCASE("non-PCM") {
    WavBuilder b;
    b.format = 3;
    b.bits = 16;
    b.add_sample(1);
    CHECK(decode_error(b.build()) == WavErrorCode::kNonPcm);
  }
  SUBCASE("8-bit") {
    WavBuilder b;
    b.bits = 8;
    b.data = {1, 2};
    CHECK(decode_error(b.build()) == WavErrorCode::kUnsupportedBitDepth);
  }
  SUBCASE("three channels") {
    WavBuilder b;
    b.channels = 3;
    for (int i = 0; i < 3; ++i) b.add_sample(5);
    CHECK(decode_error(b.build()) == WavErrorCode::kUnsupportedChannels);
  }
  SUBCASE("declared size beyond file") {
    WavBuilder b;
    b.add_sample(5);
    b.declared_data_size = 400;
    CHECK(decode_error(b.build()) == WavErrorCode::kTruncatedData);
  }
  SUBCASE("partial sample frame") {
    WavBuilder b;
    b.add_sample(5);
    b.data.push_back(7);
    CHECK(decode_error(b.build()) == WavErrorCode::kTruncatedData);
  }
  SUBCASE("zero-length data") { CHECK(decode_error(WavBuilder{}.build()) == WavErrorCode::kEmptyAudio); }
  SUBCASE("missing file") {
    try {
      load_wav("/nonexistent/dir/none.wav");
      FAIL("expected WavError");
    } catch (const WavError& e) {
      CHECK(e.code() == WavErrorCode::kMissingFile);
    }
  }
}

TEST_CASE("encode/decode round trip is within one LSB") {
  const auto x = testing::uniform_signal(2000, 7, -0.999, 0.999);
  std::vector<double> ref = x;
  peak_normalize(ref);
  for (int bits : {16, 24}) {
    const double lsb = bits == 16 ? 1.0 / 32767 : 1.0 / 8388607;
    const AudioSignal s = decode_wav(encode_wav(ref, 16000, bits));
    REQUIRE(s.size() == ref.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) worst = std::max(worst, std::fabs(s.samples()[i] - ref[i]));
    CHECK(worst <= 1.5 * lsb);
  }
  const AudioSignal stereo = decode_wav(encode_wav(ref, 16000, 16, 2));
  CHECK(stereo.size() == ref.size());
}

TEST_CASE("peak normalization is idempotent") {
  auto x = testing::uniform_signal(500, 3, -0.3, 0.2);
  peak_normalize(x);
  auto y = x;
  peak_normalize(y);
  CHECK(x == y);
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::fabs(v));
  CHECK(peak == 1.0);
}

TEST_CASE("AudioSignal rejects invalid samples") {
  CHECK_THROWS_AS(AudioSignal({}, 8000), InvalidArgument);
  CHECK_THROWS_AS(AudioSignal({0.1}, 0), InvalidArgument);
  CHECK_THROWS_AS(AudioSignal({1.5}, 8000), InvalidArgument);
  CHECK_THROWS_AS(AudioSignal({std::nan("")}, 8000), InvalidArgument);
}

TEST_CASE("framing") {
  SUBCASE("1 s at 8 kHz, 40/10 ms") {
    const auto frames = frame_signal(8000, 8000, 40, 10);
    REQUIRE(frames.size() == 97);
    for (const Frame& f : frames) CHECK(f.length == 320);
    CHECK(frames.back().start_index + frames.back().length <= 8000);
  }
  SUBCASE("frame longer than signal") { CHECK(frame_signal(160, 8000, 40, 10).empty()); }
  SUBCASE("hop equals frame tiles the signal") {
    const auto frames = frame_signal(1000, 8000, 10, 10);
    CHECK(frames.size() == 1000 / 80);
    for (std::size_t i = 0; i < frames.size(); ++i) CHECK(frames[i].start_index == i * 80);
  }
  SUBCASE("non-positive sizes") {
    CHECK_THROWS_AS(frame_signal(1000, 8000, 0, 10), InvalidArgument);
    CHECK_THROWS_AS(frame_signal(1000, 8000, 40, -1), InvalidArgument);
  }
}

TEST_CASE("manifest parsing") {
  SUBCASE("22/28/30 class balance") {
    std::string text = "path,label\n";
    for (int i = 0; i < 22; ++i) text += "off" + std::to_string(i) + ".wav,0\n";
    for (int i = 0; i < 30; ++i) text += "on" + std::to_string(i) + ".wav,2\n";
    for (int i = 0; i < 28; ++i) text += "h" + std::to_string(i) + ".wav,1\n";
    const Manifest m = parse_manifest(text);
    CHECK(m.entries.size() == 80);
    const auto counts = m.class_counts();
    CHECK(counts[0] == 22);
    CHECK(counts[1] == 28);
    CHECK(counts[2] == 30);
    CHECK(counts[0] + counts[1] + counts[2] == m.entries.size());
  }
  SUBCASE("empty") { CHECK(parse_manifest("").entries.empty()); }
  SUBCASE("bad label names the line") {
    try {
      parse_manifest("x.wav,1\na.wav,3\n");
      FAIL("expected ManifestError");
    } catch (const ManifestError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find('3') != std::string::npos);
    }
  }
  SUBCASE("malformed line") { CHECK_THROWS_AS(parse_manifest("x.wav,1\nnocomma\n"), ManifestError); }
  SUBCASE("duplicates warn but are kept") {
    const Manifest m = parse_manifest("a.wav,0\na.wav,1\n");
    CHECK(m.entries.size() == 2);
    CHECK(m.warnings.size() == 1);
  }
  SUBCASE("relative paths resolve against the base directory") {
    const Manifest m = parse_manifest("sub/a.wav,0\n/abs/b.wav,1\n", "/data");
    CHECK(m.entries[0].path == "/data/sub/a.wav");
    CHECK(m.entries[1].path == "/abs/b.wav");
  }
  SUBCASE("class names") {
    CHECK(class_display_name(0) == "0 (Med Off)");
    CHECK(class_display_name(1) == "1 (Healthy)");
    CHECK(class_display_name(2) == "2 (Med On)");
  }
}

TEST_CASE("write_wav then load_wav") {
  testing::TempDir dir("audio");
  const std::vector<double> x = {0.0, 0.25, -0.5, 0.125};
  write_wav(dir / "a.wav", x, 22050, 16);
  const AudioSignal s = load_wav(dir / "a.wav");
  CHECK(s.sample_rate() == 22050);
  REQUIRE(s.size() == 4);
  CHECK(s.samples()[2] == -1.0);
  CHECK(s.samples()[1] == doctest::Approx(0.5).epsilon(1e-4));
}
