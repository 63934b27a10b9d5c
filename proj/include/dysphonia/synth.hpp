#pragma once

#include "dysphonia/audio_io.hpp"
#include "dysphonia/dataset.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dysphonia {

enum class SynthKind { kPulseTrain, kSine, kWhiteNoise, kSilence };

std::string_view to_string(SynthKind kind);
/// Accepts pulse_train (or pulse), sine, white_noise (or noise), silence.
std::optional<SynthKind> parse_synth_kind(std::string_view name);

struct SynthSpec {
  SynthKind kind = SynthKind::kPulseTrain;
  double f0 = 100.0;  // Hz
  double duration_s = 1.0;
  std::uint32_t sample_rate = 16000;
  double jitter_pct = 0.0;  // programmed mean |P_i - P_{i+1}| / mean P, percent
  double shimmer_db = 0.0;  // programmed |20 log10(V_{i+1} / V_i)|
  double amplitude = 0.9;   // peak level of the pulse train, sine or noise
  double noise_level = 0.0;  // additive uniform noise amplitude (pulse trains only)
  double phase = 0.0;        // sine start phase, radians
  std::uint64_t seed = 0;

  /// Throws InvalidArgument naming the offending field.
  void validate() const;
};

/// Generator ground truth. Cycle fields are filled for pulse trains only.
struct SynthTruth {
  SynthSpec spec;
  std::vector<std::size_t> onsets;        // sample index of each pulse
  std::vector<std::size_t> periods;       // onset spacing in samples
  std::vector<double> periods_s;
  std::vector<double> peaks;              // pulse peak amplitude per cycle
  double realized_jitter_pct = 0.0;       // from the integer periods
  double realized_shimmer_db = 0.0;       // from the peaks of measured cycles
};

struct SynthResult {
  AudioSignal signal;
  SynthTruth truth;
};

/// Pulse train: each cycle is an exponentially decaying pulse (time constant
/// T/4) starting at an integer onset, truncated at the next onset and offset
/// to zero mean, scaled so its peak equals the cycle amplitude. Cycle
/// periods are T (1 + delta_i) rounded to whole samples with centred uniform
/// delta scaled so the realized jitter matches the programmed value; odd
/// cycles are attenuated by shimmer_db.
SynthResult gen_signal(const SynthSpec& spec);

/// Three Gaussian clusters whose centres form an equilateral triangle with
/// side `separation` in a random plane of R^dims. Columns use the canonical
/// feature names when dims is 19, otherwise f0, f1, ...
LabeledDataset gen_blobs(const std::array<std::size_t, 3>& n_per_class, std::size_t dims = 19,
                         double separation = 5.0, double sigma = 0.1, std::uint64_t seed = 0);

/// Ground truth as a JSON document.
std::string truth_json(const SynthTruth& truth);

/// Writes `<stem>.wav` (16-bit PCM) and `<stem>.json` into out_dir.
void write_synth(const SynthResult& result, const std::filesystem::path& out_dir, const std::string& stem);

/// Per-class voice parameters of a synthetic recording corpus.
struct CorpusClass {
  double f0 = 120.0;
  double jitter_pct = 1.0;
  double shimmer_db = 1.0;
  double noise_level = 0.01;
};

struct CorpusSpec {
  std::array<std::size_t, 3> n_per_class{22, 28, 30};
  std::array<CorpusClass, 3> classes{CorpusClass{105.0, 3.0, 3.0, 0.02}, CorpusClass{140.0, 0.5, 0.5, 0.005},
                                     CorpusClass{120.0, 1.5, 1.5, 0.01}};
  double spread = 0.1;  // relative per-recording variation of every parameter
  double duration_s = 0.5;
  std::uint32_t sample_rate = 16000;
  std::uint64_t seed = 0;
};

/// Writes one WAV per recording plus `manifest.csv` (path,label) into
/// out_dir and returns the manifest path.
std::filesystem::path write_corpus(const CorpusSpec& spec, const std::filesystem::path& out_dir);

}  // namespace dysphonia
