#include "helpers.hpp"
#include "oracle.hpp"

#include "dysphonia/errors.hpp"
#include "dysphonia/features.hpp"
#include "dysphonia/manifest.hpp"
#include "dysphonia/synth.hpp"

#include <json.hpp>

#include <doctest.h>

#include <cmath>

using namespace dysphonia;

TEST_CASE("unperturbed pulse train measures zero jitter and shimmer") {
  SynthSpec spec;
  const SynthResult r = gen_signal(spec);
  CHECK(r.truth.realized_jitter_pct == 0.0);
  CHECK(r.truth.realized_shimmer_db == 0.0);
  const auto d = extract_detailed(r.signal);
  CHECK(std::fabs(d.features[Feature::kJitterPct]) <= 1e-9);
  CHECK(std::fabs(d.features[Feature::kShimmerDb]) <= 1e-9);
}

TEST_CASE("programmed jitter is realized and measured") {
  for (double j : {0.5, 1.0, 2.0}) {
    CAPTURE(j);
    SynthSpec spec;
    spec.jitter_pct = j;
    spec.seed = 3;
    const SynthResult r = gen_signal(spec);
    std::vector<double> periods(r.truth.periods.begin(), r.truth.periods.end());
    CHECK(std::fabs(static_cast<double>(oracle::jitter_pct(periods)) - r.truth.realized_jitter_pct) <= 1e-9);
    CHECK(std::fabs(r.truth.realized_jitter_pct - j) <= 0.05);
    const double measured = extract_detailed(r.signal).features[Feature::kJitterPct];
    CHECK(std::fabs(measured - j) <= 0.2);
  }
}

TEST_CASE("ground-truth peaks follow the shimmer alternation") {
  SynthSpec spec;
  spec.shimmer_db = 6.0206;
  const SynthResult r = gen_signal(spec);
  REQUIRE(r.truth.peaks.size() >= 4);
  for (std::size_t i = 0; i + 1 < r.truth.peaks.size(); ++i) {
    CHECK(std::fabs(std::fabs(20 * std::log10(r.truth.peaks[i + 1] / r.truth.peaks[i])) - 6.0206) <= 1e-9);
  }
  CHECK(std::fabs(extract_detailed(r.signal).features[Feature::kShimmerDb] - 6.0206) <= 0.5);
}

TEST_CASE("sine mean frequency") {
  SynthSpec spec;
  spec.kind = SynthKind::kSine;
  spec.f0 = 440;
  const SynthResult r = gen_signal(spec);
  const auto ps = welch_psd(r.signal.samples(), r.signal.sample_rate());
  CHECK(std::fabs(mean_frequency(ps) - 440.0) <= ps.bin_width_hz);
  CHECK(r.truth.onsets.empty());
}

TEST_CASE("generated signals satisfy the audio invariants") {
  for (SynthKind k : {SynthKind::kPulseTrain, SynthKind::kSine, SynthKind::kWhiteNoise, SynthKind::kSilence}) {
    CAPTURE(to_string(k));
    SynthSpec spec;
    spec.kind = k;
    spec.duration_s = 0.25;
    spec.jitter_pct = 2.0;
    spec.shimmer_db = 3.0;
    spec.noise_level = k == SynthKind::kPulseTrain ? 0.05 : 0.0;
    const SynthResult r = gen_signal(spec);
    CHECK(r.signal.size() == 4000);
    for (double v : r.signal.samples()) CHECK(std::fabs(v) <= 1.0);
  }
}

TEST_CASE("generation is seed-deterministic") {
  SynthSpec spec;
  spec.jitter_pct = 1.0;
  spec.noise_level = 0.02;
  spec.seed = 10;
  const auto a = gen_signal(spec);
  const auto b = gen_signal(spec);
  CHECK(std::equal(a.signal.samples().begin(), a.signal.samples().end(), b.signal.samples().begin()));
  spec.seed = 11;
  const auto c = gen_signal(spec);
  CHECK(a.truth.periods != c.truth.periods);
}

TEST_CASE("SynthSpec validation") {
  auto bad = [](auto mutate) {
    SynthSpec s;
    mutate(s);
    return s;
  };
  CHECK_THROWS_AS(gen_signal(bad([](SynthSpec& s) { s.f0 = 8000; })), InvalidArgument);
  CHECK_THROWS_AS(gen_signal(bad([](SynthSpec& s) { s.f0 = 0; })), InvalidArgument);
  CHECK_THROWS_AS(gen_signal(bad([](SynthSpec& s) { s.duration_s = 0; })), InvalidArgument);
  CHECK_THROWS_AS(gen_signal(bad([](SynthSpec& s) { s.jitter_pct = -1; })), InvalidArgument);
  CHECK_THROWS_AS(gen_signal(bad([](SynthSpec& s) { s.amplitude = 0.95, s.noise_level = 0.1; })), InvalidArgument);
  CHECK(parse_synth_kind("pulse") == SynthKind::kPulseTrain);
  CHECK(parse_synth_kind("noise") == SynthKind::kWhiteNoise);
  CHECK_FALSE(parse_synth_kind("chirp").has_value());
}

TEST_CASE("truth json echoes the SynthSpec") {
  SynthSpec spec;
  spec.jitter_pct = 1.0;
  const auto r = gen_signal(spec);
  const auto j = nlohmann::json::parse(truth_json(r.truth));
  CHECK(j.at("kind") == "pulse_train");
  CHECK(j.at("jitter_pct") == 1.0);
  CHECK(j.at("periods_samples").size() == r.truth.periods.size());

  testing::TempDir dir("synth");
  write_synth(r, dir.path(), "voice");
  CHECK(std::filesystem::exists(dir / "voice.wav"));
  CHECK(load_wav(dir / "voice.wav").size() == r.signal.size());
  CHECK(nlohmann::json::parse(testing::read_file(dir / "voice.json")) == j);
}

TEST_CASE("blobs") {
  const auto a = gen_blobs({22, 28, 30}, 19, 5.0, 0.1, 1);
  const auto b = gen_blobs({22, 28, 30}, 19, 5.0, 0.1, 1);
  CHECK(a.rows == b.rows);
  CHECK(a.labels == b.labels);
  CHECK(a.class_counts() == std::array<std::size_t, 3>{22, 28, 30});
  CHECK(a.feature_names.front() == "maximum");
  // Perfect 1-nn on a holdout: every point's nearest other point shares its class.
  std::size_t ok = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = 1e300;
    int label = -1;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (k == i) continue;
      double d = 0;
      for (std::size_t j = 0; j < a.dims(); ++j) d += (a.rows[i][j] - a.rows[k][j]) * (a.rows[i][j] - a.rows[k][j]);
      if (d < best) {
        best = d;
        label = a.labels[k];
      }
    }
    ok += label == a.labels[i];
  }
  CHECK(ok == a.size());
  CHECK(gen_blobs({2, 2, 2}, 3, 5.0, 0.1, 1).feature_names[2] == "f2");
  CHECK_THROWS_AS(gen_blobs({0, 2, 2}), InvalidArgument);
}

TEST_CASE("corpus writer") {
  testing::TempDir dir("corpus");
  CorpusSpec spec;
  spec.n_per_class = {2, 3, 4};
  spec.duration_s = 0.2;
  const auto manifest = write_corpus(spec, dir.path());
  const Manifest m = load_manifest(manifest);
  CHECK(m.entries.size() == 9);
  CHECK(m.class_counts() == std::array<std::size_t, 3>{2, 3, 4});
  for (const auto& e : m.entries) CHECK(std::filesystem::exists(e.path));
}
