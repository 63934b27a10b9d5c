#include "helpers.hpp"

#include "dysphonia/errors.hpp"
#include "dysphonia/pitch.hpp"
#include "dysphonia/synth.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace dysphonia;

namespace {

// Zero-mean decaying pulses at fixed integer spacing; amplitudes cycle
// through `amps`.
std::vector<double> pulse_train(std::size_t period, std::size_t cycles, std::vector<double> amps) {
  std::vector<double> shape(period);
  double mean = 0.0;
  for (std::size_t i = 0; i < period; ++i) {
    shape[i] = std::exp(-static_cast<double>(i) / (period / 4.0));
    mean += shape[i] / period;
  }
  for (double& v : shape) v = (v - mean) / (1.0 - mean);
  std::vector<double> x;
  for (std::size_t c = 0; c < cycles; ++c) {
    for (double v : shape) x.push_back(0.9 * amps[c % amps.size()] * v);
  }
  return x;
}

}  // namespace

TEST_CASE("200 Hz sine gives a 5 ms period") {
  const std::uint32_t fs = 16000;
  std::vector<double> frame(640);
  for (std::size_t i = 0; i < frame.size(); ++i) frame[i] = 0.8 * std::sin(2 * std::numbers::pi * 200.0 * i / fs);
  const PitchEstimate e = estimate_pitch(frame, fs, 60, 500, 0.3);
  REQUIRE(e.voiced());
  CHECK(std::fabs(*e.period_s * fs - 80.0) <= 1.0);
  CHECK(e.voicing_score > 0.8);
  CHECK(e.voicing_score <= 1.0);
}

TEST_CASE("white noise frames are mostly unvoiced") {
  const std::uint32_t fs = 16000;
  std::size_t unvoiced = 0;
  const std::size_t trials = 200;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto frame = testing::uniform_signal(640, 500 + t);
    if (!estimate_pitch(frame, fs, 60, 500, 0.3).voiced()) ++unvoiced;
  }
  CHECK(unvoiced >= trials * 95 / 100);
}

TEST_CASE("all-zero frame is unvoiced with score 0") {
  const std::vector<double> frame(640, 0.0);
  const PitchEstimate e = estimate_pitch(frame, 16000, 60, 500, 0.3);
  CHECK_FALSE(e.voiced());
  CHECK(e.voicing_score == 0.0);
}

TEST_CASE("invalid pitch ranges throw") {
  const std::vector<double> frame(640, 0.1);
  CHECK_THROWS_AS(estimate_pitch(frame, 16000, 500, 60, 0.3), InvalidArgument);
  CHECK_THROWS_AS(estimate_pitch(std::vector<double>(20, 0.1), 16000, 60, 500, 0.3), InvalidArgument);
}

TEST_CASE("perfect train of 10 cycles at period 80 gives 9 periods of 80") {
  const std::uint32_t fs = 8000;
  const AudioSignal s(pulse_train(80, 10, {1.0}), fs);
  const PitchTrack track = analyze_pitch(s);
  REQUIRE(track.size() == 9);
  for (double p : track.cycle_periods) CHECK(p * fs == doctest::Approx(80.0).epsilon(1e-12));
  for (std::size_t i = 0; i < track.cycle_starts.size(); ++i) CHECK(track.cycle_starts[i] == 80 * i);
}

TEST_CASE("alternating amplitudes are recovered per cycle") {
  const std::uint32_t fs = 8000;
  const AudioSignal s(pulse_train(80, 20, {1.0, 0.5}), fs);
  const PitchTrack track = analyze_pitch(s);
  REQUIRE(track.size() >= 10);
  const double first = track.cycle_peaks[0];
  for (std::size_t i = 0; i < track.cycle_peaks.size(); ++i) {
    const double want = i % 2 == 0 ? first : first / 2;
    CHECK(track.cycle_peaks[i] == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("noise yields no cycles") {
  const AudioSignal s(testing::uniform_signal(16000, 11), 16000);
  CHECK(analyze_pitch(s).size() == 0);
}

TEST_CASE("track agrees with generator ground truth") {
  for (double f0 : {90.0, 123.0, 200.0, 310.0}) {
    CAPTURE(f0);
    SynthSpec spec;
    spec.f0 = f0;
    spec.duration_s = 0.5;
    const SynthResult r = gen_signal(spec);
    const PitchTrack track = analyze_pitch(r.signal);
    const auto& truth = r.truth.periods;
    CHECK(std::abs(static_cast<long>(track.size()) - static_cast<long>(truth.size())) <= 1);
    const std::size_t n = std::min(track.size(), truth.size());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::fabs(track.cycle_periods[i] * spec.sample_rate - static_cast<double>(truth[i])) <= 1.0);
    }
  }
}

TEST_CASE("median smoothing") {
  std::vector<PitchEstimate> e(5);
  const double periods[] = {0.010, 0.010, 0.020, 0.010, 0.010};
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i].frame_index = i;
    e[i].period_s = periods[i];
  }
  median_smooth(e);
  for (const auto& est : e) CHECK(*est.period_s == 0.010);

  SUBCASE("isolated voiced frames keep their value") {
    std::vector<PitchEstimate> f(3);
    f[1].period_s = 0.005;
    median_smooth(f);
    CHECK(*f[1].period_s == 0.005);
    CHECK_FALSE(f[0].voiced());
  }
}

TEST_CASE("mean period converges to T") {
  const std::uint32_t fs = 16000;
  std::vector<double> x(16000);
  const double f0 = 147.0;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.7 * std::sin(2 * std::numbers::pi * f0 * i / fs);
  const AudioSignal s(x, fs);
  const auto frames = frame_signal(s, 40, 10);
  PitchConfig cfg;
  const auto est = estimate_frames(s, frames, cfg);
  double mean = 0.0;
  std::size_t voiced = 0;
  for (const auto& e : est) {
    if (e.voiced()) {
      mean += *e.period_s;
      ++voiced;
    }
  }
  REQUIRE(voiced == est.size());
  mean /= voiced;
  CHECK(std::fabs(mean * fs - fs / f0) <= 1.0);
}
