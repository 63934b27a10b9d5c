#pragma once

#include "dysphonia/audio_io.hpp"
#include "dysphonia/pitch.hpp"
#include "dysphonia/spectrum.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace dysphonia {

inline constexpr std::size_t kNumFeatures = 19;

/// Canonical feature order; the index is the column position everywhere.
enum class Feature : std::size_t {
  kMaximum,
  kMeanFrequency,
  kMinimum,
  kShimmerDb,
  kLogEntropy,
  kPowerBandwidthHz,
  kJitterPct,
  kMeanEnergy,
  kRms,
  kStdDev,
  kVariance,
  kAmplitudeMean,
  kMedian,
  kSkewness,
  kKurtosis,
  kShannonEntropy,
  kZcr,
  kSureEntropy,
  kIqr,
};

const std::array<std::string_view, kNumFeatures>& feature_names();
std::string_view feature_name(Feature f);
/// Index of a canonical name, or nullopt.
std::optional<std::size_t> feature_index(std::string_view name);

struct FeatureVector {
  std::array<double, kNumFeatures> values{};

  double operator[](Feature f) const { return values[static_cast<std::size_t>(f)]; }
  double& operator[](Feature f) { return values[static_cast<std::size_t>(f)]; }
};

struct FeatureConfig {
  PitchConfig pitch;
  WelchConfig welch;
  double energy_frame_ms = 40.0;
  double energy_hop_ms = 10.0;
  double sure_threshold = 0.2;
  double log_epsilon = 1e-12;
};

// Pitch-derived ------------------------------------------------------------

struct JitterValue {
  double absolute_s = 0.0;  // mean |P_i - P_{i+1}|
  double percent = 0.0;     // 100 * absolute / mean P
};

/// Throws UndefinedFeature("jitter") when fewer than two cycles are present.
JitterValue jitter(const PitchTrack& track);
double jitter_pct(const PitchTrack& track);

/// Mean |20 log10(V_{i+1} / V_i)| in dB. Requires N >= 2 and every V_i > 0.
double shimmer_db(const PitchTrack& track);

// Time domain -------------------------------------------------------------

double rms(std::span<const double> x);

/// Fraction of adjacent pairs that change sign, sgn(0) = +1. Length >= 2.
double zcr(std::span<const double> x);

/// Mean over frames of (1/L) sum x^2; the whole signal is one frame if it
/// is shorter than a frame.
double mean_energy(std::span<const double> x, std::uint32_t sample_rate, double frame_ms = 40.0,
                   double hop_ms = 10.0);

struct DescriptiveStats {
  double maximum = 0.0;
  double minimum = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double variance = 0.0;  // (n - 1) divisor
  double std_dev = 0.0;
  double skewness = 0.0;  // m3 / m2^(3/2), population moments
  double kurtosis = 0.0;  // m4 / m2^2 (normal = 3)
  double iqr = 0.0;       // linear-interpolation quantiles
};

DescriptiveStats descriptive_stats(std::span<const double> x);

/// Quantile with linear interpolation between order statistics of a sorted
/// sequence (h = (n - 1) p).
double quantile_sorted(std::span<const double> sorted, double p);

/// Sum of log(x^2 + eps).
double log_entropy(std::span<const double> x, double epsilon = 1e-12);

/// N - #{|x| <= t} + sum min(x^2, t^2).
double sure_entropy(std::span<const double> x, double threshold = 0.2);

// Spectral ----------------------------------------------------------------

/// Power-weighted mean frequency. Throws UndefinedFeature on zero power.
double mean_frequency(const PowerSpectrum& spectrum);

/// Shannon entropy of the normalized distribution, divided by log2(K).
double normalized_entropy(std::span<const double> power);
double shannon_entropy(const PowerSpectrum& spectrum);

/// Width of the contiguous band around the PSD peak with PSD >= peak / 2,
/// edges linearly interpolated between bins.
double power_bandwidth(const PowerSpectrum& spectrum);

// All ---------------------------------------------------------------------

struct ExtractionDetail {
  FeatureVector features;
  PitchTrack track;
  double jitter_abs_s = 0.0;
};

/// Computes the 19 features from a signal and its pitch track. Throws
/// UndefinedFeature (naming the feature and the source file) instead of
/// imputing values.
FeatureVector extract_all(const AudioSignal& signal, const PitchTrack& track,
                          const FeatureConfig& config = {});

/// Runs the pitch analysis and extract_all, keeping intermediate values.
ExtractionDetail extract_detailed(const AudioSignal& signal, const FeatureConfig& config = {});

}  // namespace dysphonia
