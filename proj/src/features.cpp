#include "dysphonia/features.hpp"

#include "dysphonia/errors.hpp"
#include "dysphonia/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dysphonia {
namespace {

constexpr std::array<std::string_view, kNumFeatures> kNames = {
    "maximum",  "mean_frequency",   "minimum", "shimmer_db", "log_entropy",
    "power_bandwidth_hz", "jitter_pct", "mean_energy", "rms", "std_dev",
    "variance", "amplitude_mean",   "median",  "skewness",   "kurtosis",
    "shannon_entropy", "zcr",       "sure_entropy", "iqr",
};

void require_cycles(const PitchTrack& track, const char* feature) {
  if (track.size() < 2) {
    throw UndefinedFeature(feature, "needs at least 2 glottal cycles, found " +
                                        std::to_string(track.size()));
  }
}

void require_power(const PowerSpectrum& spectrum, const char* feature) {
  if (!(spectrum.total_power() > 0.0)) throw UndefinedFeature(feature, "zero spectral power");
}

}  // namespace

const std::array<std::string_view, kNumFeatures>& feature_names() { return kNames; }

std::string_view feature_name(Feature f) { return kNames[static_cast<std::size_t>(f)]; }

std::optional<std::size_t> feature_index(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return i;
  }
  return std::nullopt;
}

JitterValue jitter(const PitchTrack& track) {
  require_cycles(track, "jitter");
  const auto& p = track.cycle_periods;
  double diff = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) diff += std::fabs(p[i] - p[i + 1]);
  const double mean_abs_diff = diff / static_cast<double>(p.size() - 1);
  const double mean_period = kernels::sum(p) / static_cast<double>(p.size());
  return {mean_abs_diff, 100.0 * mean_abs_diff / mean_period};
}

double jitter_pct(const PitchTrack& track) { return jitter(track).percent; }

double shimmer_db(const PitchTrack& track) {
  require_cycles(track, "shimmer");
  const auto& v = track.cycle_peaks;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (!(v[i] > 0.0) || !(v[i + 1] > 0.0)) {
      throw UndefinedFeature("shimmer", "cycle peak amplitude is zero");
    }
    acc += std::fabs(20.0 * std::log10(v[i + 1] / v[i]));
  }
  return acc / static_cast<double>(v.size() - 1);
}

double rms(std::span<const double> x) {
  if (x.empty()) throw InvalidArgument("rms: empty signal");
  return std::sqrt(kernels::sum_squares(x) / static_cast<double>(x.size()));
}

double zcr(std::span<const double> x) {
  if (x.size() < 2) throw InvalidArgument("zcr: need at least 2 samples");
  return static_cast<double>(kernels::sign_changes(x)) / static_cast<double>(x.size() - 1);
}

double mean_energy(std::span<const double> x, std::uint32_t sample_rate, double frame_ms, double hop_ms) {
  if (x.empty()) throw InvalidArgument("mean_energy: empty signal");
  const auto frames = frame_signal(x.size(), sample_rate, frame_ms, hop_ms);
  if (frames.empty()) return kernels::sum_squares(x) / static_cast<double>(x.size());
  double acc = 0.0;
  for (const Frame& f : frames) {
    acc += kernels::sum_squares(frame_view(x, f)) / static_cast<double>(f.length);
  }
  return acc / static_cast<double>(frames.size());
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw InvalidArgument("quantile: empty input");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

DescriptiveStats descriptive_stats(std::span<const double> x) {
  if (x.size() < 2) throw InvalidArgument("descriptive_stats: need at least 2 samples");
  const double n = static_cast<double>(x.size());
  DescriptiveStats s;
  const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
  s.minimum = *mn;
  s.maximum = *mx;
  s.mean = kernels::sum(x) / n;

  const kernels::CentralMoments cm = kernels::central_moments(x, s.mean);
  s.variance = cm.m2 / (n - 1.0);
  s.std_dev = std::sqrt(s.variance);
  const double m2 = cm.m2 / n;
  if (!(m2 > 0.0)) throw UndefinedFeature("skewness", "zero variance");
  s.skewness = (cm.m3 / n) / std::pow(m2, 1.5);
  s.kurtosis = (cm.m4 / n) / (m2 * m2);

  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  s.median = quantile_sorted(sorted, 0.5);
  s.iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  return s;
}

double log_entropy(std::span<const double> x, double epsilon) {
  double acc = 0.0;
  for (double v : x) acc += std::log(v * v + epsilon);
  return acc;
}

double sure_entropy(std::span<const double> x, double threshold) {
  if (!(threshold > 0.0)) throw InvalidArgument("sure_entropy: threshold must be positive");
  const kernels::SureTerms t = kernels::sure_terms(x, threshold);
  return static_cast<double>(x.size() - t.at_or_below) + t.clipped_energy;
}

double mean_frequency(const PowerSpectrum& spectrum) {
  require_power(spectrum, "mean_frequency");
  const double weighted = kernels::dot(spectrum.freqs_hz, spectrum.psd);
  return weighted / kernels::sum(spectrum.psd);
}

double normalized_entropy(std::span<const double> power) {
  if (power.size() < 2) return 0.0;
  const double total = kernels::sum(power);
  if (!(total > 0.0)) throw UndefinedFeature("shannon_entropy", "zero spectral power");
  double h = 0.0;
  for (double p : power) {
    if (p <= 0.0) continue;
    const double q = p / total;
    h -= q * std::log2(q);
  }
  return h / std::log2(static_cast<double>(power.size()));
}

double shannon_entropy(const PowerSpectrum& spectrum) {
  require_power(spectrum, "shannon_entropy");
  return normalized_entropy(spectrum.psd);
}

double power_bandwidth(const PowerSpectrum& spectrum) {
  require_power(spectrum, "power_bandwidth");
  const auto& p = spectrum.psd;
  const auto& f = spectrum.freqs_hz;
  const std::size_t peak = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
  const double half = 0.5 * p[peak];

  auto crossing = [&](std::size_t inside, std::size_t outside) {
    const double frac = (half - p[outside]) / (p[inside] - p[outside]);
    return f[outside] + frac * (f[inside] - f[outside]);
  };

  std::size_t lo = peak;
  while (lo > 0 && p[lo - 1] >= half) --lo;
  const double left = lo == 0 ? f.front() : crossing(lo, lo - 1);

  std::size_t hi = peak;
  while (hi + 1 < p.size() && p[hi + 1] >= half) ++hi;
  const double right = hi + 1 == p.size() ? f.back() : crossing(hi, hi + 1);
  return right - left;
}

FeatureVector extract_all(const AudioSignal& signal, const PitchTrack& track, const FeatureConfig& config) {
  const std::string& source = signal.source_path().empty() ? std::string("<memory>") : signal.source_path();
  try {
    require_cycles(track, "jitter");
    const std::span<const double> x = signal.samples();
    const PowerSpectrum spectrum = welch_psd(x, signal.sample_rate(), config.welch);
    require_power(spectrum, "mean_frequency");
    const DescriptiveStats stats = descriptive_stats(x);

    FeatureVector v;
    v[Feature::kMaximum] = stats.maximum;
    v[Feature::kMeanFrequency] = mean_frequency(spectrum);
    v[Feature::kMinimum] = stats.minimum;
    v[Feature::kShimmerDb] = shimmer_db(track);
    v[Feature::kLogEntropy] = log_entropy(x, config.log_epsilon);
    v[Feature::kPowerBandwidthHz] = power_bandwidth(spectrum);
    v[Feature::kJitterPct] = jitter_pct(track);
    v[Feature::kMeanEnergy] = mean_energy(x, signal.sample_rate(), config.energy_frame_ms, config.energy_hop_ms);
    v[Feature::kRms] = rms(x);
    v[Feature::kStdDev] = stats.std_dev;
    v[Feature::kVariance] = stats.variance;
    v[Feature::kAmplitudeMean] = stats.mean;
    v[Feature::kMedian] = stats.median;
    v[Feature::kSkewness] = stats.skewness;
    v[Feature::kKurtosis] = stats.kurtosis;
    v[Feature::kShannonEntropy] = shannon_entropy(spectrum);
    v[Feature::kZcr] = zcr(x);
    v[Feature::kSureEntropy] = sure_entropy(x, config.sure_threshold);
    v[Feature::kIqr] = stats.iqr;
    for (std::size_t i = 0; i < kNumFeatures; ++i) {
      if (!std::isfinite(v.values[i])) {
        throw UndefinedFeature(std::string(kNames[i]), "non-finite value");
      }
    }
    return v;
  } catch (const UndefinedFeature& e) {
    throw UndefinedFeature(e.feature(), e.detail() + " [" + source + "]");
  }
}

ExtractionDetail extract_detailed(const AudioSignal& signal, const FeatureConfig& config) {
  ExtractionDetail d;
  d.track = analyze_pitch(signal, config.pitch);
  d.features = extract_all(signal, d.track, config);
  d.jitter_abs_s = jitter(d.track).absolute_s;
  return d;
}

}  // namespace dysphonia
