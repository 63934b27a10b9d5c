#include "dysphonia/synth.hpp"

#include "dysphonia/errors.hpp"
#include "dysphonia/features.hpp"
#include "dysphonia/manifest.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>

namespace dysphonia {

std::string_view to_string(SynthKind kind) {
  switch (kind) {
    case SynthKind::kPulseTrain: return "pulse_train";
    case SynthKind::kSine: return "sine";
    case SynthKind::kWhiteNoise: return "white_noise";
    case SynthKind::kSilence: return "silence";
  }
  return "?";
}

std::optional<SynthKind> parse_synth_kind(std::string_view name) {
  if (name == "pulse_train" || name == "pulse") return SynthKind::kPulseTrain;
  if (name == "sine") return SynthKind::kSine;
  if (name == "white_noise" || name == "noise") return SynthKind::kWhiteNoise;
  if (name == "silence") return SynthKind::kSilence;
  return std::nullopt;
}

void SynthSpec::validate() const {
  auto fail = [](const std::string& what) { throw InvalidArgument("synth: " + what); };
  if (sample_rate == 0) fail("sample_rate must be positive");
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) fail("duration_s must be positive");
  if (std::llround(duration_s * sample_rate) < 1) fail("duration_s shorter than one sample");
  if (kind == SynthKind::kPulseTrain || kind == SynthKind::kSine) {
    const double nyquist = 0.5 * static_cast<double>(sample_rate);
    if (!(f0 > 0.0) || !(f0 < nyquist)) {
      fail("f0 must lie in (0, " + format_double(nyquist) + ") Hz for sample_rate " + std::to_string(sample_rate));
    }
  }
  if (!(jitter_pct >= 0.0) || jitter_pct > 30.0) fail("jitter_pct must lie in [0, 30]");
  if (!(shimmer_db >= 0.0) || !std::isfinite(shimmer_db)) fail("shimmer_db must be >= 0");
  if (!(amplitude > 0.0) || amplitude > 1.0) fail("amplitude must lie in (0, 1]");
  if (!(noise_level >= 0.0) || amplitude + noise_level > 1.0) fail("noise_level must be >= 0 with amplitude + noise_level <= 1");
  if (!std::isfinite(phase)) fail("phase must be finite");
  if (kind == SynthKind::kPulseTrain && static_cast<double>(sample_rate) / f0 < 4.0) {
    fail("pulse train period must be at least 4 samples");
  }
}

namespace {

double jitter_of(std::span<const std::size_t> periods) {
  if (periods.size() < 2) return 0.0;
  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < periods.size(); ++i) {
    sum += static_cast<double>(periods[i]);
    if (i + 1 < periods.size()) {
      diff += std::fabs(static_cast<double>(periods[i + 1]) - static_cast<double>(periods[i]));
    }
  }
  return 100.0 * (diff / static_cast<double>(periods.size() - 1)) / (sum / static_cast<double>(periods.size()));
}

// Integer cycle lengths that fit completely in `total` samples.
std::vector<std::size_t> complete_periods(std::span<const double> deltas, double t0, double scale,
                                          std::size_t total) {
  std::vector<std::size_t> periods;
  std::size_t onset = 0;
  for (double d : deltas) {
    const auto p = static_cast<std::size_t>(std::max<long long>(2, std::llround(t0 * (1.0 + scale * d))));
    if (onset + p > total) break;
    periods.push_back(p);
    onset += p;
  }
  return periods;
}

void pulse_train(const SynthSpec& spec, std::vector<double>& x, SynthTruth& truth, std::mt19937_64& rng) {
  const std::size_t total = x.size();
  const double t0 = static_cast<double>(spec.sample_rate) / spec.f0;

  std::vector<std::size_t> periods;
  if (spec.jitter_pct > 0.0) {
    const std::size_t count = static_cast<std::size_t>(std::ceil(static_cast<double>(total) / t0)) + 8;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> deltas(count);
    for (double& d : deltas) d = u(rng);
    double mean = 0.0;
    for (double d : deltas) mean += d;
    mean /= static_cast<double>(count);
    for (double& d : deltas) d -= mean;
    double mad = 0.0;
    for (std::size_t i = 0; i + 1 < count; ++i) mad += std::fabs(deltas[i + 1] - deltas[i]);
    mad /= static_cast<double>(count - 1);

    // Rounding to whole samples perturbs the realized jitter; refine the
    // scale a few times and keep the closest integer realization.
    double scale = mad > 0.0 ? spec.jitter_pct / 100.0 / mad : 0.0;
    double best_err = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 12 && scale > 0.0; ++iter) {
      auto candidate = complete_periods(deltas, t0, scale, total);
      const double realized = jitter_of(candidate);
      const double err = std::fabs(realized - spec.jitter_pct);
      if (err < best_err) {
        best_err = err;
        periods = std::move(candidate);
      }
      if (realized <= 0.0 || err < 1e-6) break;
      scale *= spec.jitter_pct / realized;
    }
  } else {
    periods = complete_periods(std::vector<double>(static_cast<std::size_t>(static_cast<double>(total) / t0) + 2, 0.0),
                               t0, 0.0, total);
  }

  const double low = spec.amplitude * std::pow(10.0, -spec.shimmer_db / 20.0);
  std::size_t onset = 0;
  for (std::size_t i = 0; i < periods.size(); ++i) {
    const std::size_t p = periods[i];
    const double a = i % 2 == 0 ? spec.amplitude : low;
    const double tau = static_cast<double>(p) / 4.0;
    // Each cycle is made zero-mean so that amplitude alternation does not
    // leave a varying DC offset; its peak (at the onset) is a * (1 - mean).
    double mean = 0.0;
    for (std::size_t k = 0; k < p; ++k) mean += std::exp(-static_cast<double>(k) / tau);
    mean /= static_cast<double>(p);
    const double gain = a / (1.0 - mean);
    for (std::size_t k = 0; k < p; ++k) x[onset + k] = gain * (std::exp(-static_cast<double>(k) / tau) - mean);
    truth.onsets.push_back(onset);
    truth.periods.push_back(p);
    truth.periods_s.push_back(static_cast<double>(p) / static_cast<double>(spec.sample_rate));
    truth.peaks.push_back(a);
    onset += p;
  }
  truth.realized_jitter_pct = jitter_of(truth.periods);
  if (truth.peaks.size() >= 2) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < truth.peaks.size(); ++i) {
      s += std::fabs(20.0 * std::log10(truth.peaks[i + 1] / truth.peaks[i]));
    }
    truth.realized_shimmer_db = s / static_cast<double>(truth.peaks.size() - 1);
  }

  if (spec.noise_level > 0.0) {
    std::uniform_real_distribution<double> n(-spec.noise_level, spec.noise_level);
    for (double& v : x) v += n(rng);
  }
}

}  // namespace

SynthResult gen_signal(const SynthSpec& spec) {
  spec.validate();
  const auto total = static_cast<std::size_t>(std::llround(spec.duration_s * spec.sample_rate));
  const double fs = static_cast<double>(spec.sample_rate);
  std::vector<double> x(total, 0.0);
  SynthTruth truth;
  truth.spec = spec;
  std::mt19937_64 rng(spec.seed);

  switch (spec.kind) {
    case SynthKind::kPulseTrain:
      pulse_train(spec, x, truth, rng);
      break;
    case SynthKind::kSine:
      for (std::size_t n = 0; n < total; ++n) {
        x[n] = spec.amplitude * std::sin(2.0 * std::numbers::pi * spec.f0 * static_cast<double>(n) / fs + spec.phase);
      }
      break;
    case SynthKind::kWhiteNoise: {
      std::uniform_real_distribution<double> u(-spec.amplitude, spec.amplitude);
      for (double& v : x) v = u(rng);
      break;
    }
    case SynthKind::kSilence:
      break;
  }
  return SynthResult{AudioSignal(std::move(x), spec.sample_rate, "synth:" + std::string(to_string(spec.kind))),
                     std::move(truth)};
}

LabeledDataset gen_blobs(const std::array<std::size_t, 3>& n_per_class, std::size_t dims, double separation,
                         double sigma, std::uint64_t seed) {
  if (dims < 2) throw InvalidArgument("blobs: dims must be >= 2");
  if (!(separation > 0.0) || !(sigma > 0.0)) throw InvalidArgument("blobs: separation and sigma must be positive");
  for (std::size_t n : n_per_class) {
    if (n < 1) throw InvalidArgument("blobs: every class needs at least one sample");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  // Orthonormal basis (u, v) of a random plane by Gram-Schmidt.
  std::vector<double> u(dims);
  std::vector<double> v(dims);
  auto norm = [](const std::vector<double>& a) {
    double s = 0.0;
    for (double e : a) s += e * e;
    return std::sqrt(s);
  };
  for (double& e : u) e = normal(rng);
  for (double& e : v) e = normal(rng);
  const double nu = norm(u);
  for (double& e : u) e /= nu;
  double proj = 0.0;
  for (std::size_t j = 0; j < dims; ++j) proj += u[j] * v[j];
  for (std::size_t j = 0; j < dims; ++j) v[j] -= proj * u[j];
  const double nv = norm(v);
  for (double& e : v) e /= nv;

  const double radius = separation / std::sqrt(3.0);
  LabeledDataset data;
  if (dims == kNumFeatures) {
    for (auto name : feature_names()) data.feature_names.emplace_back(name);
  } else {
    for (std::size_t j = 0; j < dims; ++j) data.feature_names.push_back("f" + std::to_string(j));
  }
  for (int c = 0; c < 3; ++c) {
    const double theta = 2.0 * std::numbers::pi * c / 3.0;
    std::vector<double> centre(dims);
    for (std::size_t j = 0; j < dims; ++j) centre[j] = radius * (std::cos(theta) * u[j] + std::sin(theta) * v[j]);
    for (std::size_t i = 0; i < n_per_class[static_cast<std::size_t>(c)]; ++i) {
      std::vector<double> row(dims);
      for (std::size_t j = 0; j < dims; ++j) row[j] = centre[j] + sigma * normal(rng);
      data.add(std::move(row), c);
    }
  }
  return data;
}

std::string truth_json(const SynthTruth& truth) {
  const SynthSpec& s = truth.spec;
  nlohmann::ordered_json doc = {{"kind", std::string(to_string(s.kind))},
                                {"f0", s.f0},
                                {"duration_s", s.duration_s},
                                {"sample_rate", s.sample_rate},
                                {"jitter_pct", s.jitter_pct},
                                {"shimmer_db", s.shimmer_db},
                                {"amplitude", s.amplitude},
                                {"noise_level", s.noise_level},
                                {"phase", s.phase},
                                {"seed", s.seed}};
  if (s.kind == SynthKind::kPulseTrain) {
    doc["realized_jitter_pct"] = truth.realized_jitter_pct;
    doc["realized_shimmer_db"] = truth.realized_shimmer_db;
    doc["onsets"] = truth.onsets;
    doc["periods_samples"] = truth.periods;
    doc["periods_s"] = truth.periods_s;
    doc["peaks"] = truth.peaks;
  }
  return doc.dump(2) + "\n";
}

void write_synth(const SynthResult& result, const std::filesystem::path& out_dir, const std::string& stem) {
  std::filesystem::create_directories(out_dir);
  write_wav(out_dir / (stem + ".wav"), result.signal.samples(), result.signal.sample_rate(), 16);
  std::ofstream js(out_dir / (stem + ".json"), std::ios::binary);
  if (!js) throw Error("cannot write " + (out_dir / (stem + ".json")).string());
  js << truth_json(result.truth);
}

std::filesystem::path write_corpus(const CorpusSpec& spec, const std::filesystem::path& out_dir) {
  if (!(spec.spread >= 0.0 && spec.spread < 1.0)) throw InvalidArgument("corpus: spread must lie in [0, 1)");
  std::filesystem::create_directories(out_dir);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto manifest_path = out_dir / "manifest.csv";
  std::ofstream manifest(manifest_path, std::ios::binary);
  if (!manifest) throw Error("cannot write " + manifest_path.string());
  manifest << "path,label\n";
  for (int c = 0; c < 3; ++c) {
    const CorpusClass& cls = spec.classes[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < spec.n_per_class[static_cast<std::size_t>(c)]; ++i) {
      auto vary = [&](double v) { return v * (1.0 + spec.spread * u(rng)); };
      SynthSpec s;
      s.kind = SynthKind::kPulseTrain;
      s.duration_s = spec.duration_s;
      s.sample_rate = spec.sample_rate;
      s.f0 = vary(cls.f0);
      s.jitter_pct = vary(cls.jitter_pct);
      s.shimmer_db = vary(cls.shimmer_db);
      s.noise_level = vary(cls.noise_level);
      s.amplitude = std::min(0.9, 1.0 - s.noise_level);
      s.seed = rng();
      char stem[32];
      std::snprintf(stem, sizeof stem, "class%d_%03zu", c, i);
      const auto result = gen_signal(s);
      write_wav(out_dir / (std::string(stem) + ".wav"), result.signal.samples(), result.signal.sample_rate(), 16);
      manifest << stem << ".wav," << c << '\n';
    }
  }
  return manifest_path;
}

}  // namespace dysphonia
