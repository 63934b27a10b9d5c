#include "dysphonia/pitch.hpp"

#include "dysphonia/errors.hpp"
#include "dysphonia/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dysphonia {
namespace {

struct LagRange {
  std::size_t min = 0;
  std::size_t max = 0;
};

LagRange lag_range(std::uint32_t sample_rate, double f0_min, double f0_max) {
  if (!(f0_min > 0.0) || !(f0_min < f0_max)) {
    throw InvalidArgument("pitch: require 0 < f0_min < f0_max");
  }
  const double fs = static_cast<double>(sample_rate);
  LagRange r;
  r.min = static_cast<std::size_t>(std::ceil(fs / f0_max));
  r.max = static_cast<std::size_t>(std::floor(fs / f0_min));
  r.min = std::max<std::size_t>(r.min, 1);
  if (r.max < r.min) throw InvalidArgument("pitch: f0 range maps to an empty lag range");
  return r;
}

struct VoicedRun {
  std::size_t first_estimate = 0;  // index into estimates
  std::size_t last_estimate = 0;   // inclusive
  std::size_t begin = 0;           // sample range [begin, end)
  std::size_t end = 0;
};

}  // namespace

PitchEstimate estimate_pitch(std::span<const double> frame, std::uint32_t sample_rate,
                             double f0_min, double f0_max, double voicing_threshold,
                             std::size_t frame_index, double subharmonic_ratio) {
  const LagRange lags = lag_range(sample_rate, f0_min, f0_max);
  if (lags.max >= frame.size()) {
    throw InvalidArgument("pitch: lag range up to " + std::to_string(lags.max) +
                          " samples exceeds frame length " + std::to_string(frame.size()));
  }

  PitchEstimate est;
  est.frame_index = frame_index;

  std::vector<double> y(frame.begin(), frame.end());
  const double mean = kernels::sum(y) / static_cast<double>(y.size());
  for (double& v : y) v -= mean;
  const double energy = kernels::sum_squares(y);
  if (energy <= 0.0) return est;

  const std::span<const double> ys(y);
  const std::size_t n = ys.size();
  std::vector<double> r(lags.max + 2, -2.0);
  double best = -2.0;
  std::size_t best_lag = lags.min;
  for (std::size_t lag = lags.min; lag <= lags.max; ++lag) {
    r[lag] = kernels::dot(ys.first(n - lag), ys.subspan(lag)) / energy;
    if (r[lag] > best) {
      best = r[lag];
      best_lag = lag;
    }
  }

  // Prefer the shortest sub-multiple of the best lag that is itself a local
  // peak of comparable height: a train with alternating cycle amplitudes is
  // strictly periodic at twice its glottal period.
  std::size_t period_lag = best_lag;
  if (best > 0.0 && subharmonic_ratio < 1.0) {
    for (std::size_t m = best_lag / lags.min; m >= 2; --m) {
      const double centre = static_cast<double>(best_lag) / static_cast<double>(m);
      const auto slack = static_cast<std::size_t>(std::max(2.0, std::ceil(0.03 * centre)));
      const auto c = static_cast<std::size_t>(std::llround(centre));
      const std::size_t lo = std::max(lags.min, c > slack ? c - slack : 0);
      const std::size_t hi = std::min(lags.max, c + slack);
      std::size_t cand = lo;
      for (std::size_t lag = lo + 1; lag <= hi; ++lag) {
        if (r[lag] > r[cand]) cand = lag;
      }
      const bool local_peak =
          cand > lags.min && cand < lags.max && r[cand] > r[cand - 1] && r[cand] >= r[cand + 1];
      if (local_peak && r[cand] >= subharmonic_ratio * best) {
        period_lag = cand;
        break;
      }
    }
  }

  est.voicing_score = std::clamp(best, 0.0, 1.0);
  if (est.voicing_score >= voicing_threshold && est.voicing_score > 0.0) {
    est.period_s = static_cast<double>(period_lag) / static_cast<double>(sample_rate);
  }
  return est;
}

std::vector<PitchEstimate> estimate_frames(const AudioSignal& signal, std::span<const Frame> frames,
                                           const PitchConfig& config) {
  std::vector<PitchEstimate> out;
  out.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    out.push_back(estimate_pitch(frame_view(signal.samples(), frames[i]), signal.sample_rate(),
                                 config.f0_min, config.f0_max, config.voicing_threshold, i,
                                 config.subharmonic_ratio));
  }
  return out;
}

void median_smooth(std::span<PitchEstimate> estimates) {
  std::vector<std::optional<double>> original;
  original.reserve(estimates.size());
  for (const auto& e : estimates) original.push_back(e.period_s);
  for (std::size_t i = 1; i + 1 < estimates.size(); ++i) {
    if (!original[i] || !original[i - 1] || !original[i + 1]) continue;
    double w[3] = {*original[i - 1], *original[i], *original[i + 1]};
    std::sort(w, w + 3);
    estimates[i].period_s = w[1];
  }
}

PitchTrack segment_cycles(const AudioSignal& signal, std::span<const Frame> frames,
                          std::span<const PitchEstimate> estimates, double f0_min, double f0_max) {
  const LagRange lags = lag_range(signal.sample_rate(), f0_min, f0_max);
  PitchTrack track;
  track.f0_min = f0_min;
  track.f0_max = f0_max;

  const std::span<const double> x = signal.samples();
  const double fs = static_cast<double>(signal.sample_rate());

  std::vector<VoicedRun> runs;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    if (!estimates[i].voiced()) continue;
    const Frame& f = frames[estimates[i].frame_index];
    const bool extends = !runs.empty() &&
                         estimates[runs.back().last_estimate].frame_index + 1 == estimates[i].frame_index &&
                         f.start_index <= runs.back().end;
    if (extends) {
      runs.back().last_estimate = i;
      runs.back().end = std::max(runs.back().end, f.start_index + f.length);
    } else {
      runs.push_back(VoicedRun{i, i, f.start_index, f.start_index + f.length});
    }
  }

  for (const VoicedRun& run : runs) {
    // Period (samples) of the voiced frame whose centre is nearest to pos.
    auto local_period = [&](std::size_t pos) {
      double best_dist = 0.0;
      double period = 0.0;
      for (std::size_t i = run.first_estimate; i <= run.last_estimate; ++i) {
        if (!estimates[i].voiced()) continue;
        const Frame& f = frames[estimates[i].frame_index];
        const double centre = static_cast<double>(f.start_index) + 0.5 * static_cast<double>(f.length);
        const double dist = std::fabs(centre - static_cast<double>(pos));
        if (period == 0.0 || dist < best_dist) {
          best_dist = dist;
          period = *estimates[i].period_s * fs;
        }
      }
      return period;
    };
    auto argmax = [&](std::size_t lo, std::size_t hi_exclusive) {
      std::size_t best = lo;
      for (std::size_t i = lo + 1; i < hi_exclusive; ++i) {
        if (x[i] > x[best]) best = i;
      }
      return best;
    };

    const double first_period = local_period(run.begin);
    const std::size_t first_span =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(first_period)));
    std::size_t anchor = argmax(run.begin, std::min(run.begin + first_span, run.end));

    for (;;) {
      const double period = local_period(anchor);
      const std::size_t lo_off =
          std::max(lags.min, static_cast<std::size_t>(std::ceil(0.75 * period)));
      const std::size_t hi_off =
          std::min(lags.max, static_cast<std::size_t>(std::floor(1.25 * period)));
      if (hi_off < lo_off || anchor + hi_off >= run.end) break;
      const std::size_t next = argmax(anchor + lo_off, anchor + hi_off + 1);
      const std::span<const double> cycle = x.subspan(anchor, next - anchor);
      const double peak = kernels::max_abs(cycle);
      if (peak > 0.0) {
        track.cycle_periods.push_back(static_cast<double>(next - anchor) / fs);
        track.cycle_peaks.push_back(peak);
        track.cycle_starts.push_back(anchor);
      }
      anchor = next;
    }
  }
  return track;
}

PitchTrack analyze_pitch(const AudioSignal& signal, const PitchConfig& config) {
  const auto frames = frame_signal(signal, config.frame_ms, config.hop_ms);
  auto estimates = estimate_frames(signal, frames, config);
  if (config.median_filter) median_smooth(estimates);
  return segment_cycles(signal, frames, estimates, config.f0_min, config.f0_max);
}

}  // namespace dysphonia
