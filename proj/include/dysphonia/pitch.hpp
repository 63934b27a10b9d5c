#pragma once

#include "dysphonia/audio_io.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace dysphonia {

struct PitchConfig {
  double frame_ms = 40.0;
  double hop_ms = 10.0;
  double f0_min = 60.0;   // Hz
  double f0_max = 500.0;  // Hz
  double voicing_threshold = 0.30;
  bool median_filter = true;  // width-3 median over the frame period track
  double subharmonic_ratio = 0.5;  // 1 disables the sub-multiple preference
};

struct PitchEstimate {
  std::size_t frame_index = 0;
  std::optional<double> period_s;  // absent when unvoiced
  double voicing_score = 0.0;      // peak normalized autocorrelation, clamped to [0, 1]

  bool voiced() const noexcept { return period_s.has_value(); }
};

/// Per-cycle periods and peak amplitudes of the voiced part of a signal.
struct PitchTrack {
  std::vector<double> cycle_periods;       // seconds
  std::vector<double> cycle_peaks;         // max |x| within each cycle
  std::vector<std::size_t> cycle_starts;   // sample index of each cycle's anchor
  double f0_min = 0.0;
  double f0_max = 0.0;

  std::size_t size() const noexcept { return cycle_periods.size(); }
};

/// Autocorrelation pitch estimate for one frame. The frame is mean-removed
/// and r(lag) = sum y[n] y[n+lag] / sum y[n]^2; the period is the lag in
/// [ceil(fs/f0_max), floor(fs/f0_min)] maximizing r (first maximum wins),
/// unless a local peak near lag/m (m >= 2) reaches subharmonic_ratio times the
/// maximum, in which case the shortest such lag is the period. The voicing
/// score is always the maximum. Throws InvalidArgument if f0_min >= f0_max or the lag range does not fit.
PitchEstimate estimate_pitch(std::span<const double> frame, std::uint32_t sample_rate,
                             double f0_min, double f0_max, double voicing_threshold,
                             std::size_t frame_index = 0, double subharmonic_ratio = 0.5);

/// Estimates every frame of the signal.
std::vector<PitchEstimate> estimate_frames(const AudioSignal& signal, std::span<const Frame> frames,
                                           const PitchConfig& config);

/// Width-3 median over voiced neighbours; frames with fewer than three
/// voiced values in the window keep their own period.
void median_smooth(std::span<PitchEstimate> estimates);

/// Places cycle anchors at successive waveform maxima inside voiced runs,
/// searching [0.75 T, 1.25 T] (clamped to the f0 range) past the previous
/// anchor, where T is the period of the nearest voiced frame.
PitchTrack segment_cycles(const AudioSignal& signal, std::span<const Frame> frames,
                          std::span<const PitchEstimate> estimates, double f0_min, double f0_max);

/// frame -> estimate -> (median) -> segment.
PitchTrack analyze_pitch(const AudioSignal& signal, const PitchConfig& config = {});

}  // namespace dysphonia
