#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dysphonia {

enum class Window { kHann, kRectangular };

struct WelchConfig {
  std::size_t segment_length = 1024;  // clamped to the signal length
  double overlap = 0.5;               // fraction in [0, 1)
  Window window = Window::kHann;      // periodic Hann
};

/// One-sided power spectral density in units^2 / Hz.
struct PowerSpectrum {
  std::vector<double> freqs_hz;
  std::vector<double> psd;
  double bin_width_hz = 0.0;
  std::size_t segments = 0;

  double total_power() const;
};

std::vector<double> make_window(Window window, std::size_t n);

/// Welch periodogram without detrending: segments are windowed, transformed,
/// scaled by 1 / (fs * sum w^2), averaged, and folded to one side (all bins
/// except DC and, for even lengths, Nyquist are doubled).
PowerSpectrum welch_psd(std::span<const double> x, std::uint32_t sample_rate,
                        const WelchConfig& config = {});

}  // namespace dysphonia
