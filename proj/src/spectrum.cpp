#include "dysphonia/spectrum.hpp"

#include "dysphonia/errors.hpp"
#include "dysphonia/kernels.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

namespace dysphonia {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

class RealFft {
 public:
  explicit RealFft(std::size_t n)
      : n_(n),
        in_(static_cast<double*>(fftw_malloc(sizeof(double) * n))),
        out_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)))) {
    if (!in_ || !out_) throw Error("fftw allocation failed");
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_.get(), out_.get(), FFTW_ESTIMATE);
    if (!plan_) throw Error("fftw planning failed");
  }
  ~RealFft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  double* input() noexcept { return in_.get(); }
  const fftw_complex* output() const noexcept { return out_.get(); }
  void execute() { fftw_execute(plan_); }
  std::size_t size() const noexcept { return n_; }

 private:
  std::size_t n_;
  std::unique_ptr<double, FftwFree> in_;
  std::unique_ptr<fftw_complex, FftwFree> out_;
  fftw_plan plan_ = nullptr;
};

}  // namespace

double PowerSpectrum::total_power() const {
  double s = 0.0;
  for (double p : psd) s += p;
  return s;
}

std::vector<double> make_window(Window window, std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (window == Window::kHann) {
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
    }
  }
  return w;
}

PowerSpectrum welch_psd(std::span<const double> x, std::uint32_t sample_rate, const WelchConfig& config) {
  if (x.size() < 2) throw InvalidArgument("welch_psd: need at least 2 samples");
  if (sample_rate == 0) throw InvalidArgument("welch_psd: sample rate must be positive");
  if (config.segment_length < 2) throw InvalidArgument("welch_psd: segment length must be >= 2");
  if (!(config.overlap >= 0.0 && config.overlap < 1.0)) {
    throw InvalidArgument("welch_psd: overlap must be in [0, 1)");
  }

  const std::size_t nseg = std::min(config.segment_length, x.size());
  const auto noverlap = static_cast<std::size_t>(std::floor(static_cast<double>(nseg) * config.overlap));
  const std::size_t hop = std::max<std::size_t>(1, nseg - noverlap);
  const std::size_t nbins = nseg / 2 + 1;
  const double fs = static_cast<double>(sample_rate);

  const std::vector<double> window = make_window(config.window, nseg);
  const double window_energy = kernels::sum_squares(window);
  const double scale = 1.0 / (fs * window_energy);

  RealFft fft(nseg);
  PowerSpectrum out;
  out.psd.assign(nbins, 0.0);
  const auto& k = kernels::active();
  for (std::size_t start = 0; start + nseg <= x.size(); start += hop) {
    k.multiply(x.data() + start, window.data(), fft.input(), nseg);
    fft.execute();
    const fftw_complex* spec = fft.output();
    for (std::size_t b = 0; b < nbins; ++b) {
      double p = (spec[b][0] * spec[b][0] + spec[b][1] * spec[b][1]) * scale;
      const bool unpaired = b == 0 || (nseg % 2 == 0 && b == nseg / 2);
      if (!unpaired) p *= 2.0;
      out.psd[b] += p;
    }
    ++out.segments;
  }
  for (double& p : out.psd) p /= static_cast<double>(out.segments);

  out.bin_width_hz = fs / static_cast<double>(nseg);
  out.freqs_hz.resize(nbins);
  for (std::size_t b = 0; b < nbins; ++b) out.freqs_hz[b] = static_cast<double>(b) * out.bin_width_hz;
  return out;
}

}  // namespace dysphonia
