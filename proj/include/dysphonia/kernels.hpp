#pragma once

// Data-parallel reductions used by the feature extractors and the pitch
// tracker. Every kernel has a scalar reference implementation; vector
// variants (AVX2+FMA on x86-64, NEON on AArch64) are selected at runtime
// and must agree with the scalar path to rounding.

#include <cstddef>
#include <span>
#include <string_view>

namespace dysphonia::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

std::string_view to_string(Backend backend) noexcept;

struct CentralMoments {
  double m2 = 0.0;  // sum (x - mean)^2
  double m3 = 0.0;  // sum (x - mean)^3
  double m4 = 0.0;  // sum (x - mean)^4
};

struct SureTerms {
  std::size_t at_or_below = 0;  // #{i : |x_i| <= t}
  double clipped_energy = 0.0;  // sum min(x_i^2, t^2)
};

struct KernelTable {
  Backend backend;
  double (*sum)(const double* x, std::size_t n);
  double (*sum_squares)(const double* x, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
  CentralMoments (*central_moments)(const double* x, std::size_t n, double mean);
  // Number of adjacent pairs whose signs differ, with sgn(0) = +1.
  std::size_t (*sign_changes)(const double* x, std::size_t n);
  SureTerms (*sure_terms)(const double* x, std::size_t n, double threshold);
  // out[i] = x[i] * w[i]
  void (*multiply)(const double* x, const double* w, double* out, std::size_t n);
};

/// Kernel table currently in use (best supported backend unless overridden).
const KernelTable& active();

/// Table for a specific backend; throws InvalidArgument if it is not
/// compiled in or not supported by this CPU.
const KernelTable& table(Backend backend);

bool is_supported(Backend backend) noexcept;

/// Best backend this CPU supports.
Backend detect_best() noexcept;

/// Pins the active backend for the lifetime of the object. Not thread-safe
/// against concurrent kernel calls; intended for tests and benchmarks.
class ScopedBackend {
 public:
  explicit ScopedBackend(Backend backend);
  ~ScopedBackend();
  ScopedBackend(const ScopedBackend&) = delete;
  ScopedBackend& operator=(const ScopedBackend&) = delete;

 private:
  const KernelTable* previous_;
};

// Span conveniences over the active table.
double sum(std::span<const double> x);
double sum_squares(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> x);
CentralMoments central_moments(std::span<const double> x, double mean);
std::size_t sign_changes(std::span<const double> x);
SureTerms sure_terms(std::span<const double> x, double threshold);

namespace scalar {
extern const KernelTable kTable;
}
#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
extern const KernelTable kTable;
}
#endif
#if defined(__aarch64__)
namespace neon {
extern const KernelTable kTable;
}
#endif

}  // namespace dysphonia::kernels
