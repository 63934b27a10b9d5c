#include "dysphonia/errors.hpp"
#include "dysphonia/kernels.hpp"

#include <atomic>
#include <string>

namespace dysphonia::kernels {
namespace {

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{&table(detect_best())};
  return slot;
}

}  // namespace

std::string_view to_string(Backend backend) noexcept {
  switch (backend) {
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
    case Backend::kNeon: return "neon";
  }
  return "unknown";
}

bool is_supported(Backend backend) noexcept {
  switch (backend) {
    case Backend::kScalar: return true;
    case Backend::kAvx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::kNeon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend detect_best() noexcept {
  if (is_supported(Backend::kAvx2)) return Backend::kAvx2;
  if (is_supported(Backend::kNeon)) return Backend::kNeon;
  return Backend::kScalar;
}

const KernelTable& table(Backend backend) {
  if (!is_supported(backend)) {
    throw InvalidArgument("kernel backend not supported on this CPU: " +
                          std::string(to_string(backend)));
  }
  switch (backend) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::kAvx2: return avx2::kTable;
#endif
#if defined(__aarch64__)
    case Backend::kNeon: return neon::kTable;
#endif
    default: return scalar::kTable;
  }
}

const KernelTable& active() { return *active_slot().load(std::memory_order_acquire); }

ScopedBackend::ScopedBackend(Backend backend) : previous_(&active()) {
  active_slot().store(&table(backend), std::memory_order_release);
}

ScopedBackend::~ScopedBackend() { active_slot().store(previous_, std::memory_order_release); }

double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

double sum_squares(std::span<const double> x) { return active().sum_squares(x.data(), x.size()); }

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("dot: length mismatch");
  return active().dot(a.data(), b.data(), a.size());
}

double max_abs(std::span<const double> x) { return active().max_abs(x.data(), x.size()); }

CentralMoments central_moments(std::span<const double> x, double mean) {
  return active().central_moments(x.data(), x.size(), mean);
}

std::size_t sign_changes(std::span<const double> x) {
  return active().sign_changes(x.data(), x.size());
}

SureTerms sure_terms(std::span<const double> x, double threshold) {
  return active().sure_terms(x.data(), x.size(), threshold);
}

}  // namespace dysphonia::kernels
