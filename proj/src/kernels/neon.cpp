#include "dysphonia/kernels.hpp"

#include <arm_neon.h>

#include <cmath>

namespace dysphonia::kernels::neon {
namespace {

double sum(const double* x, std::size_t n) {
  float64x2_t a0 = vdupq_n_f64(0.0);
  float64x2_t a1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 = vaddq_f64(a0, vld1q_f64(x + i));
    a1 = vaddq_f64(a1, vld1q_f64(x + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(a0, a1));
  for (; i < n; ++i) s += x[i];
  return s;
}

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t a0 = vdupq_n_f64(0.0);
  float64x2_t a1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 = vfmaq_f64(a0, vld1q_f64(a + i), vld1q_f64(b + i));
    a1 = vfmaq_f64(a1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(a0, a1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_squares(const double* x, std::size_t n) { return dot(x, x, n); }

double max_abs(const double* x, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(x + i)));
  double r = vmaxvq_f64(m);
  for (; i < n; ++i) {
    const double v = std::fabs(x[i]);
    r = v > r ? v : r;
  }
  return r;
}

CentralMoments central_moments(const double* x, std::size_t n, double mean) {
  const float64x2_t mu = vdupq_n_f64(mean);
  float64x2_t s2 = vdupq_n_f64(0.0);
  float64x2_t s3 = vdupq_n_f64(0.0);
  float64x2_t s4 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(x + i), mu);
    const float64x2_t d2 = vmulq_f64(d, d);
    s2 = vaddq_f64(s2, d2);
    s3 = vfmaq_f64(s3, d2, d);
    s4 = vfmaq_f64(s4, d2, d2);
  }
  CentralMoments out{vaddvq_f64(s2), vaddvq_f64(s3), vaddvq_f64(s4)};
  for (; i < n; ++i) {
    const double d = x[i] - mean;
    const double d2 = d * d;
    out.m2 += d2;
    out.m3 += d2 * d;
    out.m4 += d2 * d2;
  }
  return out;
}

std::size_t sign_changes(const double* x, std::size_t n) {
  if (n < 2) return 0;
  const float64x2_t zero = vdupq_n_f64(0.0);
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 1;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t cur = vcltq_f64(vld1q_f64(x + i), zero);
    const uint64x2_t prev = vcltq_f64(vld1q_f64(x + i - 1), zero);
    acc = vaddq_u64(acc, vshrq_n_u64(veorq_u64(cur, prev), 63));
  }
  std::size_t count = static_cast<std::size_t>(vaddvq_u64(acc));
  for (; i < n; ++i) count += (x[i - 1] < 0.0) != (x[i] < 0.0) ? 1 : 0;
  return count;
}

SureTerms sure_terms(const double* x, std::size_t n, double threshold) {
  const float64x2_t t = vdupq_n_f64(threshold);
  const float64x2_t t2 = vdupq_n_f64(threshold * threshold);
  float64x2_t energy = vdupq_n_f64(0.0);
  uint64x2_t below = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v = vld1q_f64(x + i);
    below = vaddq_u64(below, vshrq_n_u64(vcleq_f64(vabsq_f64(v), t), 63));
    energy = vaddq_f64(energy, vminq_f64(vmulq_f64(v, v), t2));
  }
  SureTerms out{static_cast<std::size_t>(vaddvq_u64(below)), vaddvq_f64(energy)};
  const double tt = threshold * threshold;
  for (; i < n; ++i) {
    if (std::fabs(x[i]) <= threshold) ++out.at_or_below;
    const double x2 = x[i] * x[i];
    out.clipped_energy += x2 < tt ? x2 : tt;
  }
  return out;
}

void multiply(const double* x, const double* w, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmulq_f64(vld1q_f64(x + i), vld1q_f64(w + i)));
  for (; i < n; ++i) out[i] = x[i] * w[i];
}

}  // namespace

const KernelTable kTable{
    Backend::kNeon, sum,          sum_squares, dot, max_abs, central_moments,
    sign_changes,   sure_terms,   multiply,
};

}  // namespace dysphonia::kernels::neon
