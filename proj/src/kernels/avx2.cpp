#include "dysphonia/kernels.hpp"

#include <immintrin.h>

#include <bit>
#include <cmath>

namespace dysphonia::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

double sum(const double* x, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
    a1 = _mm256_add_pd(a1, _mm256_loadu_pd(x + i + 4));
  }
  for (; i + 4 <= n; i += 4) a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += x[i];
  return s;
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), a1);
  }
  for (; i + 4 <= n; i += 4) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), a0);
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_squares(const double* x, std::size_t n) { return dot(x, x, n); }

double max_abs(const double* x, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, abs_pd(_mm256_loadu_pd(x + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = lanes[0];
  for (int k = 1; k < 4; ++k) r = lanes[k] > r ? lanes[k] : r;
  for (; i < n; ++i) {
    const double v = std::fabs(x[i]);
    r = v > r ? v : r;
  }
  return r;
}

CentralMoments central_moments(const double* x, std::size_t n, double mean) {
  const __m256d mu = _mm256_set1_pd(mean);
  __m256d s2 = _mm256_setzero_pd();
  __m256d s3 = _mm256_setzero_pd();
  __m256d s4 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), mu);
    const __m256d d2 = _mm256_mul_pd(d, d);
    s2 = _mm256_add_pd(s2, d2);
    s3 = _mm256_fmadd_pd(d2, d, s3);
    s4 = _mm256_fmadd_pd(d2, d2, s4);
  }
  CentralMoments out{hsum(s2), hsum(s3), hsum(s4)};
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
  const __m256d zero = _mm256_setzero_pd();
  std::size_t count = 0;
  std::size_t i = 1;
  for (; i + 4 <= n; i += 4) {
    const __m256d cur = _mm256_cmp_pd(_mm256_loadu_pd(x + i), zero, _CMP_LT_OQ);
    const __m256d prev = _mm256_cmp_pd(_mm256_loadu_pd(x + i - 1), zero, _CMP_LT_OQ);
    const int mask = _mm256_movemask_pd(_mm256_xor_pd(cur, prev));
    count += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(mask)));
  }
  for (; i < n; ++i) count += (x[i - 1] < 0.0) != (x[i] < 0.0) ? 1 : 0;
  return count;
}

SureTerms sure_terms(const double* x, std::size_t n, double threshold) {
  const __m256d t = _mm256_set1_pd(threshold);
  const __m256d t2 = _mm256_set1_pd(threshold * threshold);
  __m256d energy = _mm256_setzero_pd();
  SureTerms out;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(abs_pd(v), t, _CMP_LE_OQ));
    out.at_or_below += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(mask)));
    energy = _mm256_add_pd(energy, _mm256_min_pd(_mm256_mul_pd(v, v), t2));
  }
  out.clipped_energy = hsum(energy);
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
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(w + i)));
  }
  for (; i < n; ++i) out[i] = x[i] * w[i];
}

}  // namespace

const KernelTable kTable{
    Backend::kAvx2, sum,          sum_squares, dot, max_abs, central_moments,
    sign_changes,   sure_terms,   multiply,
};

}  // namespace dysphonia::kernels::avx2
