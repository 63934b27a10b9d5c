#include "dysphonia/kernels.hpp"

#include <cmath>

namespace dysphonia::kernels::scalar {
namespace {

double sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double sum_squares(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::fabs(x[i]);
    if (a > m) m = a;
  }
  return m;
}

CentralMoments central_moments(const double* x, std::size_t n, double mean) {
  CentralMoments out;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - mean;
    const double d2 = d * d;
    out.m2 += d2;
    out.m3 += d2 * d;
    out.m4 += d2 * d2;
  }
  return out;
}

std::size_t sign_changes(const double* x, std::size_t n) {
  std::size_t count = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const bool prev_neg = x[i - 1] < 0.0;
    const bool cur_neg = x[i] < 0.0;
    count += prev_neg != cur_neg ? 1 : 0;
  }
  return count;
}

SureTerms sure_terms(const double* x, std::size_t n, double threshold) {
  SureTerms out;
  const double t2 = threshold * threshold;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(x[i]) <= threshold) ++out.at_or_below;
    const double x2 = x[i] * x[i];
    out.clipped_energy += x2 < t2 ? x2 : t2;
  }
  return out;
}

void multiply(const double* x, const double* w, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * w[i];
}

}  // namespace

const KernelTable kTable{
    Backend::kScalar, sum,          sum_squares, dot, max_abs, central_moments,
    sign_changes,     sure_terms,   multiply,
};

}  // namespace dysphonia::kernels::scalar
