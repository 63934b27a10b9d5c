#include "helpers.hpp"

#include "dysphonia/errors.hpp"
#include "dysphonia/features.hpp"
#include "dysphonia/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace dysphonia;
namespace k = dysphonia::kernels;

namespace {

std::vector<k::Backend> vector_backends() {
  std::vector<k::Backend> out;
  for (k::Backend b : {k::Backend::kAvx2, k::Backend::kNeon}) {
    if (k::is_supported(b)) out.push_back(b);
  }
  return out;
}

bool near(double a, double b, double scale) { return std::fabs(a - b) <= 1e-12 * std::max(1.0, scale); }

}  // namespace

TEST_CASE("scalar kernels on hand cases") {
  const auto& s = k::table(k::Backend::kScalar);
  const double x[] = {1.0, -2.0, 0.0, 3.0, -0.5};
  CHECK(s.sum(x, 5) == 1.5);
  CHECK(s.sum_squares(x, 5) == 14.25);
  CHECK(s.max_abs(x, 5) == 3.0);
  // signs: + - + + -  (0 counts as +)
  CHECK(s.sign_changes(x, 5) == 3);
  const auto st = s.sure_terms(x, 5, 1.0);
  CHECK(st.at_or_below == 3);
  CHECK(st.clipped_energy == 1.0 + 1.0 + 0.0 + 1.0 + 0.25);
  const auto cm = s.central_moments(x, 5, 0.3);
  double m2 = 0, m3 = 0, m4 = 0;
  for (double v : x) {
    m2 += (v - 0.3) * (v - 0.3);
    m3 += std::pow(v - 0.3, 3);
    m4 += std::pow(v - 0.3, 4);
  }
  CHECK(cm.m2 == doctest::Approx(m2));
  CHECK(cm.m3 == doctest::Approx(m3));
  CHECK(cm.m4 == doctest::Approx(m4));
  CHECK(s.sum(x, 0) == 0.0);
  CHECK(s.sign_changes(x, 1) == 0);
}

TEST_CASE("vector kernels agree with the scalar reference") {
  const auto& ref = k::table(k::Backend::kScalar);
  const auto backends = vector_backends();
  if (backends.empty()) MESSAGE("no vector backend on this CPU; equivalence checks skipped");
  for (k::Backend b : backends) {
    CAPTURE(k::to_string(b));
    const auto& t = k::table(b);
    CHECK(t.backend == b);
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 33u, 64u, 1000u, 4097u}) {
      for (std::size_t offset : {0u, 1u, 3u}) {
        CAPTURE(n);
        CAPTURE(offset);
        auto buf = testing::uniform_signal(n + offset, 1000 + n * 7 + offset);
        auto wbuf = testing::uniform_signal(n + offset, 2000 + n);
        // Inject exact zeros and threshold ties so the edge rules are exercised.
        for (std::size_t i = offset; i < buf.size(); i += 5) buf[i] = 0.0;
        for (std::size_t i = offset + 2; i < buf.size(); i += 11) buf[i] = -0.2;
        const double* x = buf.data() + offset;
        const double* w = wbuf.data() + offset;
        const double scale = static_cast<double>(n);

        CHECK(near(t.sum(x, n), ref.sum(x, n), scale));
        CHECK(near(t.sum_squares(x, n), ref.sum_squares(x, n), scale));
        CHECK(near(t.dot(x, w, n), ref.dot(x, w, n), scale));
        CHECK(t.max_abs(x, n) == ref.max_abs(x, n));
        CHECK(t.sign_changes(x, n) == ref.sign_changes(x, n));
        const auto a = t.sure_terms(x, n, 0.2);
        const auto r = ref.sure_terms(x, n, 0.2);
        CHECK(a.at_or_below == r.at_or_below);
        CHECK(near(a.clipped_energy, r.clipped_energy, scale));
        const auto ca = t.central_moments(x, n, 0.01);
        const auto cr = ref.central_moments(x, n, 0.01);
        CHECK(near(ca.m2, cr.m2, scale));
        CHECK(near(ca.m3, cr.m3, scale));
        CHECK(near(ca.m4, cr.m4, scale));
        std::vector<double> oa(n + 1, 7.0);
        std::vector<double> orf(n + 1, 7.0);
        t.multiply(x, w, oa.data(), n);
        ref.multiply(x, w, orf.data(), n);
        CHECK(oa == orf);  // products are exact in both paths; the sentinel stays untouched
      }
    }
  }
}

TEST_CASE("feature extraction matches across backends") {
  const auto x = testing::uniform_signal(3001, 99);
  k::ScopedBackend pin(k::Backend::kScalar);
  const auto ref = descriptive_stats(x);
  const double ref_zcr = zcr(x);
  const double ref_sure = sure_entropy(x, 0.2);
  for (k::Backend b : vector_backends()) {
    k::ScopedBackend inner(b);
    CHECK(&k::active() == &k::table(b));
    const auto got = descriptive_stats(x);
    CHECK(got.variance == doctest::Approx(ref.variance).epsilon(1e-12));
    CHECK(got.kurtosis == doctest::Approx(ref.kurtosis).epsilon(1e-12));
    CHECK(got.skewness == doctest::Approx(ref.skewness).epsilon(1e-10));
    CHECK(zcr(x) == ref_zcr);
    CHECK(sure_entropy(x, 0.2) == doctest::Approx(ref_sure).epsilon(1e-12));
  }
}

TEST_CASE("dispatch bookkeeping") {
  CHECK(k::is_supported(k::Backend::kScalar));
  CHECK(k::is_supported(k::detect_best()));
  const auto* before = &k::active();
  {
    k::ScopedBackend pin(k::Backend::kScalar);
    CHECK(k::active().backend == k::Backend::kScalar);
  }
  CHECK(&k::active() == before);
#if defined(__x86_64__)
  CHECK_THROWS_AS(k::table(k::Backend::kNeon), InvalidArgument);
#endif
}
