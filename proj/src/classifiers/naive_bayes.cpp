#include "internal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dysphonia::detail {

NaiveBayesModel train_naive_bayes(Rows z, std::span<const int> labels, double var_floor,
                                  const std::array<bool, 3>& seen) {
  const std::size_t d = z.front().size();
  NaiveBayesModel m;
  std::array<double, 3> counts{};
  for (int c = 0; c < 3; ++c) {
    m.mean[c].assign(d, 0.0);
    m.var[c].assign(d, 0.0);
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    const auto c = static_cast<std::size_t>(labels[i]);
    counts[c] += 1.0;
    for (std::size_t j = 0; j < d; ++j) m.mean[c][j] += z[i][j];
  }
  for (int c = 0; c < 3; ++c) {
    if (counts[c] > 0.0) {
      for (double& v : m.mean[c]) v /= counts[c];
    }
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    const auto c = static_cast<std::size_t>(labels[i]);
    for (std::size_t j = 0; j < d; ++j) {
      const double dv = z[i][j] - m.mean[c][j];
      m.var[c][j] += dv * dv;
    }
  }
  const double n = static_cast<double>(z.size());
  for (int c = 0; c < 3; ++c) {
    for (double& v : m.var[c]) v = std::max(counts[c] > 0.0 ? v / counts[c] : 0.0, var_floor);
    m.log_prior[c] = seen[c] ? std::log(counts[c] / n) : -std::numeric_limits<double>::infinity();
  }
  return m;
}

Prediction predict_naive_bayes(const NaiveBayesModel& m, std::span<const double> z,
                               const std::array<bool, 3>& seen) {
  std::array<double, 3> logp{};
  double best = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < 3; ++c) {
    if (!seen[c]) {
      logp[c] = -std::numeric_limits<double>::infinity();
      continue;
    }
    double lp = m.log_prior[c];
    for (std::size_t j = 0; j < z.size(); ++j) {
      const double v = m.var[c][j];
      const double dv = z[j] - m.mean[c][j];
      lp -= 0.5 * (std::log(2.0 * std::numbers::pi * v) + dv * dv / v);
    }
    logp[c] = lp;
    best = std::max(best, lp);
  }
  Prediction p;
  double norm = 0.0;
  for (int c = 0; c < 3; ++c) {
    p.scores[c] = seen[c] ? std::exp(logp[c] - best) : 0.0;
    norm += p.scores[c];
  }
  for (double& s : p.scores) s /= norm;
  // Decide on log posteriors so far-away points (underflowing scores) stay ordered.
  p.label = argmax_seen(logp, seen);
  return p;
}

}  // namespace dysphonia::detail
