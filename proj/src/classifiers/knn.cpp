#include "internal.hpp"

#include "dysphonia/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dysphonia::detail {

KnnModel train_knn(Rows z, std::span<const int> labels, int k, std::vector<std::string>* warnings) {
  if (k < 1) throw InvalidArgument("knn: k must be >= 1");
  KnnModel m;
  m.points.assign(z.begin(), z.end());
  m.labels.assign(labels.begin(), labels.end());
  m.k = k;
  if (static_cast<std::size_t>(k) > m.points.size()) {
    m.k = static_cast<int>(m.points.size());
    if (warnings) {
      warnings->push_back("knn: k=" + std::to_string(k) + " exceeds " + std::to_string(m.points.size()) +
                          " training samples; clamped");
    }
  }
  return m;
}

Prediction predict_knn(const KnnModel& m, std::span<const double> z, const std::array<bool, 3>& seen) {
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(m.points.size());
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
      const double d = m.points[i][j] - z[j];
      d2 += d * d;
    }
    dist.emplace_back(std::sqrt(d2), i);
  }
  const auto k = static_cast<std::size_t>(m.k);
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());

  std::array<int, 3> votes{};
  std::array<double, 3> summed{};
  for (std::size_t n = 0; n < k; ++n) {
    const int label = m.labels[dist[n].second];
    ++votes[static_cast<std::size_t>(label)];
    summed[static_cast<std::size_t>(label)] += dist[n].first;
  }

  Prediction p;
  for (int c = 0; c < 3; ++c) p.scores[c] = static_cast<double>(votes[c]) / static_cast<double>(k);
  int best = -1;
  for (int c = 0; c < 3; ++c) {
    if (!seen[c] || votes[c] == 0) continue;
    if (best < 0 || votes[c] > votes[best] || (votes[c] == votes[best] && summed[c] < summed[best])) best = c;
  }
  p.label = best >= 0 ? best : argmax_seen(p.scores, seen);
  return p;
}

}  // namespace dysphonia::detail
