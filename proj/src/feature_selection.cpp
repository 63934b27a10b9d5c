#include "dysphonia/feature_selection.hpp"

#include "dysphonia/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dysphonia {

double chi2_statistic(std::span<const double> values, std::span<const int> labels, std::size_t bins) {
  if (values.size() != labels.size()) throw InvalidArgument("chi2: values and labels differ in length");
  if (values.empty()) throw InvalidArgument("chi2: empty dataset");
  if (bins < 2) throw InvalidArgument("chi2: need at least 2 bins");

  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  const double lo = *mn;
  const double range = *mx - lo;
  if (!(range > 0.0)) return 0.0;

  std::vector<double> observed(bins * kNumClasses, 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto bin = static_cast<std::size_t>(std::floor((values[i] - lo) / range * static_cast<double>(bins)));
    bin = std::min(bin, bins - 1);
    observed[bin * kNumClasses + static_cast<std::size_t>(labels[i])] += 1.0;
  }

  std::vector<double> row_sum(bins, 0.0);
  std::vector<double> col_sum(kNumClasses, 0.0);
  for (std::size_t b = 0; b < bins; ++b) {
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      row_sum[b] += observed[b * kNumClasses + c];
      col_sum[c] += observed[b * kNumClasses + c];
    }
  }
  const double total = static_cast<double>(values.size());
  double chi2 = 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      const double expected = row_sum[b] * col_sum[c] / total;
      if (expected <= 0.0) continue;
      const double d = observed[b * kNumClasses + c] - expected;
      chi2 += d * d / expected;
    }
  }
  return chi2;
}

std::vector<FeatureScore> chi2_scores(const LabeledDataset& data, std::size_t bins) {
  data.validate();
  if (data.empty()) throw InvalidArgument("chi2_scores: empty dataset");
  std::vector<FeatureScore> scores;
  scores.reserve(data.dims());
  for (std::size_t j = 0; j < data.dims(); ++j) {
    const auto col = data.column(j);
    scores.push_back(FeatureScore{j, data.feature_names[j], chi2_statistic(col, data.labels, bins), 0});
  }
  std::stable_sort(scores.begin(), scores.end(), [](const FeatureScore& a, const FeatureScore& b) {
    if (a.chi2 != b.chi2) return a.chi2 > b.chi2;
    return a.feature_index < b.feature_index;
  });
  for (std::size_t r = 0; r < scores.size(); ++r) scores[r].rank = r + 1;
  return scores;
}

std::vector<bool> select_top_k(std::span<const FeatureScore> scores, std::size_t k) {
  if (k < 1 || k > scores.size()) {
    throw InvalidArgument("select_top_k: k must be in [1, " + std::to_string(scores.size()) + "]");
  }
  std::vector<bool> mask(scores.size(), false);
  for (const auto& s : scores) {
    if (s.rank <= k) mask.at(s.feature_index) = true;
  }
  return mask;
}

}  // namespace dysphonia
