#pragma once

#include "dysphonia/dataset.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dysphonia {

struct FeatureScore {
  std::size_t feature_index = 0;
  std::string feature_name;
  double chi2 = 0.0;
  std::size_t rank = 0;  // 1 = best
};

/// Chi-square statistic of one column against the labels after equal-width
/// binning over the observed range. Cells with zero expected count are
/// skipped; a constant column scores 0.
double chi2_statistic(std::span<const double> values, std::span<const int> labels, std::size_t bins);

/// Scores every column; the result is in rank order (descending chi2, ties
/// by lower feature index).
std::vector<FeatureScore> chi2_scores(const LabeledDataset& data, std::size_t bins = 10);

/// Mask (indexed by feature) keeping the k best-ranked features.
std::vector<bool> select_top_k(std::span<const FeatureScore> scores, std::size_t k);

}  // namespace dysphonia
