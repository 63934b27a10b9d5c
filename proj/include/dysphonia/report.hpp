#pragma once

#include "dysphonia/evaluation.hpp"
#include "dysphonia/feature_selection.hpp"

#include <iosfwd>
#include <span>
#include <string>

namespace dysphonia {

/// One metrics block: id, model, accuracy, per-class precision/recall/f1
/// under the display names "0 (Med Off)", "1 (Healthy)", "2 (Med On)", and
/// the 3x3 confusion matrix.
std::string metrics_json(const MetricsReport& report);

/// Full evaluation document: {model, seed, config, holdout, cv: {k, pooled, folds}, warnings}.
std::string evaluation_json(const EvaluationRun& run);

/// `feature,chi2,rank` rows in rank order.
void write_ranking(std::ostream& out, std::span<const FeatureScore> scores);

}  // namespace dysphonia
