#pragma once

#include "dysphonia/classifiers.hpp"
#include "dysphonia/dataset.hpp"
#include "dysphonia/feature_selection.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dysphonia {

/// Rows are actual classes, columns predicted classes.
struct ConfusionMatrix {
  std::array<std::array<std::size_t, 3>, 3> counts{};

  void add(int actual, int predicted);
  std::size_t total() const noexcept;
  std::size_t trace() const noexcept;
  std::size_t row_sum(int c) const noexcept;
  std::size_t column_sum(int c) const noexcept;
  ConfusionMatrix& operator+=(const ConfusionMatrix& other) noexcept;
  bool operator==(const ConfusionMatrix&) const = default;
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_undefined = false;  // no predictions of this class
  bool recall_undefined = false;     // no samples of this class
};

struct MetricsReport {
  std::string model;
  std::string id;  // "holdout", "pooled" or "fold-<n>"
  std::array<ClassMetrics, 3> per_class{};
  double accuracy = 0.0;
  ConfusionMatrix confusion;
};

/// Throws InvalidArgument on an empty matrix.
MetricsReport metrics(const ConfusionMatrix& cm, std::string model = {}, std::string id = {});

struct SplitIndices {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
  std::vector<std::string> warnings;
};

/// Per-class test counts follow largest-remainder rounding of
/// count * fraction so the total equals round(n * fraction).
SplitIndices stratified_split(std::span<const int> labels, double test_fraction, std::uint64_t seed);

/// Stratified fold assignment; element f lists the ascending test indices of
/// fold f. Throws InvalidArgument when k exceeds the smallest class count.
std::vector<std::vector<std::size_t>> kfold(std::span<const int> labels, std::size_t k, std::uint64_t seed);

/// Predicts every row (raw features; the model applies its own standardization).
ConfusionMatrix evaluate(const TrainedModel& model, const LabeledDataset& data);

struct PipelineConfig {
  Algorithm algorithm = Algorithm::kKnn;
  Hyperparams hyperparams;
  std::size_t chi2_bins = 10;
  std::optional<std::size_t> top_k;  // keep every feature when unset
};

/// Chi-square ranking, column selection and a model, all fitted on one
/// training set.
struct FittedPipeline {
  std::vector<FeatureScore> scores;
  std::vector<bool> mask;
  TrainedModel model;

  Prediction predict(std::span<const double> raw_row) const;
  ConfusionMatrix evaluate(const LabeledDataset& data) const;
};

FittedPipeline fit_pipeline(const LabeledDataset& train, const PipelineConfig& config, std::uint64_t seed,
                            std::vector<std::string>* warnings = nullptr);

struct FoldResult {
  std::size_t fold = 0;
  std::vector<std::size_t> test_indices;
  std::vector<std::size_t> train_indices;
  FittedPipeline pipeline;
  MetricsReport report;
};

struct CrossValidation {
  MetricsReport pooled;
  std::vector<FoldResult> folds;
};

/// Selection and standardization are refitted inside every fold on its
/// training rows only; fold matrices are summed into the pooled report.
CrossValidation cross_validate(const LabeledDataset& data, const PipelineConfig& config, std::size_t k,
                               std::uint64_t seed, std::vector<std::string>* warnings = nullptr);

struct EvaluationRun {
  std::string model;
  std::uint64_t seed = 0;
  PipelineConfig config;
  double test_fraction = 0.15;
  std::size_t cv_k = 10;
  SplitIndices split;
  MetricsReport holdout;
  CrossValidation cv;  // run on the training portion of the split
  std::vector<std::string> warnings;
};

/// Holdout split, a model fitted on the training portion and scored on the
/// holdout, plus k-fold CV on the training portion.
EvaluationRun run_evaluation(const LabeledDataset& data, const PipelineConfig& config, double test_fraction,
                             std::size_t cv_k, std::uint64_t seed);

}  // namespace dysphonia
