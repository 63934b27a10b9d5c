#include "dysphonia/evaluation.hpp"

#include "dysphonia/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace dysphonia {

void ConfusionMatrix::add(int actual, int predicted) {
  if (actual < 0 || actual > 2 || predicted < 0 || predicted > 2) {
    throw InvalidArgument("confusion matrix: label out of range");
  }
  ++counts[static_cast<std::size_t>(actual)][static_cast<std::size_t>(predicted)];
}

std::size_t ConfusionMatrix::total() const noexcept {
  std::size_t t = 0;
  for (const auto& row : counts) t += row[0] + row[1] + row[2];
  return t;
}

std::size_t ConfusionMatrix::trace() const noexcept { return counts[0][0] + counts[1][1] + counts[2][2]; }

std::size_t ConfusionMatrix::row_sum(int c) const noexcept {
  const auto& row = counts[static_cast<std::size_t>(c)];
  return row[0] + row[1] + row[2];
}

std::size_t ConfusionMatrix::column_sum(int c) const noexcept {
  const auto j = static_cast<std::size_t>(c);
  return counts[0][j] + counts[1][j] + counts[2][j];
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) noexcept {
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) counts[i][j] += other.counts[i][j];
  }
  return *this;
}

MetricsReport metrics(const ConfusionMatrix& cm, std::string model, std::string id) {
  const std::size_t total = cm.total();
  if (total == 0) throw InvalidArgument("metrics: empty confusion matrix");
  MetricsReport r;
  r.model = std::move(model);
  r.id = std::move(id);
  r.confusion = cm;
  r.accuracy = static_cast<double>(cm.trace()) / static_cast<double>(total);
  for (int c = 0; c < 3; ++c) {
    auto& m = r.per_class[static_cast<std::size_t>(c)];
    const double tp = static_cast<double>(cm.counts[c][c]);
    const std::size_t col = cm.column_sum(c);
    const std::size_t row = cm.row_sum(c);
    m.precision_undefined = col == 0;
    m.recall_undefined = row == 0;
    m.precision = col ? tp / static_cast<double>(col) : 0.0;
    m.recall = row ? tp / static_cast<double>(row) : 0.0;
    const double pr = m.precision + m.recall;
    m.f1 = pr > 0.0 ? 2.0 * m.precision * m.recall / pr : 0.0;
  }
  return r;
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over (seed, stream)
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::array<std::vector<std::size_t>, 3> by_class(std::span<const int> labels) {
  std::array<std::vector<std::size_t>, 3> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int c = labels[i];
    if (c < 0 || c > 2) throw InvalidArgument("labels must be 0, 1 or 2");
    groups[static_cast<std::size_t>(c)].push_back(i);
  }
  return groups;
}

}  // namespace

SplitIndices stratified_split(std::span<const int> labels, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw InvalidArgument("test fraction must lie strictly between 0 and 1");
  }
  auto groups = by_class(labels);
  const std::size_t n = labels.size();
  const auto target = static_cast<std::size_t>(std::llround(static_cast<double>(n) * test_fraction));

  std::array<std::size_t, 3> take{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    const double q = static_cast<double>(groups[c].size()) * test_fraction;
    take[c] = static_cast<std::size_t>(std::floor(q + 1e-9));
    remainder[c] = q - static_cast<double>(take[c]);
    assigned += take[c];
  }
  // Largest remainders first, lower class on ties.
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t pass = 0; assigned < target && pass < 3; ++pass) {
    for (std::size_t c : order) {
      if (assigned >= target) break;
      if (take[c] < groups[c].size()) {
        ++take[c];
        ++assigned;
      }
    }
  }

  SplitIndices out;
  std::mt19937_64 rng(mix_seed(seed, 0));
  for (std::size_t c = 0; c < 3; ++c) {
    auto& g = groups[c];
    std::shuffle(g.begin(), g.end(), rng);
    out.test.insert(out.test.end(), g.begin(), g.begin() + static_cast<std::ptrdiff_t>(take[c]));
    out.train.insert(out.train.end(), g.begin() + static_cast<std::ptrdiff_t>(take[c]), g.end());
    if (take[c] == 0 && static_cast<double>(g.size()) * test_fraction >= 0.5) {
      out.warnings.push_back("class " + class_display_name(static_cast<int>(c)) +
                             " has no samples in the test split");
    }
  }
  std::sort(out.test.begin(), out.test.end());
  std::sort(out.train.begin(), out.train.end());
  return out;
}

std::vector<std::vector<std::size_t>> kfold(std::span<const int> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw InvalidArgument("k-fold: k must be at least 2");
  auto groups = by_class(labels);
  std::size_t smallest = labels.size();
  for (const auto& g : groups) {
    if (!g.empty()) smallest = std::min(smallest, g.size());
  }
  if (labels.empty() || k > smallest) {
    throw InvalidArgument("k-fold: k=" + std::to_string(k) + " exceeds the smallest class count (" +
                          std::to_string(smallest) + "); use k <= " + std::to_string(smallest));
  }
  std::vector<std::vector<std::size_t>> folds(k);
  std::mt19937_64 rng(mix_seed(seed, 1));
  std::size_t offset = 0;
  for (auto& g : groups) {
    std::shuffle(g.begin(), g.end(), rng);
    for (std::size_t p = 0; p < g.size(); ++p) folds[(offset + p) % k].push_back(g[p]);
    offset += g.size();
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

ConfusionMatrix evaluate(const TrainedModel& model, const LabeledDataset& data) {
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < data.size(); ++i) cm.add(data.labels[i], predict(model, data.rows[i]).label);
  return cm;
}

namespace {

std::vector<double> masked(std::span<const double> row, const std::vector<bool>& mask) {
  std::vector<double> out;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (mask[j]) out.push_back(row[j]);
  }
  return out;
}

}  // namespace

Prediction FittedPipeline::predict(std::span<const double> raw_row) const {
  if (raw_row.size() != mask.size()) {
    throw InvalidArgument("pipeline: expected " + std::to_string(mask.size()) + " features, got " +
                          std::to_string(raw_row.size()));
  }
  return dysphonia::predict(model, masked(raw_row, mask));
}

ConfusionMatrix FittedPipeline::evaluate(const LabeledDataset& data) const {
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < data.size(); ++i) cm.add(data.labels[i], predict(data.rows[i]).label);
  return cm;
}

FittedPipeline fit_pipeline(const LabeledDataset& train_data, const PipelineConfig& config, std::uint64_t seed,
                            std::vector<std::string>* warnings) {
  if (train_data.empty()) throw InvalidArgument("pipeline: empty training set");
  FittedPipeline p;
  p.scores = chi2_scores(train_data, config.chi2_bins);
  p.mask = config.top_k ? select_top_k(p.scores, *config.top_k) : std::vector<bool>(train_data.dims(), true);
  p.model = train(config.algorithm, train_data.select_columns(p.mask), config.hyperparams, seed, warnings);
  return p;
}

CrossValidation cross_validate(const LabeledDataset& data, const PipelineConfig& config, std::size_t k,
                               std::uint64_t seed, std::vector<std::string>* warnings) {
  data.validate();
  const std::string model(long_name(config.algorithm));
  CrossValidation cv;
  ConfusionMatrix pooled;
  const auto folds = kfold(data.labels, k, seed);
  for (std::size_t f = 0; f < folds.size(); ++f) {
    FoldResult r;
    r.fold = f;
    r.test_indices = folds[f];
    std::vector<bool> in_test(data.size(), false);
    for (std::size_t i : r.test_indices) in_test[i] = true;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (!in_test[i]) r.train_indices.push_back(i);
    }
    r.pipeline = fit_pipeline(data.subset(r.train_indices), config, mix_seed(seed, 100 + f), warnings);
    const ConfusionMatrix cm = r.pipeline.evaluate(data.subset(r.test_indices));
    pooled += cm;
    r.report = metrics(cm, model, "fold-" + std::to_string(f + 1));
    cv.folds.push_back(std::move(r));
  }
  cv.pooled = metrics(pooled, model, "pooled");
  return cv;
}

EvaluationRun run_evaluation(const LabeledDataset& data, const PipelineConfig& config, double test_fraction,
                             std::size_t cv_k, std::uint64_t seed) {
  data.validate();
  EvaluationRun run;
  run.model = std::string(long_name(config.algorithm));
  run.seed = seed;
  run.config = config;
  run.test_fraction = test_fraction;
  run.cv_k = cv_k;
  run.split = stratified_split(data.labels, test_fraction, seed);
  run.warnings = run.split.warnings;
  if (run.split.test.empty() || run.split.train.empty()) {
    throw InvalidArgument("evaluation: split leaves an empty train or test set");
  }
  const LabeledDataset train_part = data.subset(run.split.train);
  const LabeledDataset test_part = data.subset(run.split.test);

  const FittedPipeline holdout = fit_pipeline(train_part, config, mix_seed(seed, 2), &run.warnings);
  run.holdout = metrics(holdout.evaluate(test_part), run.model, "holdout");
  run.cv = cross_validate(train_part, config, cv_k, seed, &run.warnings);
  return run;
}

}  // namespace dysphonia
