#pragma once

#include "dysphonia/dataset.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dysphonia {

enum class Algorithm { kKnn, kDecisionTree, kNaiveBayes, kSvm, kNeuralNetwork };

inline constexpr std::array<Algorithm, 5> kAllAlgorithms = {
    Algorithm::kKnn, Algorithm::kDecisionTree, Algorithm::kNaiveBayes, Algorithm::kSvm,
    Algorithm::kNeuralNetwork};

/// Short CLI tag: knn, tree, nb, svm, nn.
std::string_view short_name(Algorithm a);
/// Long tag used in serialized documents: knn, decision_tree, naive_bayes, svm, neural_network.
std::string_view long_name(Algorithm a);
/// Accepts either tag.
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct Hyperparams {
  int knn_k = 5;
  int tree_max_depth = 8;
  int tree_min_leaf = 1;
  double nb_var_floor = 1e-9;
  double svm_lambda = 1e-3;
  int svm_epochs = 200;
  double svm_learning_rate = 0.1;  // eta_t = lr / (1 + lr * lambda * t)
  int nn_hidden = 16;
  int nn_batch = 8;
  double nn_learning_rate = 0.01;
  int nn_epochs = 500;
};

/// Per-feature z-scoring fitted on training rows. Zero-variance columns are
/// centred but not scaled.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const LabeledDataset& data);
  std::vector<double> apply(std::span<const double> row) const;
  LabeledDataset apply(const LabeledDataset& data) const;
};

struct KnnModel {
  int k = 5;
  std::vector<std::vector<double>> points;
  std::vector<int> labels;
};

struct TreeNode {
  int feature = -1;  // -1 for leaves
  double threshold = 0.0;
  int left = -1;   // x[feature] <= threshold
  int right = -1;
  std::array<double, 3> counts{};
};

struct TreeModel {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
};

struct NaiveBayesModel {
  std::array<double, 3> log_prior{};
  std::array<std::vector<double>, 3> mean;
  std::array<std::vector<double>, 3> var;
};

struct SvmModel {
  std::array<std::vector<double>, 3> weights;
  std::array<double, 3> bias{};
};

/// input -> hidden (ReLU) -> 3 (softmax). Weight matrices are row-major
/// [out][in].
struct MlpParams {
  std::size_t inputs = 0;
  std::size_t hidden = 0;
  std::vector<double> w1, b1, w2, b2;

  std::size_t parameter_count() const noexcept { return w1.size() + b1.size() + w2.size() + b2.size(); }
  std::vector<double> flatten() const;
  void unflatten(std::span<const double> flat);
};

struct MlpModel {
  MlpParams params;
  std::vector<double> loss_history;  // full-batch training loss after each epoch
};

struct TrainedModel {
  Algorithm algorithm = Algorithm::kKnn;
  Hyperparams hyperparams;
  std::uint64_t seed = 0;
  std::vector<std::string> feature_names;
  Standardizer standardization;
  std::array<bool, 3> classes_seen{};
  std::variant<KnnModel, TreeModel, NaiveBayesModel, SvmModel, MlpModel> params;

  std::size_t dims() const noexcept { return feature_names.size(); }
};

struct Prediction {
  int label = 0;
  std::array<double, 3> scores{};
};

/// Fits standardization on `data`, then trains. Warnings (e.g. k clamped)
/// are appended to `warnings` when it is non-null.
TrainedModel train(Algorithm algorithm, const LabeledDataset& data, const Hyperparams& hyperparams,
                   std::uint64_t seed, std::vector<std::string>* warnings = nullptr);

/// Standardizes the raw row with the model's statistics and classifies it.
Prediction predict(const TrainedModel& model, std::span<const double> raw_row);

/// Classifies an already standardized row.
Prediction predict_standardized(const TrainedModel& model, std::span<const double> z);

/// Versioned JSON document: algorithm tag, hyperparams, seed, feature names,
/// standardization, classes seen and the learned parameters.
std::string model_to_json(const TrainedModel& model);
/// Throws InvalidArgument on malformed documents or unknown versions.
TrainedModel model_from_json(std::string_view text);

inline constexpr int kModelFormatVersion = 1;

// Neural network internals exposed for gradient checking ------------------

MlpParams mlp_init(std::size_t inputs, std::size_t hidden, std::uint64_t seed);

/// Mean cross-entropy over the batch; fills `grad` (same shape) when non-null.
double mlp_loss(const MlpParams& params, std::span<const std::vector<double>> rows,
                std::span<const int> labels, MlpParams* grad = nullptr);

std::array<double, 3> mlp_forward(const MlpParams& params, std::span<const double> z);

}  // namespace dysphonia
