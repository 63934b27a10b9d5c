#pragma once

#include "dysphonia/classifiers.hpp"

#include <random>

namespace dysphonia::detail {

using Rows = std::span<const std::vector<double>>;

KnnModel train_knn(Rows z, std::span<const int> labels, int k, std::vector<std::string>* warnings);
Prediction predict_knn(const KnnModel& m, std::span<const double> z, const std::array<bool, 3>& seen);

TreeModel train_tree(Rows z, std::span<const int> labels, int max_depth, int min_leaf);
Prediction predict_tree(const TreeModel& m, std::span<const double> z, const std::array<bool, 3>& seen);

NaiveBayesModel train_naive_bayes(Rows z, std::span<const int> labels, double var_floor,
                                  const std::array<bool, 3>& seen);
Prediction predict_naive_bayes(const NaiveBayesModel& m, std::span<const double> z,
                               const std::array<bool, 3>& seen);

SvmModel train_svm(Rows z, std::span<const int> labels, const Hyperparams& hp, std::mt19937_64& rng,
                   const std::array<bool, 3>& seen);
Prediction predict_svm(const SvmModel& m, std::span<const double> z, const std::array<bool, 3>& seen);

MlpModel train_mlp(Rows z, std::span<const int> labels, const Hyperparams& hp, std::uint64_t seed);
Prediction predict_mlp(const MlpModel& m, std::span<const double> z, const std::array<bool, 3>& seen);

/// Highest score among seen classes; ties go to the lower label.
int argmax_seen(const std::array<double, 3>& scores, const std::array<bool, 3>& seen);

/// Fisher-Yates permutation of 0..n-1 driven by rng.
std::vector<std::size_t> shuffled_indices(std::size_t n, std::mt19937_64& rng);

}  // namespace dysphonia::detail
