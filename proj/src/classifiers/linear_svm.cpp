#include "internal.hpp"

#include "dysphonia/errors.hpp"

#include <limits>

namespace dysphonia::detail {

// One-vs-rest linear SVMs trained jointly by primal sub-gradient descent on
// lambda/2 |w|^2 + mean hinge loss. The bias is not regularized.
SvmModel train_svm(Rows z, std::span<const int> labels, const Hyperparams& hp, std::mt19937_64& rng,
                   const std::array<bool, 3>& seen) {
  if (hp.svm_epochs < 1) throw InvalidArgument("svm: epochs must be >= 1");
  if (!(hp.svm_lambda > 0.0) || !(hp.svm_learning_rate > 0.0)) {
    throw InvalidArgument("svm: lambda and learning rate must be positive");
  }
  const std::size_t d = z.front().size();
  SvmModel m;
  for (auto& w : m.weights) w.assign(d, 0.0);

  std::size_t t = 0;
  for (int epoch = 0; epoch < hp.svm_epochs; ++epoch) {
    for (std::size_t i : shuffled_indices(z.size(), rng)) {
      ++t;
      const double eta = hp.svm_learning_rate /
                         (1.0 + hp.svm_learning_rate * hp.svm_lambda * static_cast<double>(t));
      const auto& x = z[i];
      for (int c = 0; c < 3; ++c) {
        if (!seen[c]) continue;
        auto& w = m.weights[c];
        const double y = labels[i] == c ? 1.0 : -1.0;
        double score = m.bias[c];
        for (std::size_t j = 0; j < d; ++j) score += w[j] * x[j];
        const double shrink = 1.0 - eta * hp.svm_lambda;
        for (double& wj : w) wj *= shrink;
        if (y * score < 1.0) {
          for (std::size_t j = 0; j < d; ++j) w[j] += eta * y * x[j];
          m.bias[c] += eta * y;
        }
      }
    }
  }
  return m;
}

Prediction predict_svm(const SvmModel& m, std::span<const double> z, const std::array<bool, 3>& seen) {
  Prediction p;
  for (int c = 0; c < 3; ++c) {
    if (!seen[c]) {
      p.scores[c] = -std::numeric_limits<double>::infinity();
      continue;
    }
    double s = m.bias[c];
    for (std::size_t j = 0; j < z.size(); ++j) s += m.weights[c][j] * z[j];
    p.scores[c] = s;
  }
  p.label = argmax_seen(p.scores, seen);
  return p;
}

}  // namespace dysphonia::detail
