#include "internal.hpp"

#include "dysphonia/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dysphonia {

std::vector<double> MlpParams::flatten() const {
  std::vector<double> flat;
  flat.reserve(parameter_count());
  for (const auto* v : {&w1, &b1, &w2, &b2}) flat.insert(flat.end(), v->begin(), v->end());
  return flat;
}

void MlpParams::unflatten(std::span<const double> flat) {
  if (flat.size() != parameter_count()) throw InvalidArgument("mlp: parameter count mismatch");
  std::size_t pos = 0;
  for (auto* v : {&w1, &b1, &w2, &b2}) {
    std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(pos), v->size(), v->begin());
    pos += v->size();
  }
}

MlpParams mlp_init(std::size_t inputs, std::size_t hidden, std::uint64_t seed) {
  if (inputs == 0 || hidden == 0) throw InvalidArgument("mlp: layer sizes must be positive");
  MlpParams p;
  p.inputs = inputs;
  p.hidden = hidden;
  std::mt19937_64 rng(seed);
  const double a1 = std::sqrt(6.0 / static_cast<double>(inputs + hidden));
  const double a2 = std::sqrt(6.0 / static_cast<double>(hidden + 3));
  std::uniform_real_distribution<double> u1(-a1, a1);
  std::uniform_real_distribution<double> u2(-a2, a2);
  p.w1.resize(hidden * inputs);
  for (double& w : p.w1) w = u1(rng);
  p.b1.assign(hidden, 0.0);
  p.w2.resize(3 * hidden);
  for (double& w : p.w2) w = u2(rng);
  p.b2.assign(3, 0.0);
  return p;
}

namespace {

struct Activations {
  std::vector<double> pre;     // hidden pre-activations
  std::vector<double> hidden;  // ReLU outputs
  std::array<double, 3> prob{};
};

Activations forward(const MlpParams& p, std::span<const double> z) {
  if (z.size() != p.inputs) throw InvalidArgument("mlp: input width mismatch");
  Activations a;
  a.pre.resize(p.hidden);
  a.hidden.resize(p.hidden);
  for (std::size_t h = 0; h < p.hidden; ++h) {
    double s = p.b1[h];
    const double* w = p.w1.data() + h * p.inputs;
    for (std::size_t j = 0; j < p.inputs; ++j) s += w[j] * z[j];
    a.pre[h] = s;
    a.hidden[h] = s > 0.0 ? s : 0.0;
  }
  std::array<double, 3> logits{};
  for (std::size_t c = 0; c < 3; ++c) {
    double s = p.b2[c];
    const double* w = p.w2.data() + c * p.hidden;
    for (std::size_t h = 0; h < p.hidden; ++h) s += w[h] * a.hidden[h];
    logits[c] = s;
  }
  const double mx = std::max({logits[0], logits[1], logits[2]});
  double norm = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    a.prob[c] = std::exp(logits[c] - mx);
    norm += a.prob[c];
  }
  for (double& q : a.prob) q /= norm;
  return a;
}

void zero_like(const MlpParams& p, MlpParams& g) {
  g.inputs = p.inputs;
  g.hidden = p.hidden;
  g.w1.assign(p.w1.size(), 0.0);
  g.b1.assign(p.b1.size(), 0.0);
  g.w2.assign(p.w2.size(), 0.0);
  g.b2.assign(p.b2.size(), 0.0);
}

}  // namespace

std::array<double, 3> mlp_forward(const MlpParams& params, std::span<const double> z) {
  return forward(params, z).prob;
}

double mlp_loss(const MlpParams& p, std::span<const std::vector<double>> rows, std::span<const int> labels,
                MlpParams* grad) {
  if (rows.empty() || rows.size() != labels.size()) throw InvalidArgument("mlp: bad batch");
  if (grad) zero_like(p, *grad);
  const double inv_n = 1.0 / static_cast<double>(rows.size());
  double loss = 0.0;
  std::vector<double> dhidden(p.hidden);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Activations a = forward(p, rows[i]);
    const auto y = static_cast<std::size_t>(labels[i]);
    loss -= std::log(std::max(a.prob[y], 1e-300));
    if (!grad) continue;

    std::array<double, 3> dlogit{};
    for (std::size_t c = 0; c < 3; ++c) dlogit[c] = (a.prob[c] - (c == y ? 1.0 : 0.0)) * inv_n;
    std::fill(dhidden.begin(), dhidden.end(), 0.0);
    for (std::size_t c = 0; c < 3; ++c) {
      grad->b2[c] += dlogit[c];
      double* gw = grad->w2.data() + c * p.hidden;
      const double* w = p.w2.data() + c * p.hidden;
      for (std::size_t h = 0; h < p.hidden; ++h) {
        gw[h] += dlogit[c] * a.hidden[h];
        dhidden[h] += dlogit[c] * w[h];
      }
    }
    for (std::size_t h = 0; h < p.hidden; ++h) {
      if (!(a.pre[h] > 0.0)) continue;
      grad->b1[h] += dhidden[h];
      double* gw = grad->w1.data() + h * p.inputs;
      for (std::size_t j = 0; j < p.inputs; ++j) gw[j] += dhidden[h] * rows[i][j];
    }
  }
  return loss * inv_n;
}

namespace detail {

MlpModel train_mlp(Rows z, std::span<const int> labels, const Hyperparams& hp, std::uint64_t seed) {
  if (hp.nn_hidden < 1 || hp.nn_batch < 1 || hp.nn_epochs < 1 || !(hp.nn_learning_rate > 0.0)) {
    throw InvalidArgument("nn: hidden, batch, epochs and learning rate must be positive");
  }
  MlpModel m;
  m.params = mlp_init(z.front().size(), static_cast<std::size_t>(hp.nn_hidden), seed);
  std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ull);
  const auto batch = static_cast<std::size_t>(hp.nn_batch);

  std::vector<std::vector<double>> bx;
  std::vector<int> by;
  MlpParams grad;
  m.loss_history.reserve(static_cast<std::size_t>(hp.nn_epochs));
  for (int epoch = 0; epoch < hp.nn_epochs; ++epoch) {
    const auto order = shuffled_indices(z.size(), rng);
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t end = std::min(order.size(), start + batch);
      bx.clear();
      by.clear();
      for (std::size_t k = start; k < end; ++k) {
        bx.push_back(z[order[k]]);
        by.push_back(labels[order[k]]);
      }
      mlp_loss(m.params, bx, by, &grad);
      auto step = [&](std::vector<double>& w, const std::vector<double>& g) {
        for (std::size_t k = 0; k < w.size(); ++k) w[k] -= hp.nn_learning_rate * g[k];
      };
      step(m.params.w1, grad.w1);
      step(m.params.b1, grad.b1);
      step(m.params.w2, grad.w2);
      step(m.params.b2, grad.b2);
    }
    m.loss_history.push_back(mlp_loss(m.params, z, labels));
  }
  return m;
}

Prediction predict_mlp(const MlpModel& m, std::span<const double> z, const std::array<bool, 3>& seen) {
  Prediction p;
  p.scores = mlp_forward(m.params, z);
  p.label = argmax_seen(p.scores, seen);
  return p;
}

}  // namespace detail
}  // namespace dysphonia
