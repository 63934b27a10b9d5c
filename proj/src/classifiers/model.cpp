#include "internal.hpp"

#include "dysphonia/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <numeric>

namespace dysphonia {

using nlohmann::json;

std::string_view short_name(Algorithm a) {
  switch (a) {
    case Algorithm::kKnn: return "knn";
    case Algorithm::kDecisionTree: return "tree";
    case Algorithm::kNaiveBayes: return "nb";
    case Algorithm::kSvm: return "svm";
    case Algorithm::kNeuralNetwork: return "nn";
  }
  return "?";
}

std::string_view long_name(Algorithm a) {
  switch (a) {
    case Algorithm::kKnn: return "knn";
    case Algorithm::kDecisionTree: return "decision_tree";
    case Algorithm::kNaiveBayes: return "naive_bayes";
    case Algorithm::kSvm: return "svm";
    case Algorithm::kNeuralNetwork: return "neural_network";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms) {
    if (name == short_name(a) || name == long_name(a)) return a;
  }
  return std::nullopt;
}

namespace detail {

int argmax_seen(const std::array<double, 3>& scores, const std::array<bool, 3>& seen) {
  int best = -1;
  for (int c = 0; c < 3; ++c) {
    if (!seen[c]) continue;
    if (best < 0 || scores[c] > scores[best]) best = c;
  }
  return best < 0 ? 0 : best;
}

std::vector<std::size_t> shuffled_indices(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  return idx;
}

}  // namespace detail

TrainedModel train(Algorithm algorithm, const LabeledDataset& data, const Hyperparams& hp, std::uint64_t seed,
                   std::vector<std::string>* warnings) {
  data.validate();
  if (data.empty()) throw InvalidArgument("train: empty dataset");
  if (data.dims() == 0) throw InvalidArgument("train: dataset has no features");

  TrainedModel m;
  m.algorithm = algorithm;
  m.hyperparams = hp;
  m.seed = seed;
  m.feature_names = data.feature_names;
  m.standardization = Standardizer::fit(data);
  for (int label : data.labels) m.classes_seen[static_cast<std::size_t>(label)] = true;

  const LabeledDataset z = m.standardization.apply(data);
  std::mt19937_64 rng(seed);
  switch (algorithm) {
    case Algorithm::kKnn:
      m.params = detail::train_knn(z.rows, z.labels, hp.knn_k, warnings);
      break;
    case Algorithm::kDecisionTree:
      m.params = detail::train_tree(z.rows, z.labels, hp.tree_max_depth, hp.tree_min_leaf);
      break;
    case Algorithm::kNaiveBayes:
      if (!(hp.nb_var_floor > 0.0)) throw InvalidArgument("nb: variance floor must be positive");
      m.params = detail::train_naive_bayes(z.rows, z.labels, hp.nb_var_floor, m.classes_seen);
      break;
    case Algorithm::kSvm:
      m.params = detail::train_svm(z.rows, z.labels, hp, rng, m.classes_seen);
      break;
    case Algorithm::kNeuralNetwork:
      m.params = detail::train_mlp(z.rows, z.labels, hp, seed);
      break;
  }
  return m;
}

Prediction predict_standardized(const TrainedModel& model, std::span<const double> z) {
  if (z.size() != model.dims()) {
    throw InvalidArgument("predict: expected " + std::to_string(model.dims()) + " features, got " +
                          std::to_string(z.size()));
  }
  const auto& seen = model.classes_seen;
  return std::visit(
      [&](const auto& p) -> Prediction {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, KnnModel>) return detail::predict_knn(p, z, seen);
        if constexpr (std::is_same_v<T, TreeModel>) return detail::predict_tree(p, z, seen);
        if constexpr (std::is_same_v<T, NaiveBayesModel>) return detail::predict_naive_bayes(p, z, seen);
        if constexpr (std::is_same_v<T, SvmModel>) return detail::predict_svm(p, z, seen);
        if constexpr (std::is_same_v<T, MlpModel>) return detail::predict_mlp(p, z, seen);
      },
      model.params);
}

Prediction predict(const TrainedModel& model, std::span<const double> raw_row) {
  if (raw_row.size() != model.dims()) {
    throw InvalidArgument("predict: expected " + std::to_string(model.dims()) + " features, got " +
                          std::to_string(raw_row.size()));
  }
  return predict_standardized(model, model.standardization.apply(raw_row));
}

// Serialization -----------------------------------------------------------

namespace {

// JSON has no infinities; unseen-class priors are stored as null.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double from_nullable(const json& j) {
  return j.is_null() ? -std::numeric_limits<double>::infinity() : j.get<double>();
}

json hyperparams_json(const Hyperparams& hp) {
  return {{"knn_k", hp.knn_k},
          {"tree_max_depth", hp.tree_max_depth},
          {"tree_min_leaf", hp.tree_min_leaf},
          {"nb_var_floor", hp.nb_var_floor},
          {"svm_lambda", hp.svm_lambda},
          {"svm_epochs", hp.svm_epochs},
          {"svm_learning_rate", hp.svm_learning_rate},
          {"nn_hidden", hp.nn_hidden},
          {"nn_batch", hp.nn_batch},
          {"nn_learning_rate", hp.nn_learning_rate},
          {"nn_epochs", hp.nn_epochs}};
}

Hyperparams hyperparams_from(const json& j) {
  Hyperparams hp;
  hp.knn_k = j.at("knn_k").get<int>();
  hp.tree_max_depth = j.at("tree_max_depth").get<int>();
  hp.tree_min_leaf = j.at("tree_min_leaf").get<int>();
  hp.nb_var_floor = j.at("nb_var_floor").get<double>();
  hp.svm_lambda = j.at("svm_lambda").get<double>();
  hp.svm_epochs = j.at("svm_epochs").get<int>();
  hp.svm_learning_rate = j.at("svm_learning_rate").get<double>();
  hp.nn_hidden = j.at("nn_hidden").get<int>();
  hp.nn_batch = j.at("nn_batch").get<int>();
  hp.nn_learning_rate = j.at("nn_learning_rate").get<double>();
  hp.nn_epochs = j.at("nn_epochs").get<int>();
  return hp;
}

json params_json(const TrainedModel& m) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, KnnModel>) {
          return {{"k", p.k}, {"points", p.points}, {"labels", p.labels}};
        } else if constexpr (std::is_same_v<T, TreeModel>) {
          json nodes = json::array();
          for (const auto& n : p.nodes) {
            nodes.push_back({{"feature", n.feature},
                             {"threshold", n.threshold},
                             {"left", n.left},
                             {"right", n.right},
                             {"counts", n.counts}});
          }
          return {{"nodes", nodes}};
        } else if constexpr (std::is_same_v<T, NaiveBayesModel>) {
          json prior = json::array();
          for (double v : p.log_prior) prior.push_back(finite_or_null(v));
          return {{"log_prior", prior}, {"mean", p.mean}, {"var", p.var}};
        } else if constexpr (std::is_same_v<T, SvmModel>) {
          return {{"weights", p.weights}, {"bias", p.bias}};
        } else {
          return {{"inputs", p.params.inputs}, {"hidden", p.params.hidden}, {"w1", p.params.w1},
                  {"b1", p.params.b1},         {"w2", p.params.w2},         {"b2", p.params.b2}};
        }
      },
      m.params);
}

template <typename T>
std::array<T, 3> array3(const json& j) {
  if (!j.is_array() || j.size() != 3) throw InvalidArgument("model: expected a 3-element array");
  return {j[0].get<T>(), j[1].get<T>(), j[2].get<T>()};
}

void params_from(TrainedModel& m, const json& j) {
  switch (m.algorithm) {
    case Algorithm::kKnn: {
      KnnModel k;
      k.k = j.at("k").get<int>();
      k.points = j.at("points").get<std::vector<std::vector<double>>>();
      k.labels = j.at("labels").get<std::vector<int>>();
      if (k.points.size() != k.labels.size() || k.k < 1 || static_cast<std::size_t>(k.k) > k.points.size()) {
        throw InvalidArgument("model: inconsistent knn parameters");
      }
      m.params = std::move(k);
      break;
    }
    case Algorithm::kDecisionTree: {
      TreeModel t;
      for (const auto& n : j.at("nodes")) {
        TreeNode node;
        node.feature = n.at("feature").get<int>();
        node.threshold = n.at("threshold").get<double>();
        node.left = n.at("left").get<int>();
        node.right = n.at("right").get<int>();
        node.counts = array3<double>(n.at("counts"));
        t.nodes.push_back(node);
      }
      const int count = static_cast<int>(t.nodes.size());
      if (count == 0) throw InvalidArgument("model: empty tree");
      for (const auto& n : t.nodes) {
        if (n.feature >= 0 && (n.left <= 0 || n.right <= 0 || n.left >= count || n.right >= count ||
                               static_cast<std::size_t>(n.feature) >= m.dims())) {
          throw InvalidArgument("model: corrupt tree node");
        }
      }
      m.params = std::move(t);
      break;
    }
    case Algorithm::kNaiveBayes: {
      NaiveBayesModel nb;
      const auto& prior = j.at("log_prior");
      if (!prior.is_array() || prior.size() != 3) throw InvalidArgument("model: bad log_prior");
      for (std::size_t c = 0; c < 3; ++c) nb.log_prior[c] = from_nullable(prior[c]);
      nb.mean = array3<std::vector<double>>(j.at("mean"));
      nb.var = array3<std::vector<double>>(j.at("var"));
      m.params = std::move(nb);
      break;
    }
    case Algorithm::kSvm: {
      SvmModel s;
      s.weights = array3<std::vector<double>>(j.at("weights"));
      s.bias = array3<double>(j.at("bias"));
      m.params = std::move(s);
      break;
    }
    case Algorithm::kNeuralNetwork: {
      MlpModel n;
      n.params.inputs = j.at("inputs").get<std::size_t>();
      n.params.hidden = j.at("hidden").get<std::size_t>();
      n.params.w1 = j.at("w1").get<std::vector<double>>();
      n.params.b1 = j.at("b1").get<std::vector<double>>();
      n.params.w2 = j.at("w2").get<std::vector<double>>();
      n.params.b2 = j.at("b2").get<std::vector<double>>();
      const auto& p = n.params;
      if (p.inputs != m.dims() || p.w1.size() != p.inputs * p.hidden || p.b1.size() != p.hidden ||
          p.w2.size() != 3 * p.hidden || p.b2.size() != 3) {
        throw InvalidArgument("model: inconsistent network shapes");
      }
      m.params = std::move(n);
      break;
    }
  }
}

}  // namespace

std::string model_to_json(const TrainedModel& m) {
  json doc = {{"format", "dysphonia-model"},
              {"version", kModelFormatVersion},
              {"algorithm", std::string(long_name(m.algorithm))},
              {"seed", m.seed},
              {"hyperparams", hyperparams_json(m.hyperparams)},
              {"feature_names", m.feature_names},
              {"standardization", {{"mean", m.standardization.mean}, {"scale", m.standardization.scale}}},
              {"classes_seen", m.classes_seen},
              {"parameters", params_json(m)}};
  return doc.dump(2) + "\n";
}

TrainedModel model_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (doc.value("format", "") != "dysphonia-model") throw InvalidArgument("model: not a model document");
    if (doc.at("version").get<int>() != kModelFormatVersion) {
      throw InvalidArgument("model: unsupported version " + doc.at("version").dump());
    }
    TrainedModel m;
    const auto alg = parse_algorithm(doc.at("algorithm").get<std::string>());
    if (!alg) throw InvalidArgument("model: unknown algorithm " + doc.at("algorithm").dump());
    m.algorithm = *alg;
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.hyperparams = hyperparams_from(doc.at("hyperparams"));
    m.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    m.standardization.mean = doc.at("standardization").at("mean").get<std::vector<double>>();
    m.standardization.scale = doc.at("standardization").at("scale").get<std::vector<double>>();
    if (m.standardization.mean.size() != m.dims() || m.standardization.scale.size() != m.dims()) {
      throw InvalidArgument("model: standardization width does not match feature names");
    }
    m.classes_seen = array3<bool>(doc.at("classes_seen"));
    params_from(m, doc.at("parameters"));
    return m;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("model: malformed document: ") + e.what());
  }
}

}  // namespace dysphonia
