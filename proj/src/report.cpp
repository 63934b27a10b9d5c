#include "dysphonia/report.hpp"

#include "dysphonia/manifest.hpp"

#include <json.hpp>

#include <ostream>

namespace dysphonia {

using nlohmann::ordered_json;

namespace {

ordered_json metrics_object(const MetricsReport& r) {
  ordered_json classes = ordered_json::array();
  for (int c = 0; c < 3; ++c) {
    const auto& m = r.per_class[static_cast<std::size_t>(c)];
    classes.push_back({{"class", class_display_name(c)},
                       {"precision", m.precision},
                       {"recall", m.recall},
                       {"f1", m.f1},
                       {"precision_undefined", m.precision_undefined},
                       {"recall_undefined", m.recall_undefined}});
  }
  return {{"id", r.id},
          {"model", r.model},
          {"accuracy", r.accuracy},
          {"total", r.confusion.total()},
          {"classes", classes},
          {"confusion_matrix", r.confusion.counts}};
}

ordered_json hyperparams_object(const Hyperparams& hp) {
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

}  // namespace

std::string metrics_json(const MetricsReport& report) { return metrics_object(report).dump(2); }

std::string evaluation_json(const EvaluationRun& run) {
  ordered_json folds = ordered_json::array();
  for (const auto& f : run.cv.folds) folds.push_back(metrics_object(f.report));
  ordered_json config = {{"algorithm", std::string(short_name(run.config.algorithm))},
                         {"bins", run.config.chi2_bins},
                         {"top_k", run.config.top_k ? ordered_json(*run.config.top_k) : ordered_json(nullptr)},
                         {"test_fraction", run.test_fraction},
                         {"cv_k", run.cv_k},
                         {"hyperparams", hyperparams_object(run.config.hyperparams)}};
  ordered_json doc = {{"model", run.model},
                      {"seed", run.seed},
                      {"config", config},
                      {"holdout", metrics_object(run.holdout)},
                      {"cv", {{"k", run.cv_k}, {"pooled", metrics_object(run.cv.pooled)}, {"folds", folds}}},
                      {"warnings", run.warnings}};
  return doc.dump(2) + "\n";
}

void write_ranking(std::ostream& out, std::span<const FeatureScore> scores) {
  out << "feature,chi2,rank\n";
  for (const auto& s : scores) out << s.feature_name << ',' << format_double(s.chi2) << ',' << s.rank << '\n';
}

}  // namespace dysphonia
