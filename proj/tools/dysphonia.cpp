// Command-line front end: synth, synth-dataset, synth-blobs, extract, rank,
// train, predict, evaluate, plotdata.

#include "dysphonia/classifiers.hpp"
#include "dysphonia/dataset.hpp"
#include "dysphonia/errors.hpp"
#include "dysphonia/evaluation.hpp"
#include "dysphonia/feature_selection.hpp"
#include "dysphonia/manifest.hpp"
#include "dysphonia/pipeline.hpp"
#include "dysphonia/report.hpp"
#include "dysphonia/synth.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using namespace dysphonia;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

// Raised for bad flag values detected before any data is touched.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string manifest;
  std::string features;
  std::string model;
  std::string out;
  std::uint64_t seed = 0;

  std::size_t bins = 10;
  std::size_t top_k = 0;  // 0 keeps all features
  FeatureConfig feature;
  std::size_t threads = 0;
  std::string rejects;
  std::string debug;

  std::string algorithm = "knn";
  Hyperparams hp;
  double test_fraction = 0.15;
  std::size_t cv_k = 10;

  std::string kind = "pulse_train";
  SynthSpec synth;
  std::string name = "synth";
  CorpusSpec corpus;
  std::vector<std::size_t> per_class{22, 28, 30};
  std::size_t dims = 19;
  double separation = 5.0;
  double sigma = 0.1;
  std::string plot_feature;

  std::string write_config;
};

// Writes to the file at `path`, or stdout when it is empty or "-".
template <typename F>
void emit(const std::string& path, F&& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  body(out);
  if (!out) throw Error("write failed: " + path);
}

Algorithm algorithm_of(const Options& o) {
  const auto a = parse_algorithm(o.algorithm);
  if (!a) throw UsageError("unknown algorithm '" + o.algorithm + "' (knn, tree, nb, svm, nn)");
  return *a;
}

PipelineConfig pipeline_of(const Options& o) {
  PipelineConfig cfg;
  cfg.algorithm = algorithm_of(o);
  cfg.hyperparams = o.hp;
  if (o.bins < 2) throw UsageError("--bins must be >= 2");
  cfg.chi2_bins = o.bins;
  if (o.top_k > 0) {
    if (o.top_k > kNumFeatures) throw UsageError("--top-k must lie in [1, 19]");
    cfg.top_k = o.top_k;
  }
  return cfg;
}

std::array<std::size_t, 3> per_class_of(const Options& o) {
  if (o.per_class.size() != 3) throw UsageError("--per-class takes three counts");
  return {o.per_class[0], o.per_class[1], o.per_class[2]};
}

void add_feature_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--frame-ms", o.feature.pitch.frame_ms, "Pitch analysis frame length (ms)")->capture_default_str();
  cmd->add_option("--hop-ms", o.feature.pitch.hop_ms, "Pitch analysis hop (ms)")->capture_default_str();
  cmd->add_option("--f0-min", o.feature.pitch.f0_min, "Lowest admissible F0 (Hz)")->capture_default_str();
  cmd->add_option("--f0-max", o.feature.pitch.f0_max, "Highest admissible F0 (Hz)")->capture_default_str();
  cmd->add_option("--voicing-threshold", o.feature.pitch.voicing_threshold, "Normalized ACF voicing threshold")
      ->capture_default_str();
  cmd->add_option("--subharmonic-ratio", o.feature.pitch.subharmonic_ratio,
                  "Relative ACF height at which a sub-multiple lag is preferred (1 disables)")
      ->capture_default_str();
  cmd->add_option("--sure-threshold", o.feature.sure_threshold, "SURE entropy threshold")->capture_default_str();
  cmd->add_option("--welch-segment", o.feature.welch.segment_length, "Welch segment length (samples)")
      ->capture_default_str();
}

void add_model_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--algorithm", o.algorithm, "knn | tree | nb | svm | nn")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  cmd->add_option("--bins", o.bins, "Chi-square bins per feature")->capture_default_str();
  cmd->add_option("--top-k", o.top_k, "Keep the k best chi-square features (0 = all)")->capture_default_str();
  cmd->add_option("--knn-k", o.hp.knn_k, "Neighbours")->capture_default_str();
  cmd->add_option("--tree-max-depth", o.hp.tree_max_depth, "Tree depth limit")->capture_default_str();
  cmd->add_option("--tree-min-leaf", o.hp.tree_min_leaf, "Minimum samples per leaf")->capture_default_str();
  cmd->add_option("--nb-var-floor", o.hp.nb_var_floor, "Naive Bayes variance floor")->capture_default_str();
  cmd->add_option("--svm-lambda", o.hp.svm_lambda, "SVM regularization")->capture_default_str();
  cmd->add_option("--svm-epochs", o.hp.svm_epochs, "SVM epochs")->capture_default_str();
  cmd->add_option("--svm-lr", o.hp.svm_learning_rate, "SVM base learning rate")->capture_default_str();
  cmd->add_option("--nn-hidden", o.hp.nn_hidden, "Hidden units")->capture_default_str();
  cmd->add_option("--nn-batch", o.hp.nn_batch, "Mini-batch size")->capture_default_str();
  cmd->add_option("--nn-lr", o.hp.nn_learning_rate, "Learning rate")->capture_default_str();
  cmd->add_option("--nn-epochs", o.hp.nn_epochs, "Epochs")->capture_default_str();
}

void cmd_synth(const Options& o) {
  SynthSpec s = o.synth;
  const auto kind = parse_synth_kind(o.kind);
  if (!kind) throw UsageError("unknown --kind '" + o.kind + "' (pulse_train, sine, white_noise, silence)");
  s.kind = *kind;
  s.seed = o.seed;
  try {
    s.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (o.out.empty()) throw UsageError("synth requires --out <directory>");
  write_synth(gen_signal(s), o.out, o.name);
}

void cmd_synth_dataset(const Options& o) {
  if (o.out.empty()) throw UsageError("synth-dataset requires --out <directory>");
  CorpusSpec c = o.corpus;
  c.n_per_class = per_class_of(o);
  c.seed = o.seed;
  const fs::path manifest = write_corpus(c, o.out);
  std::cout << manifest.string() << '\n';
}

void cmd_synth_blobs(const Options& o) {
  const auto data = gen_blobs(per_class_of(o), o.dims, o.separation, o.sigma, o.seed);
  emit(o.out, [&](std::ostream& out) { write_feature_table(out, data); });
}

void cmd_extract(const Options& o) {
  if (o.manifest.empty() || o.out.empty()) throw UsageError("extract requires --manifest and --out");
  const Manifest manifest = load_manifest(o.manifest);
  for (const auto& w : manifest.warnings) std::cerr << "warning: " << w << '\n';
  const ExtractionOutcome result = extract_manifest(manifest, o.feature, o.threads);
  emit(o.out, [&](std::ostream& out) { write_feature_table(out, result.data); });
  const std::string rejects = o.rejects.empty() ? o.out + ".rejects.csv" : o.rejects;
  emit(rejects, [&](std::ostream& out) { write_rejects(out, result.rejects); });
  if (!o.debug.empty()) emit(o.debug, [&](std::ostream& out) { write_debug(out, result.debug); });
  std::cerr << result.data.size() << " recordings extracted, " << result.rejects.size() << " rejected\n";
}

LabeledDataset read_features(const Options& o) {
  if (o.features.empty()) throw UsageError("--features is required");
  return read_feature_table(fs::path(o.features));
}

void cmd_rank(const Options& o) {
  if (o.bins < 2) throw UsageError("--bins must be >= 2");
  const auto data = read_features(o);
  const auto scores = chi2_scores(data, o.bins);
  emit(o.out, [&](std::ostream& out) { write_ranking(out, scores); });
}

void cmd_train(const Options& o) {
  const PipelineConfig cfg = pipeline_of(o);
  const auto data = read_features(o);
  std::vector<std::string> warnings;
  const FittedPipeline fitted = fit_pipeline(data, cfg, o.seed, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  emit(o.out, [&](std::ostream& out) { out << model_to_json(fitted.model); });
}

void cmd_predict(const Options& o) {
  if (o.model.empty()) throw UsageError("predict requires --model");
  std::ifstream in(o.model, std::ios::binary);
  if (!in) throw Error("cannot read " + o.model);
  std::stringstream buf;
  buf << in.rdbuf();
  const TrainedModel model = model_from_json(buf.str());
  const auto data = read_features(o);

  std::vector<std::size_t> columns;
  for (const auto& name : model.feature_names) {
    const auto it = std::find(data.feature_names.begin(), data.feature_names.end(), name);
    if (it == data.feature_names.end()) throw InvalidArgument("feature table lacks model column '" + name + "'");
    columns.push_back(static_cast<std::size_t>(it - data.feature_names.begin()));
  }
  emit(o.out, [&](std::ostream& out) {
    out << "row,label,predicted,score_0,score_1,score_2\n";
    std::vector<double> row(columns.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      for (std::size_t j = 0; j < columns.size(); ++j) row[j] = data.rows[i][columns[j]];
      const Prediction p = predict(model, row);
      out << i << ',' << data.labels[i] << ',' << p.label;
      for (double s : p.scores) out << ',' << format_double(s);
      out << '\n';
    }
  });
}

void cmd_evaluate(const Options& o) {
  const PipelineConfig cfg = pipeline_of(o);
  if (!(o.test_fraction > 0.0 && o.test_fraction < 1.0)) throw UsageError("--test-fraction must lie in (0, 1)");
  if (o.cv_k < 2) throw UsageError("--cv-k must be >= 2");
  const auto data = read_features(o);
  const EvaluationRun run = run_evaluation(data, cfg, o.test_fraction, o.cv_k, o.seed);
  for (const auto& w : run.warnings) std::cerr << "warning: " << w << '\n';
  emit(o.out, [&](std::ostream& out) { out << evaluation_json(run); });
}

void cmd_plotdata(const Options& o) {
  if (o.plot_feature.empty()) throw UsageError("plotdata requires --feature");
  const auto data = read_features(o);
  std::ostringstream body;
  write_plotdata(body, data, o.plot_feature);
  emit(o.out, [&](std::ostream& out) { out << body.str(); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dysphonia feature extraction and classification"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML file");
  Options o;
  app.add_option("--write-config", o.write_config, "Write the effective configuration to a file and continue")
      ->configurable(false);

  auto* synth = app.add_subcommand("synth", "Generate one synthetic signal (WAV + ground-truth JSON)");
  synth->add_option("--kind", o.kind, "pulse_train | sine | white_noise | silence")->capture_default_str();
  synth->add_option("--f0", o.synth.f0, "Fundamental / tone frequency (Hz)")->capture_default_str();
  synth->add_option("--duration", o.synth.duration_s, "Duration (s)")->capture_default_str();
  synth->add_option("--sample-rate", o.synth.sample_rate, "Sample rate (Hz)")->capture_default_str();
  synth->add_option("--jitter", o.synth.jitter_pct, "Programmed jitter (%)")->capture_default_str();
  synth->add_option("--shimmer", o.synth.shimmer_db, "Programmed shimmer (dB)")->capture_default_str();
  synth->add_option("--amplitude", o.synth.amplitude, "Peak amplitude")->capture_default_str();
  synth->add_option("--noise", o.synth.noise_level, "Additive noise amplitude")->capture_default_str();
  synth->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  synth->add_option("--name", o.name, "Output file stem")->capture_default_str();
  synth->add_option("--out", o.out, "Output directory");

  auto* corpus = app.add_subcommand("synth-dataset", "Generate a labelled synthetic WAV corpus with a manifest");
  corpus->add_option("--per-class", o.per_class, "Recordings per class (three counts)")
      ->expected(3)
      ->capture_default_str();
  corpus->add_option("--duration", o.corpus.duration_s, "Duration of each recording (s)")->capture_default_str();
  corpus->add_option("--sample-rate", o.corpus.sample_rate, "Sample rate (Hz)")->capture_default_str();
  corpus->add_option("--spread", o.corpus.spread, "Relative per-recording parameter spread")->capture_default_str();
  corpus->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  corpus->add_option("--out", o.out, "Output directory");

  auto* blobs = app.add_subcommand("synth-blobs", "Write a Gaussian-blob feature table");
  blobs->add_option("--per-class", o.per_class, "Samples per class (three counts)")
      ->expected(3)
      ->capture_default_str();
  blobs->add_option("--dims", o.dims, "Feature dimensions")->capture_default_str();
  blobs->add_option("--separation", o.separation, "Pairwise centre distance")->capture_default_str();
  blobs->add_option("--sigma", o.sigma, "Per-dimension standard deviation")->capture_default_str();
  blobs->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  blobs->add_option("--out", o.out, "Output CSV (stdout if omitted)");

  auto* extract = app.add_subcommand("extract", "Extract the 19 features for every manifest entry");
  extract->add_option("--manifest", o.manifest, "CSV of path,label");
  extract->add_option("--out", o.out, "Feature table CSV");
  extract->add_option("--rejects", o.rejects, "Rejected-recordings CSV (default <out>.rejects.csv)");
  extract->add_option("--debug", o.debug, "Per-recording pitch diagnostics CSV");
  extract->add_option("--threads", o.threads, "Worker threads (0 = all cores)")->capture_default_str();
  add_feature_flags(extract, o);

  auto* rank = app.add_subcommand("rank", "Rank features by chi-square score");
  rank->add_option("--features", o.features, "Feature table CSV");
  rank->add_option("--bins", o.bins, "Chi-square bins per feature")->capture_default_str();
  rank->add_option("--out", o.out, "Ranking CSV (stdout if omitted)");

  auto* train_cmd = app.add_subcommand("train", "Fit a model on a feature table and save it as JSON");
  train_cmd->add_option("--features", o.features, "Feature table CSV");
  train_cmd->add_option("--out", o.out, "Model JSON (stdout if omitted)");
  add_model_flags(train_cmd, o);

  auto* predict_cmd = app.add_subcommand("predict", "Classify the rows of a feature table with a saved model");
  predict_cmd->add_option("--model", o.model, "Model JSON");
  predict_cmd->add_option("--features", o.features, "Feature table CSV");
  predict_cmd->add_option("--out", o.out, "Predictions CSV (stdout if omitted)");

  auto* evaluate = app.add_subcommand("evaluate", "Holdout and cross-validated evaluation report (JSON)");
  evaluate->add_option("--features", o.features, "Feature table CSV");
  evaluate->add_option("--out", o.out, "Report JSON (stdout if omitted)");
  evaluate->add_option("--test-fraction", o.test_fraction, "Holdout fraction")->capture_default_str();
  evaluate->add_option("--cv-k", o.cv_k, "Cross-validation folds")->capture_default_str();
  add_model_flags(evaluate, o);

  auto* plot = app.add_subcommand("plotdata", "Per-class long-format series of one feature");
  plot->add_option("--features", o.features, "Feature table CSV");
  plot->add_option("--feature", o.plot_feature, "Feature name");
  plot->add_option("--out", o.out, "Output CSV (stdout if omitted)");

  // A config file section selects its subcommand.
  for (CLI::App* cmd : {synth, corpus, blobs, extract, rank, train_cmd, predict_cmd, evaluate, plot}) cmd->configurable();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::map<CLI::App*, void (*)(const Options&)> commands = {
      {synth, cmd_synth},     {corpus, cmd_synth_dataset}, {blobs, cmd_synth_blobs},
      {extract, cmd_extract}, {rank, cmd_rank},            {train_cmd, cmd_train},
      {predict_cmd, cmd_predict}, {evaluate, cmd_evaluate}, {plot, cmd_plotdata}};

  try {
    if (!o.write_config.empty()) {
      // Only the selected subcommand: the others share option storage.
      for (const CLI::App* cmd : app.get_subcommands()) {
        emit(o.write_config, [&](std::ostream& out) {
          out << '[' << cmd->get_name() << "]\n" << cmd->config_to_str(true, false);
        });
      }
    }
    for (const auto& [cmd, fn] : commands) {
      if (cmd->parsed()) fn(o);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}
