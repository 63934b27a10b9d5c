#pragma once

#include "dysphonia/dataset.hpp"
#include "dysphonia/features.hpp"
#include "dysphonia/manifest.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace dysphonia {

/// A manifest entry that produced no feature row.
struct RejectedRecording {
  std::string path;
  int label = 0;
  std::string reason;
};

/// Intermediate pitch values of an accepted recording.
struct ExtractionDebug {
  std::string path;
  int label = 0;
  std::size_t cycles = 0;
  double jitter_abs_s = 0.0;
  double jitter_pct = 0.0;
  double shimmer_db = 0.0;
  double mean_f0_hz = 0.0;
};

struct ExtractionOutcome {
  LabeledDataset data;  // rows in manifest order, rejects skipped
  std::vector<RejectedRecording> rejects;
  std::vector<ExtractionDebug> debug;  // aligned with data.rows
};

/// Loads and featurizes every entry. Recordings are processed on up to
/// `threads` workers (0 = hardware concurrency); results are collected in
/// manifest order so the output does not depend on scheduling.
ExtractionOutcome extract_manifest(const Manifest& manifest, const FeatureConfig& config, std::size_t threads = 1);

/// `path,label,reason`.
void write_rejects(std::ostream& out, const std::vector<RejectedRecording>& rejects);

/// `path,label,cycles,jitter_abs_s,jitter_pct,shimmer_db,mean_f0_hz`.
void write_debug(std::ostream& out, const std::vector<ExtractionDebug>& debug);

/// Long-format `class,recording,value` for one feature column; recording is
/// the zero-based row index. Throws InvalidArgument listing the valid names
/// when the column does not exist.
void write_plotdata(std::ostream& out, const LabeledDataset& data, const std::string& feature);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& text);

}  // namespace dysphonia
