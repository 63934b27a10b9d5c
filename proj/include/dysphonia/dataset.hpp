#pragma once

#include "dysphonia/features.hpp"
#include "dysphonia/manifest.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace dysphonia {

/// Feature rows with class labels in {0, 1, 2}. Column names follow the
/// canonical feature order unless columns were selected away.
struct LabeledDataset {
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;

  std::size_t size() const noexcept { return rows.size(); }
  std::size_t dims() const noexcept { return feature_names.size(); }
  bool empty() const noexcept { return rows.empty(); }

  /// Throws InvalidArgument if shapes disagree or a label is out of range.
  void validate() const;

  void add(std::vector<double> row, int label);
  void add(const FeatureVector& v, int label);

  std::array<std::size_t, kNumClasses> class_counts() const;
  std::vector<double> column(std::size_t j) const;

  LabeledDataset subset(std::span<const std::size_t> indices) const;
  LabeledDataset select_columns(const std::vector<bool>& mask) const;
};

/// An empty dataset with the 19 canonical column names.
LabeledDataset make_feature_dataset();

/// Shortest round-trip decimal representation.
std::string format_double(double v);

/// Header `<names...>,label`, one row per sample.
void write_feature_table(std::ostream& out, const LabeledDataset& data);
void write_feature_table(const std::filesystem::path& path, const LabeledDataset& data);

/// Parses a feature table; the last column must be `label`.
LabeledDataset read_feature_table(std::istream& in);
LabeledDataset read_feature_table(const std::filesystem::path& path);

}  // namespace dysphonia
