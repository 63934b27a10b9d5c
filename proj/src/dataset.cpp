#include "dysphonia/dataset.hpp"

#include "dysphonia/errors.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace dysphonia {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    std::size_t b = 0;
    while (b < field.size() && field[b] == ' ') ++b;
    out.push_back(field.substr(b));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("feature table line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

void LabeledDataset::validate() const {
  if (rows.size() != labels.size()) throw InvalidArgument("dataset: rows and labels differ in length");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != feature_names.size()) {
      throw InvalidArgument("dataset: row " + std::to_string(i) + " has wrong width");
    }
    if (labels[i] < 0 || labels[i] >= kNumClasses) {
      throw InvalidArgument("dataset: label outside {0, 1, 2} at row " + std::to_string(i));
    }
  }
}

void LabeledDataset::add(std::vector<double> row, int label) {
  if (row.size() != feature_names.size()) throw InvalidArgument("dataset: row width mismatch");
  if (label < 0 || label >= kNumClasses) throw InvalidArgument("dataset: label outside {0, 1, 2}");
  rows.push_back(std::move(row));
  labels.push_back(label);
}

void LabeledDataset::add(const FeatureVector& v, int label) {
  add(std::vector<double>(v.values.begin(), v.values.end()), label);
}

std::array<std::size_t, kNumClasses> LabeledDataset::class_counts() const {
  std::array<std::size_t, kNumClasses> counts{};
  for (int l : labels) ++counts[static_cast<std::size_t>(l)];
  return counts;
}

std::vector<double> LabeledDataset::column(std::size_t j) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[j]);
  return out;
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  LabeledDataset out;
  out.feature_names = feature_names;
  out.rows.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (std::size_t i : indices) {
    out.rows.push_back(rows.at(i));
    out.labels.push_back(labels.at(i));
  }
  return out;
}

LabeledDataset LabeledDataset::select_columns(const std::vector<bool>& mask) const {
  if (mask.size() != feature_names.size()) throw InvalidArgument("select_columns: mask width mismatch");
  LabeledDataset out;
  for (std::size_t j = 0; j < mask.size(); ++j) {
    if (mask[j]) out.feature_names.push_back(feature_names[j]);
  }
  out.labels = labels;
  out.rows.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<double> kept;
    kept.reserve(out.feature_names.size());
    for (std::size_t j = 0; j < mask.size(); ++j) {
      if (mask[j]) kept.push_back(r[j]);
    }
    out.rows.push_back(std::move(kept));
  }
  return out;
}

LabeledDataset make_feature_dataset() {
  LabeledDataset d;
  for (auto name : feature_names()) d.feature_names.emplace_back(name);
  return d;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("format_double failed");
  return std::string(buf, ptr);
}

void write_feature_table(std::ostream& out, const LabeledDataset& data) {
  for (const auto& name : data.feature_names) out << name << ',';
  out << "label\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.rows[i]) out << format_double(v) << ',';
    out << data.labels[i] << '\n';
  }
}

void write_feature_table(const std::filesystem::path& path, const LabeledDataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  write_feature_table(out, data);
}

LabeledDataset read_feature_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("feature table: missing header");
  auto header = split_csv(line);
  if (header.empty() || header.back() != "label") {
    throw InvalidArgument("feature table: last header column must be 'label'");
  }
  LabeledDataset d;
  d.feature_names.assign(header.begin(), header.end() - 1);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size()) {
      throw InvalidArgument("feature table line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(d.feature_names.size());
    for (std::size_t j = 0; j + 1 < fields.size(); ++j) row.push_back(parse_double(fields[j], line_no));
    int label = 0;
    const auto& lf = fields.back();
    const auto [ptr, ec] = std::from_chars(lf.data(), lf.data() + lf.size(), label);
    if (ec != std::errc() || ptr != lf.data() + lf.size() || label < 0 || label >= kNumClasses) {
      throw InvalidArgument("feature table line " + std::to_string(line_no) + ": bad label '" + lf + "'");
    }
    d.rows.push_back(std::move(row));
    d.labels.push_back(label);
  }
  return d;
}

LabeledDataset read_feature_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open feature table '" + path.string() + "'");
  return read_feature_table(in);
}

}  // namespace dysphonia
