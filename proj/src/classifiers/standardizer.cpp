#include "dysphonia/classifiers.hpp"
#include "dysphonia/errors.hpp"

#include <cmath>

namespace dysphonia {

Standardizer Standardizer::fit(const LabeledDataset& data) {
  if (data.empty()) throw InvalidArgument("standardizer: empty dataset");
  const std::size_t d = data.dims();
  const double n = static_cast<double>(data.size());
  Standardizer s;
  s.mean.assign(d, 0.0);
  s.scale.assign(d, 1.0);
  for (const auto& row : data.rows) {
    for (std::size_t j = 0; j < d; ++j) s.mean[j] += row[j];
  }
  for (double& m : s.mean) m /= n;
  std::vector<double> ss(d, 0.0);
  for (const auto& row : data.rows) {
    for (std::size_t j = 0; j < d; ++j) {
      const double dv = row[j] - s.mean[j];
      ss[j] += dv * dv;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    const double sd = std::sqrt(ss[j] / n);
    s.scale[j] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

std::vector<double> Standardizer::apply(std::span<const double> row) const {
  if (row.size() != mean.size()) {
    throw InvalidArgument("standardizer: expected " + std::to_string(mean.size()) + " features, got " +
                          std::to_string(row.size()));
  }
  std::vector<double> z(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) z[j] = (row[j] - mean[j]) / scale[j];
  return z;
}

LabeledDataset Standardizer::apply(const LabeledDataset& data) const {
  LabeledDataset out;
  out.feature_names = data.feature_names;
  out.labels = data.labels;
  out.rows.reserve(data.size());
  for (const auto& row : data.rows) out.rows.push_back(apply(row));
  return out;
}

}  // namespace dysphonia
