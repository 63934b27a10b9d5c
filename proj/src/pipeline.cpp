#include "dysphonia/pipeline.hpp"

#include "dysphonia/audio_io.hpp"
#include "dysphonia/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <ostream>
#include <thread>

namespace dysphonia {
namespace {

struct Slot {
  std::optional<ExtractionDetail> detail;
  std::string reason;
  std::exception_ptr failure;  // non-library errors are rethrown on the caller
};

void process(const ManifestEntry& entry, const FeatureConfig& config, Slot& slot) {
  try {
    const AudioSignal signal = load_wav(entry.path);
    slot.detail = extract_detailed(signal, config);
  } catch (const Error& e) {
    slot.reason = e.what();
  } catch (...) {
    slot.failure = std::current_exception();
  }
}

}  // namespace

ExtractionOutcome extract_manifest(const Manifest& manifest, const FeatureConfig& config, std::size_t threads) {
  const std::size_t n = manifest.entries.size();
  std::vector<Slot> slots(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(n, 1));

  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) process(manifest.entries[i], config, slots[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) process(manifest.entries[i], config, slots[i]);
      });
    }
  }

  ExtractionOutcome out;
  out.data = make_feature_dataset();
  for (std::size_t i = 0; i < n; ++i) {
    const ManifestEntry& entry = manifest.entries[i];
    Slot& slot = slots[i];
    if (slot.failure) std::rethrow_exception(slot.failure);
    if (!slot.detail) {
      out.rejects.push_back(RejectedRecording{entry.path, entry.label, slot.reason});
      continue;
    }
    const ExtractionDetail& d = *slot.detail;
    out.data.add(d.features, entry.label);
    ExtractionDebug dbg;
    dbg.path = entry.path;
    dbg.label = entry.label;
    dbg.cycles = d.track.size();
    dbg.jitter_abs_s = d.jitter_abs_s;
    dbg.jitter_pct = d.features[Feature::kJitterPct];
    dbg.shimmer_db = d.features[Feature::kShimmerDb];
    double total = 0.0;
    for (double p : d.track.cycle_periods) total += p;
    dbg.mean_f0_hz = total > 0.0 ? static_cast<double>(d.track.size()) / total : 0.0;
    out.debug.push_back(dbg);
  }
  return out;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_rejects(std::ostream& out, const std::vector<RejectedRecording>& rejects) {
  out << "path,label,reason\n";
  for (const auto& r : rejects) out << csv_field(r.path) << ',' << r.label << ',' << csv_field(r.reason) << '\n';
}

void write_debug(std::ostream& out, const std::vector<ExtractionDebug>& debug) {
  out << "path,label,cycles,jitter_abs_s,jitter_pct,shimmer_db,mean_f0_hz\n";
  for (const auto& d : debug) {
    out << csv_field(d.path) << ',' << d.label << ',' << d.cycles << ',' << format_double(d.jitter_abs_s) << ','
        << format_double(d.jitter_pct) << ',' << format_double(d.shimmer_db) << ',' << format_double(d.mean_f0_hz)
        << '\n';
  }
}

void write_plotdata(std::ostream& out, const LabeledDataset& data, const std::string& feature) {
  const auto it = std::find(data.feature_names.begin(), data.feature_names.end(), feature);
  if (it == data.feature_names.end()) {
    std::string valid;
    for (const auto& name : data.feature_names) valid += (valid.empty() ? "" : ", ") + name;
    throw InvalidArgument("unknown feature '" + feature + "'; valid names: " + valid);
  }
  const auto j = static_cast<std::size_t>(it - data.feature_names.begin());
  out << "class,recording,value\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << class_display_name(data.labels[i]) << ',' << i << ',' << format_double(data.rows[i][j]) << '\n';
  }
}

}  // namespace dysphonia
