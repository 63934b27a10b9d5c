#include "dysphonia/manifest.hpp"

#include "dysphonia/errors.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace dysphonia {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_int(std::string_view s, int& out) {
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

std::string_view class_name(int label) {
  switch (label) {
    case 0: return "Med Off";
    case 1: return "Healthy";
    case 2: return "Med On";
  }
  throw InvalidArgument("class label outside {0, 1, 2}: " + std::to_string(label));
}

std::string class_display_name(int label) {
  return std::to_string(label) + " (" + std::string(class_name(label)) + ")";
}

std::array<std::size_t, kNumClasses> Manifest::class_counts() const {
  std::array<std::size_t, kNumClasses> counts{};
  for (const auto& e : entries) ++counts[static_cast<std::size_t>(e.label)];
  return counts;
}

Manifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir) {
  Manifest manifest;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto comma = line.rfind(',');
    if (comma == std::string_view::npos) {
      throw ManifestError(line_no, "expected 'path,label', got '" + std::string(line) + "'");
    }
    const std::string_view path = trim(line.substr(0, comma));
    const std::string_view label_text = trim(line.substr(comma + 1));
    int label = 0;
    if (!parse_int(label_text, label)) {
      if (line_no == 1 && manifest.entries.empty()) continue;  // header
      throw ManifestError(line_no, "label '" + std::string(label_text) + "' is not an integer");
    }
    if (label < 0 || label >= kNumClasses) {
      throw ManifestError(line_no, "label " + std::to_string(label) + " outside {0, 1, 2}");
    }
    if (path.empty()) throw ManifestError(line_no, "empty path");

    std::filesystem::path resolved{std::string(path)};
    if (resolved.is_relative() && !base_dir.empty()) resolved = base_dir / resolved;
    std::string key = resolved.lexically_normal().string();
    if (!seen.insert(key).second) {
      manifest.warnings.push_back("line " + std::to_string(line_no) + ": duplicate path '" +
                                  std::string(path) + "' (kept)");
    }
    manifest.entries.push_back(ManifestEntry{resolved.string(), label});
  }
  return manifest;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open manifest '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.parent_path());
}

}  // namespace dysphonia
