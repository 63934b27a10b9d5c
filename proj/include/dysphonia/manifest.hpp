#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dysphonia {

inline constexpr int kNumClasses = 3;

/// Class ids: 0 = Med Off, 1 = Healthy, 2 = Med On.
std::string_view class_name(int label);

/// "0 (Med Off)" style display name used in reports.
std::string class_display_name(int label);

struct ManifestEntry {
  std::string path;
  int label = 0;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  std::vector<std::string> warnings;

  std::array<std::size_t, kNumClasses> class_counts() const;
};

/// Parses `path,label` records. A first line whose label field is not an
/// integer is treated as a header; blank lines are skipped. Relative paths
/// are resolved against `base_dir` when it is non-empty. Throws
/// ManifestError on malformed lines or labels outside {0, 1, 2}; duplicate
/// paths are kept and reported in `warnings`.
Manifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir = {});

/// Reads and parses a manifest file; relative entries resolve against the
/// manifest's directory.
Manifest load_manifest(const std::filesystem::path& path);

}  // namespace dysphonia
