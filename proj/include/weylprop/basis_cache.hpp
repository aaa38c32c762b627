#pragma once

// On-disk cache of cobar basis levels: one JSON file per (r, t, g, p) holding
// the canonical graphs of that level. Files are written to a temporary name
// and renamed into place, so readers never see a partial file.

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "weylprop/cobar.hpp"

namespace weylprop {

inline constexpr int kBasisCacheFormatVersion = 1;

/// {"labels": [[r,t,g],...], "in": [[legs],...], "out": [[legs],...], "edges": [[from,to,count],...]}
nlohmann::json graph_record(const PropGraph& g);
/// Throws InputError on a malformed record.
PropGraph graph_from_record(const nlohmann::json& j, int r, int t);

/// The directory named by WEYLPROP_CACHE_DIR, if set and nonempty.
std::optional<std::filesystem::path> cache_dir_from_env();

class BasisCache {
 public:
  explicit BasisCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path file_for(int r, int t, int g, int p) const;

  /// nullopt on a missing file or another format version. Throws InputError
  /// when the file is malformed or holds a graph that is not canonical.
  std::optional<BasisLevel> load(int r, int t, int g, int p) const;
  void store(int r, int t, int g, int p, const BasisLevel& level) const;

  /// The serialized form, as written by store.
  static std::string serialize(int r, int t, int g, int p, const BasisLevel& level);

 private:
  std::filesystem::path dir_;
};

/// enumerate_basis with every level read from or written to the cache.
BasisLevel cached_level(int r, int t, int g, int p, const BasisCache* cache);

}  // namespace weylprop
