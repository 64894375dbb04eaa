#pragma once

#include <optional>
#include <string>

#include "gad/io.hpp"

namespace gad::cli {

/// JSON results stored one file per key. A disabled cache never reads or
/// writes; unreadable entries are treated as misses.
class Cache {
 public:
  Cache(std::string dir, bool enabled) : dir_(std::move(dir)), enabled_(enabled) {}

  /// GAD_CACHE_DIR, else $XDG_CACHE_HOME/gad, else ~/.cache/gad.
  static std::string default_dir();

  std::optional<Json> load(const std::string& key) const;
  void store(const std::string& key, const Json& value) const;

 private:
  std::string path(const std::string& key) const;
  std::string dir_;
  bool enabled_;
};

}  // namespace gad::cli
