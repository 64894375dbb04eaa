#include "cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <thread>

#include <unistd.h>

namespace gad::cli {

std::string Cache::default_dir() {
  if (const char* d = std::getenv("GAD_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::string(x) + "/gad";
  if (const char* h = std::getenv("HOME"); h && *h) return std::string(h) + "/.cache/gad";
  return ".gad-cache";
}

std::string Cache::path(const std::string& key) const { return (std::filesystem::path(dir_) / (key + ".json")).string(); }

std::optional<Json> Cache::load(const std::string& key) const {
  if (!enabled_) return std::nullopt;
  std::ifstream in(path(key));
  if (!in) return std::nullopt;
  try {
    return Json::parse(in);
  } catch (const Json::exception&) {
    return std::nullopt;
  }
}

void Cache::store(const std::string& key, const Json& value) const {
  if (!enabled_) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) return;
  // Write then rename so concurrent runs never see a partial file.
  const std::string target = path(key);
  const std::string tmp = target + ".tmp." + std::to_string(::getpid()) + "." +
                          std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << value.dump() << '\n';
  }
  std::filesystem::rename(tmp, target, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace gad::cli
