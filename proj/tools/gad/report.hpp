#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "gad/errors.hpp"
#include "gad/homology.hpp"
#include "gad/io.hpp"

namespace gad::cli {

struct Options {
  unsigned jobs = 0;
  std::uint64_t seed = 20240601;
  std::string cache_dir;
  bool no_cache = false;
  bool json = false;
  bool timing = false;
};

/// Collects the human-readable lines, the JSON payload and the check
/// verdicts of one command.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  /// Records the path and SHA-256 of an input file.
  void input(const std::string& path);
  void line(std::string text) { lines_.push_back(std::move(text)); }
  Json& data() { return data_; }

  void check(std::string name, Verdict verdict, std::string reference = {}, std::string detail = {});
  void check(std::string name, const CheckReport& r);
  void violation(const InvariantViolation& e);

  bool failed() const;
  int exit_code() const { return failed() ? 1 : 0; }

  void print(std::ostream& os, const Options& opt, double elapsed_ms) const;

 private:
  struct Check {
    std::string name;
    Verdict verdict;
    std::string reference;
    std::string detail;
  };
  std::string command_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::string> lines_;
  Json data_ = Json::object();
  std::vector<Check> checks_;
};

std::string sha256_hex(const std::string& bytes);

}  // namespace gad::cli
