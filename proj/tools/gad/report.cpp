#include "report.hpp"

#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace gad::cli {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

void Report::input(const std::string& path) { inputs_.emplace_back(path, sha256_hex(read_text_file(path))); }

void Report::check(std::string name, Verdict verdict, std::string reference, std::string detail) {
  checks_.push_back({std::move(name), verdict, std::move(reference), std::move(detail)});
}

void Report::check(std::string name, const CheckReport& r) {
  std::string detail;
  for (const auto& d : r.details) detail += (detail.empty() ? "" : "; ") + d;
  check(std::move(name), r.verdict, r.reference, std::move(detail));
}

void Report::violation(const InvariantViolation& e) { check("invariant", Verdict::fail, e.reference(), e.what()); }

bool Report::failed() const {
  for (const auto& c : checks_)
    if (c.verdict == Verdict::fail) return true;
  return false;
}

void Report::print(std::ostream& os, const Options& opt, double elapsed_ms) const {
  if (opt.json) {
    Json j;
    j["command"] = command_;
    Json in = Json::array();
    for (const auto& [path, digest] : inputs_) in.push_back(Json{{"path", path}, {"sha256", digest}});
    j["inputs"] = std::move(in);
    j["result"] = data_;
    Json cs = Json::array();
    for (const auto& c : checks_) {
      Json o{{"name", c.name}, {"verdict", to_string(c.verdict)}};
      if (!c.reference.empty()) o["reference"] = c.reference;
      if (!c.detail.empty()) o["detail"] = c.detail;
      cs.push_back(std::move(o));
    }
    j["checks"] = std::move(cs);
    if (opt.timing) j["elapsed_ms"] = elapsed_ms;
    os << j.dump(2) << '\n';
    return;
  }
  for (const auto& l : lines_) os << l << '\n';
  for (const auto& c : checks_) {
    os << to_string(c.verdict) << "  " << c.name;
    if (c.verdict == Verdict::fail && !c.reference.empty()) os << " [" << c.reference << "]";
    if (!c.detail.empty()) os << ": " << c.detail;
    os << '\n';
  }
  if (opt.timing) os << "elapsed " << std::fixed << std::setprecision(1) << elapsed_ms << " ms\n";
}

}  // namespace gad::cli
