#pragma once

#include <cstdint>
#include <string>

#include "report.hpp"

namespace gad::cli {

struct GraphArgs {
  std::string file;
  std::string dot;
  std::string out;
  std::uint64_t mod = 0;
  bool cohomology = false;
};

void graph_grade(const GraphArgs& a, const Options& opt, Report& r);
void graph_connection(const GraphArgs& a, const Options& opt, Report& r);
void graph_diamond(const GraphArgs& a, const Options& opt, Report& r);
void graph_homology(const GraphArgs& a, const Options& opt, Report& r);

struct AnArgs {
  std::size_t n = 2;
  std::string weight;
  std::string csv;
  std::string dot;
  std::uint64_t mod = 0;
  std::string op;
  std::string perm;
  std::string property = "all";
};

void an_weights(const AnArgs& a, const Options& opt, Report& r);
void an_component(const AnArgs& a, const Options& opt, Report& r);
void an_iso(const AnArgs& a, const Options& opt, Report& r);
void an_verify(const AnArgs& a, const Options& opt, Report& r);

struct LieArgs {
  std::string file;
  std::string type;
  std::size_t n = 0;
  std::uint64_t mod = 0;
};

void lie_validate(const LieArgs& a, const Options& opt, Report& r);
void lie_diamond_check(const LieArgs& a, const Options& opt, Report& r);
void lie_homology(const LieArgs& a, const Options& opt, Report& r);

void fixtures(const std::string& dir, Report& r);

/// "Z^2 ⊕ Z/2" style summary over all degrees: "H_1 = Z, H_2 = Z/2".
std::string homology_summary(const HomologyTable& h, const std::string& symbol = "H_");

}  // namespace gad::cli
