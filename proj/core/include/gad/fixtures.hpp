#pragma once

#include <string>
#include <vector>

#include "gad/io.hpp"

namespace gad::fixtures {

/// Ungradable diamond graph on v, v_i, v_ij (1 <= i < j <= 5).
GraphFile d1();
/// Gradable diamond graph with volume 11 and rank 5, graded 0..3.
GraphFile d2();
/// Chain graph on v, v_i, v_ij (1 <= i < j <= 4), e1, e2, e3 with H_2 = Z/2.
GraphFile ex13();
/// The 2-cycle v23 + v34 + v42 of ex13 as (vertex id, coefficient).
std::vector<std::pair<std::string, std::int64_t>> ex13_cycle();

/// Square v - a - w - b with grades 0, 1, 2, 1 and one negative edge.
GraphFile four_cycle();

/// Writes d1.json, d2.json and ex13.json into `dir` and returns the paths.
std::vector<std::string> write_all(const std::string& dir);

}  // namespace gad::fixtures
