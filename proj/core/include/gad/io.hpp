#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "gad/connection.hpp"
#include "gad/graph.hpp"
#include "gad/homology.hpp"
#include "gad/lie.hpp"
#include "gad/rep_matrix.hpp"

namespace gad {

using Json = nlohmann::ordered_json;

/// Graph interchange file. Grades and connection values are optional but
/// must be given for all vertices (resp. edges) or for none.
struct GraphFile {
  Graph graph;
  std::optional<Gradation> gradation;
  std::optional<Connection> connection;
};

/// Throws InputError (with the byte offset for syntax errors).
GraphFile parse_graph_json(const std::string& text);
GraphFile read_graph_file(const std::string& path);

Json graph_to_json(const Graph& g, const Gradation* grade = nullptr, const Connection* nu = nullptr);
Json graph_to_json(const GraphFile& f);

/// Vertices labeled "id:grade", edges labeled by nu when present.
std::string to_dot(const Graph& g, const Gradation* grade = nullptr, const Connection* nu = nullptr);

Json matrix_to_json(const RepMatrix& m);
/// Throws InputError.
RepMatrix matrix_from_json(const Json& j);
/// Aligned columns with row and column labels.
std::string format_matrix(const RepMatrix& m);

Json homology_to_json(const HomologyTable& h);
HomologyTable homology_from_json(const Json& j);
/// "Z^2 ⊕ Z/2" over the integers, "F7^3" or "Q^3" over a field.
std::string format_group(const AbelianGroup& g, const Coefficients& c);

/// One "H_k = group" line per nonzero degree, or "all groups vanish".
std::string format_homology(const HomologyTable& h, const std::string& symbol = "H_");

/// Structure-constants file. Throws InputError for unknown symbols or,
/// when `check_jacobi` is set, a Jacobi failure (naming the triple).
LieBasis parse_lie_json(const std::string& text, bool check_jacobi = true);
LieBasis read_lie_file(const std::string& path, bool check_jacobi = true);
Json lie_to_json(const LieBasis& lb);

std::string read_text_file(const std::string& path);
/// Throws InputError on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gad
