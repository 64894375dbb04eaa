#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gad/connection.hpp"
#include "gad/graph.hpp"
#include "gad/homology.hpp"

namespace gad {

/// Four vertices a, b, c, d with edges ab, bc, cd, da and non-edges ac, bd.
/// Stored in canonical form: the least of the eight rotations/reflections
/// by vertex index.
struct Diamond {
  std::array<std::size_t, 4> v{};
  friend bool operator==(const Diamond&, const Diamond&) = default;
  friend auto operator<=>(const Diamond&, const Diamond&) = default;
};

Diamond canonical_diamond(std::size_t a, std::size_t b, std::size_t c, std::size_t d);

struct DiamondGraphCheck {
  bool is_diamond = true;
  /// The first path a - b - c that fails (as vertex indices).
  std::optional<std::array<std::size_t, 3>> counterexample;
  std::string reason;
};

/// Every path a - b - c (a != c) must have a non-edge ac and exactly one
/// completing vertex d with edges cd, da and non-edge bd.
DiamondGraphCheck is_diamond_graph(const Graph& g);

/// Each diamond once, sorted. Throws DomainError for a non-diamond graph.
std::vector<Diamond> enumerate_diamonds(const Graph& g);

/// Common valence of a connected diamond graph (0 for a single vertex).
/// Throws InputError for a disconnected graph and InvariantViolation if
/// two vertices disagree.
std::size_t diamond_rank(const Graph& g);

/// Reason a gradable graph cannot carry a deformable connection, judged
/// from sizes alone: unequal distance components, or odd volume with a
/// rank that is not a perfect square.
std::optional<std::string> signature_obstruction(const Graph& g);

struct SignatureSearch {
  std::optional<Connection> signature;
  /// The per-diamond product constraints had a solution.
  bool constraints_consistent = false;
  /// The solution passed the full two-step sum check.
  bool deformable = false;
  std::string failure;
};

/// Spanning-tree edges are fixed to +1 (the tree is grown from `root` in its
/// component), then the non-tree edges are solved over GF(2) so that each
/// diamond's sign product is -1. The result is verified for deformability.
SignatureSearch search_signature(const Graph& g, std::size_t root = 0);
std::optional<Connection> find_signature(const Graph& g, std::size_t root = 0);

/// Values are +-1 on edges, every diamond multiplies to -1, and the
/// connection is deformable; each condition is checked separately.
struct SignatureCheck {
  bool unit_values = true;
  bool diamond_products = true;
  bool deformable = true;
  bool ok() const { return unit_values && diamond_products && deformable; }
};

SignatureCheck check_signature(const Graph& g, const Connection& nu);

/// Sign map e with s1(a,b) = e(a) e(b) s2(a,b), by path transport from the
/// smallest vertex of each component. Throws InvariantViolation if
/// transport is inconsistent.
SignMap signatures_equivalent(const Graph& g, const Connection& s1, const Connection& s2);

/// The gradation paired with a signature. Throws DomainError naming the
/// failing stage ("not a diamond graph", "not gradable", "no signature").
ChainGraph assemble_gad(const Graph& g, const Gradation& grade);

}  // namespace gad
