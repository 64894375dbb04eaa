#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gad/graph.hpp"

namespace gad {

/// Integer edge weights keyed by ordered vertex pairs. `set` writes both
/// orientations; `set_directed` exists so that asymmetric input read from
/// files can be represented and then rejected by validate_connection.
class Connection {
 public:
  void set(std::size_t a, std::size_t b, std::int64_t value);
  void set_directed(std::size_t a, std::size_t b, std::int64_t value);

  /// Zero for pairs never set.
  std::int64_t operator()(std::size_t a, std::size_t b) const;

  const std::map<std::pair<std::size_t, std::size_t>, std::int64_t>& entries() const noexcept {
    return values_;
  }

  friend bool operator==(const Connection&, const Connection&) = default;

 private:
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> values_;
};

/// The connection carried over to g.induced(vertices).
Connection induced(const Graph& g, const Connection& nu, const std::vector<std::size_t>& vertices);

/// Connection with the given constant value on every edge.
Connection constant_connection(const Graph& g, std::int64_t value);

struct ConnectionViolation {
  enum class Kind { asymmetric, zero_on_edge, nonzero_off_edge };
  Kind kind;
  std::size_t a;
  std::size_t b;
};

struct ConnectionCheck {
  bool valid = true;
  std::vector<ConnectionViolation> violations;
};

ConnectionCheck validate_connection(const Graph& g, const Connection& nu);

/// Vertex signs e with nu1(a,b) = e(a) e(b) nu2(a,b).
struct SignMap {
  std::vector<int> sign;

  int operator[](std::size_t v) const { return sign.at(v); }
  friend bool operator==(const SignMap&, const SignMap&) = default;
};

/// Applies a sign map: result(a,b) = e(a) e(b) nu(a,b).
Connection apply_signs(const Graph& g, const Connection& nu, const SignMap& e);

/// Spanning-tree sign propagation per component, verified on every edge.
std::optional<SignMap> connections_equivalent(const Graph& g, const Connection& a,
                                              const Connection& b);

/// Pairs (a, b) at distance two with a nonzero two-step sum.
struct DeformabilityCheck {
  bool deformable = true;
  std::vector<std::pair<std::size_t, std::size_t>> violations;
};

DeformabilityCheck is_deformable(const Graph& g, const Connection& nu);

/// Sum of squared weights at `v`.
std::int64_t vertex_rank(const Graph& g, const Connection& nu, std::size_t v);

/// Common vertex rank of a connected deformation graph. Throws
/// InvariantViolation if two vertices disagree.
std::int64_t graph_rank(const Graph& g, const Connection& nu);

}  // namespace gad
