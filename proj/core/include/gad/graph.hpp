#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gad {

using VertexId = std::string;
using Grade = std::int64_t;

/// Finite simple graph with opaque string vertex ids. Vertices keep the
/// order in which they were listed; every algorithm that needs an order
/// uses that listed order.
class Graph {
 public:
  Graph() = default;

  /// Throws InputError on duplicate ids, self-loops or unknown endpoints.
  Graph(std::vector<VertexId> vertices, const std::vector<std::pair<VertexId, VertexId>>& edges);

  static Graph from_indices(std::vector<VertexId> vertices,
                            const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<VertexId>& ids() const noexcept { return ids_; }
  const VertexId& id(std::size_t v) const { return ids_.at(v); }

  /// Throws InputError for an unknown id.
  std::size_t index(const VertexId& id) const;
  std::optional<std::size_t> find(const VertexId& id) const;

  /// Sorted neighbour indices.
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_.at(v); }
  std::size_t degree(std::size_t v) const { return adj_.at(v).size(); }
  bool adjacent(std::size_t a, std::size_t b) const;

  std::size_t edge_count() const noexcept { return edge_count_; }
  /// All edges as (a, b) with a < b, in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  /// Connected components, each sorted; components ordered by smallest member.
  std::vector<std::vector<std::size_t>> components() const;
  bool connected() const { return components().size() <= 1; }

  /// Subgraph induced on `vertices` (in the given order).
  Graph induced(const std::vector<std::size_t>& vertices) const;

 private:
  void add_edge(std::size_t a, std::size_t b);

  std::vector<VertexId> ids_;
  std::unordered_map<VertexId, std::size_t> index_;
  std::vector<std::vector<std::size_t>> adj_;
  std::size_t edge_count_ = 0;
};

/// Integer label per vertex (indexed like the graph's vertices).
struct Gradation {
  std::vector<Grade> values;

  Grade operator[](std::size_t v) const { return values.at(v); }
  std::size_t size() const noexcept { return values.size(); }
  friend bool operator==(const Gradation&, const Gradation&) = default;
};

/// True iff every edge joins grades differing by exactly one.
bool is_valid_gradation(const Graph& g, const Gradation& grade);

/// A graph together with a valid gradation. The graph is shared, so
/// re-grading (lowering, lifting) is cheap.
class GradedGraph {
 public:
  /// Throws InputError if the gradation is invalid or has the wrong size.
  GradedGraph(std::shared_ptr<const Graph> graph, Gradation grade);
  GradedGraph(Graph graph, Gradation grade)
      : GradedGraph(std::make_shared<const Graph>(std::move(graph)), std::move(grade)) {}

  const Graph& graph() const noexcept { return *graph_; }
  const std::shared_ptr<const Graph>& shared_graph() const noexcept { return graph_; }
  const Gradation& gradation() const noexcept { return grade_; }
  Grade grade(std::size_t v) const { return grade_[v]; }

  GradedGraph with_gradation(Gradation grade) const { return {graph_, std::move(grade)}; }

 private:
  std::shared_ptr<const Graph> graph_;
  Gradation grade_;
};

/// Path length in edges; infinite when no path exists.
class Distance {
 public:
  static Distance infinite() { return Distance(); }
  static Distance finite(std::size_t d) { return Distance(d); }

  bool is_finite() const noexcept { return value_.has_value(); }
  /// Throws std::bad_optional_access when infinite.
  std::size_t value() const { return value_.value(); }

  friend bool operator==(const Distance&, const Distance&) = default;

 private:
  Distance() = default;
  explicit Distance(std::size_t d) : value_(d) {}
  std::optional<std::size_t> value_;
};

Distance distance(const Graph& g, std::size_t from, std::size_t to);
Distance distance(const Graph& g, const VertexId& from, const VertexId& to);

/// Breadth-first distances from `source`; nullopt marks unreachable vertices.
std::vector<std::optional<std::size_t>> distances_from(const Graph& g, std::size_t source);

/// The two distance components of one connected component. `part1` is
/// the part containing the component's lexicographically smallest id.
struct DistanceDecomposition {
  std::vector<std::size_t> part1;
  std::vector<std::size_t> part2;
};

/// One decomposition per connected component, or nullopt if any odd cycle exists.
std::optional<std::vector<DistanceDecomposition>> is_gradable(const Graph& g);

/// Grades in {0,1}: 0 on each component's part1, 1 on its part2.
/// Throws DomainError for an ungradable graph.
Gradation representation_gradation(const Graph& g);

/// Parity test: equivalent iff every difference is even. Throws InputError
/// if either gradation is invalid on g.
bool gradations_equivalent(const Graph& g, const Gradation& a, const Gradation& b);

bool is_top_vertex(const GradedGraph& gg, std::size_t v);
bool is_bottom_vertex(const GradedGraph& gg, std::size_t v);

/// Lower a top vertex by two. Throws DomainError if `v` is not top.
GradedGraph lower(const GradedGraph& gg, std::size_t v);
/// Lift a bottom vertex by two. Throws DomainError if `v` is not bottom.
GradedGraph lift(const GradedGraph& gg, std::size_t v);

struct GradingMove {
  enum class Kind { lower, lift };
  Kind kind;
  std::size_t vertex;
  friend bool operator==(const GradingMove&, const GradingMove&) = default;
};

struct Reduction {
  std::vector<GradingMove> moves;
  Gradation result;
};

/// Lower maximal vertices until every grade is at most 1, then lift minimal
/// vertices until every grade is 0 or 1. Ties go to the smallest vertex id.
Reduction reduce_to_representation(const GradedGraph& gg);

struct ExtremeVertices {
  std::vector<std::size_t> top;
  std::vector<std::size_t> bottom;
};

ExtremeVertices classify_extreme_vertices(const GradedGraph& gg);

struct DistanceGraphReport {
  /// Set when the graph has exactly one bottom vertex; it is the root of
  /// the positive distance structure.
  std::optional<std::size_t> positive_root;
  /// Set when the graph has exactly one top vertex.
  std::optional<std::size_t> negative_root;
  /// d(u, root) matched the grade difference for every u (per root found).
  bool distances_verified = true;
};

/// Throws InputError for a disconnected graph and InvariantViolation if a
/// unique bottom/top vertex exists but distances disagree with the grades.
DistanceGraphReport distance_graph_check(const GradedGraph& gg);

}  // namespace gad
