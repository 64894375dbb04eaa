#include "gad/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "gad/errors.hpp"

namespace gad {

Graph::Graph(std::vector<VertexId> vertices,
             const std::vector<std::pair<VertexId, VertexId>>& edges)
    : ids_(std::move(vertices)), adj_(ids_.size()) {
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (!index_.emplace(ids_[i], i).second)
      throw InputError("duplicate vertex id '" + ids_[i] + "'");
  for (const auto& [u, v] : edges) add_edge(index(u), index(v));
  for (auto& n : adj_) std::sort(n.begin(), n.end());
}

Graph Graph::from_indices(std::vector<VertexId> vertices,
                          const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Graph g;
  g.ids_ = std::move(vertices);
  g.adj_.resize(g.ids_.size());
  g.index_.reserve(g.ids_.size());
  for (std::size_t i = 0; i < g.ids_.size(); ++i)
    if (!g.index_.emplace(g.ids_[i], i).second)
      throw InputError("duplicate vertex id '" + g.ids_[i] + "'");
  for (const auto& [a, b] : edges) {
    if (a >= g.size() || b >= g.size()) throw InputError("edge endpoint out of range");
    g.add_edge(a, b);
  }
  for (auto& n : g.adj_) std::sort(n.begin(), n.end());
  return g;
}

void Graph::add_edge(std::size_t a, std::size_t b) {
  if (a == b) throw InputError("self-loop at vertex '" + ids_[a] + "'");
  auto& na = adj_[a];
  if (std::find(na.begin(), na.end(), b) != na.end()) return;  // repeated edge
  na.push_back(b);
  adj_[b].push_back(a);
  ++edge_count_;
}

std::size_t Graph::index(const VertexId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw InputError("unknown vertex id '" + id + "'");
  return it->second;
}

std::optional<std::size_t> Graph::find(const VertexId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Graph::adjacent(std::size_t a, std::size_t b) const {
  const auto& n = adj_.at(a);
  return std::binary_search(n.begin(), n.end(), b);
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(edge_count_);
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b : adj_[a])
      if (a < b) out.emplace_back(a, b);
  return out;
}

std::vector<std::vector<std::size_t>> Graph::components() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(size(), false);
  for (std::size_t s = 0; s < size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = true;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (std::size_t w : adj_[comp[head]])
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

Graph Graph::induced(const std::vector<std::size_t>& vertices) const {
  std::vector<VertexId> ids;
  ids.reserve(vertices.size());
  std::unordered_map<std::size_t, std::size_t> local;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    ids.push_back(ids_.at(vertices[i]));
    local.emplace(vertices[i], i);
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t w : adj_[vertices[i]]) {
      auto it = local.find(w);
      if (it != local.end() && i < it->second) edges.emplace_back(i, it->second);
    }
  return from_indices(std::move(ids), edges);
}

bool is_valid_gradation(const Graph& g, const Gradation& grade) {
  if (grade.size() != g.size()) return false;
  for (const auto& [a, b] : g.edges()) {
    const Grade diff = grade[a] - grade[b];
    if (diff != 1 && diff != -1) return false;
  }
  return true;
}

GradedGraph::GradedGraph(std::shared_ptr<const Graph> graph, Gradation grade)
    : graph_(std::move(graph)), grade_(std::move(grade)) {
  if (!graph_) throw InputError("graded graph without a graph");
  if (grade_.size() != graph_->size())
    throw InputError("gradation size does not match the vertex count");
  if (!is_valid_gradation(*graph_, grade_))
    throw InputError("gradation differs by other than 1 across an edge");
}

std::vector<std::optional<std::size_t>> distances_from(const Graph& g, std::size_t source) {
  std::vector<std::optional<std::size_t>> dist(g.size());
  dist.at(source) = 0;
  std::deque<std::size_t> queue{source};
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : g.neighbors(v))
      if (!dist[w]) {
        dist[w] = *dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

Distance distance(const Graph& g, std::size_t from, std::size_t to) {
  if (from >= g.size() || to >= g.size()) throw InputError("distance: vertex index out of range");
  const auto d = distances_from(g, from)[to];
  return d ? Distance::finite(*d) : Distance::infinite();
}

Distance distance(const Graph& g, const VertexId& from, const VertexId& to) {
  return distance(g, g.index(from), g.index(to));
}

std::optional<std::vector<DistanceDecomposition>> is_gradable(const Graph& g) {
  std::vector<DistanceDecomposition> out;
  std::vector<int> side(g.size(), -1);
  for (const auto& comp : g.components()) {
    // Root the 2-colouring at the lexicographically smallest id so that
    // part1 always holds it.
    const std::size_t root = *std::min_element(
        comp.begin(), comp.end(), [&](std::size_t a, std::size_t b) { return g.id(a) < g.id(b); });
    side[root] = 0;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t w : g.neighbors(v)) {
        if (side[w] < 0) {
          side[w] = 1 - side[v];
          queue.push_back(w);
        } else if (side[w] == side[v]) {
          return std::nullopt;
        }
      }
    }
    DistanceDecomposition dd;
    for (std::size_t v : comp) (side[v] == 0 ? dd.part1 : dd.part2).push_back(v);
    out.push_back(std::move(dd));
  }
  return out;
}

Gradation representation_gradation(const Graph& g) {
  const auto parts = is_gradable(g);
  if (!parts) throw DomainError("graph is not gradable (it contains an odd cycle)");
  Gradation grade{std::vector<Grade>(g.size(), 0)};
  for (const auto& dd : *parts)
    for (std::size_t v : dd.part2) grade.values[v] = 1;
  return grade;
}

bool gradations_equivalent(const Graph& g, const Gradation& a, const Gradation& b) {
  if (!is_valid_gradation(g, a) || !is_valid_gradation(g, b))
    throw InputError("gradations_equivalent: invalid gradation");
  for (std::size_t v = 0; v < g.size(); ++v)
    if ((a[v] - b[v]) % 2 != 0) return false;
  return true;
}

bool is_top_vertex(const GradedGraph& gg, std::size_t v) {
  for (std::size_t w : gg.graph().neighbors(v))
    if (gg.grade(w) != gg.grade(v) - 1) return false;
  return true;
}

bool is_bottom_vertex(const GradedGraph& gg, std::size_t v) {
  for (std::size_t w : gg.graph().neighbors(v))
    if (gg.grade(w) != gg.grade(v) + 1) return false;
  return true;
}

GradedGraph lower(const GradedGraph& gg, std::size_t v) {
  if (v >= gg.graph().size()) throw InputError("lower: vertex index out of range");
  if (!is_top_vertex(gg, v))
    throw DomainError("cannot lower '" + gg.graph().id(v) + "': not a top vertex");
  Gradation g = gg.gradation();
  g.values[v] -= 2;
  return gg.with_gradation(std::move(g));
}

GradedGraph lift(const GradedGraph& gg, std::size_t v) {
  if (v >= gg.graph().size()) throw InputError("lift: vertex index out of range");
  if (!is_bottom_vertex(gg, v))
    throw DomainError("cannot lift '" + gg.graph().id(v) + "': not a bottom vertex");
  Gradation g = gg.gradation();
  g.values[v] += 2;
  return gg.with_gradation(std::move(g));
}

Reduction reduce_to_representation(const GradedGraph& gg) {
  const Graph& g = gg.graph();
  Reduction out;
  GradedGraph cur = gg;
  auto pick = [&](bool want_max) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (!best) {
        best = v;
        continue;
      }
      const Grade gv = cur.grade(v), gb = cur.grade(*best);
      const bool better = want_max ? gv > gb : gv < gb;
      if (better || (gv == gb && g.id(v) < g.id(*best))) best = v;
    }
    return best;
  };
  while (g.size() > 0) {
    const std::size_t v = *pick(true);
    if (cur.grade(v) <= 1) break;
    cur = lower(cur, v);
    out.moves.push_back({GradingMove::Kind::lower, v});
  }
  while (g.size() > 0) {
    const std::size_t v = *pick(false);
    if (cur.grade(v) >= 0) break;
    cur = lift(cur, v);
    out.moves.push_back({GradingMove::Kind::lift, v});
  }
  out.result = cur.gradation();
  return out;
}

ExtremeVertices classify_extreme_vertices(const GradedGraph& gg) {
  ExtremeVertices out;
  for (std::size_t v = 0; v < gg.graph().size(); ++v) {
    if (is_top_vertex(gg, v)) out.top.push_back(v);
    if (is_bottom_vertex(gg, v)) out.bottom.push_back(v);
  }
  return out;
}

DistanceGraphReport distance_graph_check(const GradedGraph& gg) {
  const Graph& g = gg.graph();
  if (!g.connected()) throw InputError("distance_graph_check: graph is not connected");
  const auto ext = classify_extreme_vertices(gg);
  DistanceGraphReport report;
  auto verify = [&](std::size_t root, int direction) {
    const auto dist = distances_from(g, root);
    for (std::size_t u = 0; u < g.size(); ++u) {
      const Grade expected = direction * (gg.grade(u) - gg.grade(root));
      if (expected < 0 || !dist[u] || static_cast<Grade>(*dist[u]) != expected) {
        report.distances_verified = false;
        throw InvariantViolation("distance graph theorem",
                                 "d(" + g.id(u) + ", " + g.id(root) +
                                     ") disagrees with the grade difference");
      }
    }
  };
  if (ext.bottom.size() == 1) {
    report.positive_root = ext.bottom.front();
    verify(ext.bottom.front(), +1);
  }
  if (ext.top.size() == 1) {
    report.negative_root = ext.top.front();
    verify(ext.top.front(), -1);
  }
  return report;
}

}  // namespace gad
