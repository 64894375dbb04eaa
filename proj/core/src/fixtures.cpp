#include "gad/fixtures.hpp"

#include <filesystem>
#include <map>

#include "gad/errors.hpp"

namespace gad::fixtures {

namespace {

struct Builder {
  std::vector<VertexId> ids;
  std::vector<Grade> grades;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<std::int64_t> nu;

  void vertex(const std::string& id, Grade g) {
    ids.push_back(id);
    grades.push_back(g);
  }
  void edge(const std::string& a, const std::string& b, std::int64_t w = 1) {
    edges.emplace_back(a, b);
    nu.push_back(w);
  }
  GraphFile build(bool graded, bool weighted) const {
    GraphFile f;
    f.graph = Graph(ids, edges);
    if (graded) f.gradation = Gradation{grades};
    if (weighted) {
      Connection c;
      for (std::size_t i = 0; i < edges.size(); ++i)
        c.set(f.graph.index(edges[i].first), f.graph.index(edges[i].second), nu[i]);
      f.connection = std::move(c);
    }
    return f;
  }
};

std::string vi(int i) { return "v" + std::to_string(i); }
std::string vij(int i, int j) { return i < j ? "v" + std::to_string(i) + std::to_string(j) : vij(j, i); }

void star_and_pairs(Builder& b, int k) {
  b.vertex("v", 0);
  for (int i = 1; i <= k; ++i) b.vertex(vi(i), 1);
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) b.vertex(vij(i, j), 2);
  for (int i = 1; i <= k; ++i) b.edge("v", vi(i));
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      b.edge(vi(i), vij(i, j));
      b.edge(vi(j), vij(i, j));
    }
}

}  // namespace

GraphFile d1() {
  Builder b;
  star_and_pairs(b, 5);
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j)
      for (int s = 1; s <= 5; ++s)
        for (int t = s + 1; t <= 5; ++t)
          if (s != i && s != j && t != i && t != j && vij(i, j) < vij(s, t)) b.edge(vij(i, j), vij(s, t));
  return b.build(false, false);
}

GraphFile d2() {
  Builder b;
  star_and_pairs(b, 5);
  for (int k = 1; k <= 6; ++k) b.vertex("u" + std::to_string(k), 3);
  const int cycles[6][5][2] = {
      {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}}, {{1, 2}, {2, 4}, {4, 5}, {5, 3}, {3, 1}},
      {{1, 2}, {2, 5}, {5, 3}, {3, 4}, {4, 1}}, {{3, 2}, {2, 4}, {4, 1}, {1, 5}, {5, 3}},
      {{3, 2}, {2, 5}, {5, 4}, {4, 1}, {1, 3}}, {{4, 2}, {2, 5}, {5, 1}, {1, 3}, {3, 4}},
  };
  for (int k = 0; k < 6; ++k)
    for (const auto& e : cycles[k]) b.edge("u" + std::to_string(k + 1), vij(e[0], e[1]));
  return b.build(true, false);
}

GraphFile ex13() {
  Builder b;
  b.vertex("v", 0);
  for (int i = 1; i <= 4; ++i) b.vertex(vi(i), 1);
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) b.vertex(vij(i, j), 2);
  for (int k = 1; k <= 3; ++k) b.vertex("e" + std::to_string(k), 3);
  for (int i = 1; i <= 4; ++i) b.edge(vi(i), "v", 1);
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      b.edge(vij(i, j), vi(i), 1);
      b.edge(vij(i, j), vi(j), -1);
    }
  // Each boundary lists v_{a,b}; v_{b,a} = -v_{a,b}.
  const int terms[3][4][2] = {
      {{1, 2}, {2, 3}, {3, 4}, {4, 1}},
      {{1, 3}, {3, 4}, {4, 2}, {2, 1}},
      {{1, 4}, {4, 2}, {2, 3}, {3, 1}},
  };
  for (int k = 0; k < 3; ++k)
    for (const auto& t : terms[k]) b.edge("e" + std::to_string(k + 1), vij(t[0], t[1]), t[0] < t[1] ? 1 : -1);
  return b.build(true, true);
}

std::vector<std::pair<std::string, std::int64_t>> ex13_cycle() { return {{"v23", 1}, {"v34", 1}, {"v24", -1}}; }

GraphFile four_cycle() {
  Builder b;
  b.vertex("v", 0);
  b.vertex("a", 1);
  b.vertex("w", 2);
  b.vertex("b", 1);
  b.edge("v", "a", 1);
  b.edge("a", "w", 1);
  b.edge("w", "b", 1);
  b.edge("b", "v", -1);
  return b.build(true, true);
}

std::vector<std::string> write_all(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create " + dir + ": " + ec.message());
  std::vector<std::string> paths;
  const std::pair<const char*, GraphFile> files[] = {{"d1.json", d1()}, {"d2.json", d2()}, {"ex13.json", ex13()}};
  for (const auto& [name, f] : files) {
    const std::string path = (std::filesystem::path(dir) / name).string();
    write_text_file(path, graph_to_json(f).dump(2) + "\n");
    paths.push_back(path);
  }
  return paths;
}

}  // namespace gad::fixtures
