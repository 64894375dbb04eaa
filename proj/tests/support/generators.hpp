#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "gad/connection.hpp"
#include "gad/graph.hpp"
#include "gad/homology.hpp"
#include "gad/matrix.hpp"

namespace gad::testing {

using Rng = std::mt19937_64;

/// GAD_TEST_SEED overrides the fixed default.
inline std::uint64_t test_seed() {
  if (const char* s = std::getenv("GAD_TEST_SEED"); s && *s) return std::strtoull(s, nullptr, 10);
  return 20240601;
}

inline Rng make_rng(std::uint64_t salt = 0) { return Rng(test_seed() * 1000003 + salt); }

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline std::int64_t nonzero(Rng& rng, std::int64_t max_abs) {
  const std::int64_t x = uniform(rng, 1, max_abs);
  return coin(rng) ? x : -x;
}

inline std::vector<VertexId> names(const std::string& prefix, std::size_t n) {
  std::vector<VertexId> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

/// Erdos-Renyi graph with ids x0, x1, ...
inline Graph random_graph(Rng& rng, std::size_t n, double p) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (coin(rng, p)) edges.emplace_back(a, b);
  return Graph::from_indices(names("x", n), edges);
}

/// Random graph whose edges only join the two halves of a random split,
/// so it is always gradable. Vertex order is shuffled.
inline Graph random_bipartite(Rng& rng, std::size_t n, double p) {
  std::vector<int> side(n);
  for (auto& s : side) s = coin(rng) ? 1 : 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (side[a] != side[b] && coin(rng, p)) edges.emplace_back(a, b);
  return Graph::from_indices(names("x", n), edges);
}

inline Connection random_connection(Rng& rng, const Graph& g, std::int64_t max_abs) {
  Connection nu;
  for (auto [a, b] : g.edges()) nu.set(a, b, nonzero(rng, max_abs));
  return nu;
}

inline SignMap random_signs(Rng& rng, std::size_t n) {
  SignMap e;
  for (std::size_t i = 0; i < n; ++i) e.sign.push_back(coin(rng) ? 1 : -1);
  return e;
}

/// Square integer matrix M with M M^T = M^T M = r E, drawn from a few
/// families and scrambled by signed row and column permutations.
inline IntMatrix random_orthogonal(Rng& rng, std::size_t dim) {
  IntMatrix m(dim, dim);
  switch (dim) {
    case 1:
      m(0, 0) = nonzero(rng, 3);
      break;
    case 2: {
      std::int64_t a = 0, b = 0;
      while (a == 0 && b == 0) {
        a = uniform(rng, -2, 2);
        b = uniform(rng, -2, 2);
      }
      m(0, 0) = a, m(0, 1) = b, m(1, 0) = -b, m(1, 1) = a;
      break;
    }
    case 3: {
      const std::int64_t rows[3][3] = {{1, 2, 2}, {2, 1, -2}, {2, -2, 1}};
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = rows[i][j];
      break;
    }
    default: {
      std::int64_t q[4] = {0, 0, 0, 0};
      while (std::all_of(q, q + 4, [](std::int64_t x) { return x == 0; }))
        for (auto& x : q) x = uniform(rng, -1, 1);
      const auto [a, b, c, d] = q;
      const std::int64_t rows[4][4] = {{a, b, c, d}, {-b, a, -d, c}, {-c, d, a, -b}, {-d, -c, b, a}};
      m = IntMatrix(4, 4);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = rows[i][j];
      dim = 4;
      break;
    }
  }
  std::vector<std::size_t> rp(dim), cp(dim);
  std::iota(rp.begin(), rp.end(), std::size_t{0});
  std::iota(cp.begin(), cp.end(), std::size_t{0});
  std::shuffle(rp.begin(), rp.end(), rng);
  std::shuffle(cp.begin(), cp.end(), rng);
  const SignMap rs = random_signs(rng, dim), cs = random_signs(rng, dim);
  IntMatrix out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) out(i, j) = rs[i] * cs[j] * m(rp[i], cp[j]);
  return out;
}

struct DeformationSample {
  Graph graph;
  Connection nu;
  Gradation grade;  // rows at 0, columns at 1
};

/// Bipartite graph of a matrix: row i is "<prefix>r<i>", column j is
/// "<prefix>c<j>", with an edge weighted m(i, j) wherever it is nonzero.
/// Vertex order interleaves rows and columns.
inline DeformationSample matrix_graph(const IntMatrix& m, const std::string& prefix = "") {
  std::vector<VertexId> ids;
  std::vector<std::size_t> row_at(m.rows()), col_at(m.cols());
  DeformationSample s;
  for (std::size_t k = 0; k < std::max(m.rows(), m.cols()); ++k) {
    if (k < m.cols()) {
      col_at[k] = ids.size();
      ids.push_back(prefix + "c" + std::to_string(k));
      s.grade.values.push_back(1);
    }
    if (k < m.rows()) {
      row_at[k] = ids.size();
      ids.push_back(prefix + "r" + std::to_string(k));
      s.grade.values.push_back(0);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) edges.emplace_back(row_at[i], col_at[j]);
  s.graph = Graph::from_indices(ids, edges);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) s.nu.set(row_at[i], col_at[j], m(i, j));
  return s;
}

/// Connected deformation graph with at most `max_vertices` vertices
/// (at least 2). A single vertex is produced with probability 1/10.
inline DeformationSample random_deformation_graph(Rng& rng, std::size_t max_vertices, const std::string& prefix = "") {
  if (coin(rng, 0.1)) {
    DeformationSample s;
    s.graph = Graph({prefix + "r0"}, {});
    s.grade.values = {0};
    return s;
  }
  const std::size_t max_dim = std::min<std::size_t>(4, max_vertices / 2);
  for (;;) {
    const auto dim = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_dim)));
    DeformationSample s = matrix_graph(random_orthogonal(rng, dim), prefix);
    if (s.graph.size() <= max_vertices && s.graph.connected()) return s;
  }
}

/// Block sum of random deformation graphs and isolated vertices: gradable,
/// and deformable, so every gradation satisfies the chain condition.
inline DeformationSample random_deformable_sum(Rng& rng, std::size_t max_vertices) {
  std::vector<IntMatrix> blocks;
  std::size_t used = 0;
  std::size_t singles = 0;
  while (used < max_vertices) {
    if (coin(rng, 0.2)) {
      ++singles;
      ++used;
      continue;
    }
    const auto dim = static_cast<std::size_t>(uniform(rng, 1, 4));
    if (used + 2 * dim > max_vertices) break;
    blocks.push_back(random_orthogonal(rng, dim));
    used += 2 * blocks.back().rows();
  }
  std::size_t rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  IntMatrix m(rows, rows);
  std::size_t at = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(at + i, at + j) = b(i, j);
    at += b.rows();
  }
  DeformationSample s = matrix_graph(m);
  std::vector<VertexId> ids = s.graph.ids();
  const auto edges = s.graph.edges();
  for (std::size_t i = 0; i < singles; ++i) {
    ids.push_back("s" + std::to_string(i));
    s.grade.values.push_back(0);
  }
  Connection nu = s.nu;
  s.graph = Graph::from_indices(ids, edges);
  s.nu = nu;
  return s;
}

/// Random walk of lowering and lifting moves from `start`, accepting only
/// moves after which (G, grade, nu) is still a chain graph.
inline Gradation random_chain_gradation(Rng& rng, const Graph& g, const Connection& nu, Gradation start,
                                        std::size_t steps) {
  auto shared = std::make_shared<const Graph>(g);
  GradedGraph gg(shared, std::move(start));
  for (std::size_t s = 0; s < steps; ++s) {
    const auto ext = classify_extreme_vertices(gg);
    const bool down = coin(rng);
    const auto& pool = down ? ext.top : ext.bottom;
    if (pool.empty()) continue;
    const std::size_t v = pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(pool.size()) - 1))];
    GradedGraph next = down ? lower(gg, v) : lift(gg, v);
    if (is_chain_graph(next, nu).valid) gg = std::move(next);
  }
  return gg.gradation();
}

}  // namespace gad::testing
