#include "gad/diamond.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include <boost/dynamic_bitset.hpp>

#include "gad/errors.hpp"

namespace gad {

namespace {

std::vector<std::size_t> common_neighbors(const Graph& g, std::size_t a, std::size_t c) {
  const auto& na = g.neighbors(a);
  const auto& nc = g.neighbors(c);
  std::vector<std::size_t> out;
  std::set_intersection(na.begin(), na.end(), nc.begin(), nc.end(), std::back_inserter(out));
  return out;
}

bool is_square(std::size_t r) {
  std::size_t s = 0;
  while (s * s < r) ++s;
  return s * s == r;
}

struct EdgeIndex {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  explicit EdgeIndex(const Graph& g) : edges(g.edges()) {
    for (std::size_t i = 0; i < edges.size(); ++i) index[edges[i]] = i;
  }
  std::size_t operator()(std::size_t a, std::size_t b) const {
    return index.at(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
  }
};

// Solves sum of bits over each row's edges = 1 (mod 2) with some bits fixed
// in advance. Returns false if inconsistent.
bool solve_gf2(std::size_t n_edges, const std::vector<std::array<std::size_t, 4>>& rows,
               std::vector<int>& bit) {
  // Unit propagation first: most constraints become forced.
  std::vector<std::vector<std::size_t>> rows_of(n_edges);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t e : rows[r]) rows_of[e].push_back(r);
  std::deque<std::size_t> queue;
  for (std::size_t r = 0; r < rows.size(); ++r) queue.push_back(r);
  while (!queue.empty()) {
    const std::size_t r = queue.front();
    queue.pop_front();
    int parity = 0, unknown = 0;
    std::size_t last = 0;
    for (std::size_t e : rows[r]) {
      if (bit[e] < 0) {
        ++unknown;
        last = e;
      } else {
        parity ^= bit[e];
      }
    }
    if (unknown == 0 && parity != 1) return false;
    if (unknown != 1) continue;
    bit[last] = 1 ^ parity;
    for (std::size_t r2 : rows_of[last]) queue.push_back(r2);
  }

  // Gauss-Jordan on whatever is left.
  std::vector<std::size_t> var_of;
  std::map<std::size_t, std::size_t> column;
  for (std::size_t e = 0; e < n_edges; ++e)
    if (bit[e] < 0) {
      column[e] = var_of.size();
      var_of.push_back(e);
    }
  if (var_of.empty()) return true;
  const std::size_t nv = var_of.size();
  std::vector<boost::dynamic_bitset<>> mat;
  for (const auto& row : rows) {
    boost::dynamic_bitset<> b(nv + 1);
    int parity = 0;
    bool any = false;
    for (std::size_t e : row) {
      if (bit[e] < 0) {
        b.flip(column.at(e));
        any = true;
      } else {
        parity ^= bit[e];
      }
    }
    if (!any) continue;
    if ((1 ^ parity) != 0) b.set(nv);
    mat.push_back(std::move(b));
  }
  std::vector<std::ptrdiff_t> pivot_row(nv, -1);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < nv && rank < mat.size(); ++c) {
    std::size_t p = rank;
    while (p < mat.size() && !mat[p].test(c)) ++p;
    if (p == mat.size()) continue;
    std::swap(mat[p], mat[rank]);
    for (std::size_t r = 0; r < mat.size(); ++r)
      if (r != rank && mat[r].test(c)) mat[r] ^= mat[rank];
    pivot_row[c] = static_cast<std::ptrdiff_t>(rank);
    ++rank;
  }
  for (std::size_t r = rank; r < mat.size(); ++r)
    if (mat[r].test(nv)) return false;
  // Free variables are 0, so each pivot takes its row's right-hand side.
  for (std::size_t c = 0; c < nv; ++c)
    bit[var_of[c]] = pivot_row[c] >= 0 ? static_cast<int>(mat[static_cast<std::size_t>(pivot_row[c])].test(nv)) : 0;
  return true;
}

}  // namespace

Diamond canonical_diamond(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  const std::array<std::size_t, 4> cyc{a, b, c, d};
  Diamond best{cyc};
  for (std::size_t r = 0; r < 4; ++r) {
    std::array<std::size_t, 4> fwd{}, bwd{};
    for (std::size_t i = 0; i < 4; ++i) {
      fwd[i] = cyc[(r + i) % 4];
      bwd[i] = cyc[(r + 4 - i) % 4];
    }
    best.v = std::min({best.v, fwd, bwd});
  }
  return best;
}

DiamondGraphCheck is_diamond_graph(const Graph& g) {
  DiamondGraphCheck out;
  for (std::size_t b = 0; b < g.size(); ++b) {
    const auto& nb = g.neighbors(b);
    for (std::size_t x = 0; x < nb.size(); ++x)
      for (std::size_t y = x + 1; y < nb.size(); ++y) {
        const std::size_t a = nb[x], c = nb[y];
        auto fail = [&](std::string why) {
          out.is_diamond = false;
          out.counterexample = std::array<std::size_t, 3>{a, b, c};
          out.reason = std::move(why);
        };
        if (g.adjacent(a, c)) {
          fail("triangle " + g.id(a) + " - " + g.id(b) + " - " + g.id(c));
          return out;
        }
        std::size_t count = 0;
        for (std::size_t d : common_neighbors(g, a, c))
          if (d != b && !g.adjacent(b, d)) ++count;
        if (count != 1) {
          fail("path " + g.id(a) + " - " + g.id(b) + " - " + g.id(c) + " has " + std::to_string(count) +
               " completing vertices");
          return out;
        }
      }
  }
  return out;
}

std::vector<Diamond> enumerate_diamonds(const Graph& g) {
  const auto check = is_diamond_graph(g);
  if (!check.is_diamond) throw DomainError("enumerate_diamonds: " + check.reason);
  std::set<Diamond> found;
  for (std::size_t b = 0; b < g.size(); ++b) {
    const auto& nb = g.neighbors(b);
    for (std::size_t x = 0; x < nb.size(); ++x)
      for (std::size_t y = x + 1; y < nb.size(); ++y)
        for (std::size_t d : common_neighbors(g, nb[x], nb[y]))
          if (d != b && !g.adjacent(b, d)) found.insert(canonical_diamond(nb[x], b, nb[y], d));
  }
  return {found.begin(), found.end()};
}

std::size_t diamond_rank(const Graph& g) {
  if (!g.connected()) throw InputError("diamond_rank: graph must be connected");
  if (g.size() <= 1) return 0;
  const std::size_t r = g.degree(0);
  for (std::size_t v = 1; v < g.size(); ++v)
    if (g.degree(v) != r)
      throw InvariantViolation("equal valence in a connected diamond graph",
                               g.id(0) + " has " + std::to_string(r) + " neighbours but " + g.id(v) + " has " +
                                   std::to_string(g.degree(v)));
  return r;
}

std::optional<std::string> signature_obstruction(const Graph& g) {
  const auto parts = is_gradable(g);
  if (!parts) return "graph is not gradable";
  for (const auto& dd : *parts) {
    if (dd.part1.size() + dd.part2.size() <= 1) continue;
    if (dd.part1.size() != dd.part2.size())
      return "distance components have sizes " + std::to_string(dd.part1.size()) + " and " +
             std::to_string(dd.part2.size());
    const std::size_t volume = dd.part1.size();
    const std::size_t rank = g.degree(dd.part1.front());
    for (std::size_t v : dd.part1)
      if (g.degree(v) != rank) return "valences differ within a component";
    for (std::size_t v : dd.part2)
      if (g.degree(v) != rank) return "valences differ within a component";
    if (volume % 2 == 1 && !is_square(rank))
      return "volume " + std::to_string(volume) + " is odd but rank " + std::to_string(rank) +
             " is not a perfect square";
  }
  return std::nullopt;
}

SignatureSearch search_signature(const Graph& g, std::size_t root) {
  SignatureSearch out;
  if (g.size() > 0 && root >= g.size()) throw InputError("search_signature: root out of range");
  const auto dg = is_diamond_graph(g);
  if (!dg.is_diamond) {
    out.failure = "not a diamond graph: " + dg.reason;
    return out;
  }
  if (!is_gradable(g)) {
    out.failure = "not gradable";
    return out;
  }
  const EdgeIndex ei(g);
  std::vector<int> bit(ei.edges.size(), -1);

  // Spanning forest, starting from `root` so different roots give
  // different (but equivalent) signatures.
  std::vector<char> seen(g.size(), 0);
  std::vector<std::size_t> starts;
  if (g.size() > 0) starts.push_back(root);
  for (std::size_t v = 0; v < g.size(); ++v) starts.push_back(v);
  for (std::size_t s : starts) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t w : g.neighbors(u))
        if (!seen[w]) {
          seen[w] = 1;
          bit[ei(u, w)] = 0;
          queue.push_back(w);
        }
    }
  }

  std::vector<std::array<std::size_t, 4>> rows;
  for (const auto& dm : enumerate_diamonds(g)) {
    const auto& v = dm.v;
    rows.push_back({ei(v[0], v[1]), ei(v[1], v[2]), ei(v[2], v[3]), ei(v[3], v[0])});
  }
  if (!solve_gf2(ei.edges.size(), rows, bit)) {
    out.failure = "diamond sign constraints are inconsistent";
    return out;
  }
  out.constraints_consistent = true;
  Connection nu;
  for (std::size_t e = 0; e < ei.edges.size(); ++e)
    nu.set(ei.edges[e].first, ei.edges[e].second, bit[e] == 1 ? -1 : 1);
  const auto check = check_signature(g, nu);
  if (!check.diamond_products)
    throw InvariantViolation("signature sign constraints", "solved signs violate a diamond product");
  out.deformable = check.deformable;
  if (!check.deformable) {
    out.failure = "diamond products are -1 but two-step sums do not vanish";
    return out;
  }
  out.signature = std::move(nu);
  return out;
}

std::optional<Connection> find_signature(const Graph& g, std::size_t root) {
  return search_signature(g, root).signature;
}

SignatureCheck check_signature(const Graph& g, const Connection& nu) {
  SignatureCheck out;
  if (!validate_connection(g, nu).valid) out.unit_values = false;
  for (auto [a, b] : g.edges())
    if (nu(a, b) != 1 && nu(a, b) != -1) out.unit_values = false;
  const auto dg = is_diamond_graph(g);
  if (dg.is_diamond) {
    for (const auto& dm : enumerate_diamonds(g)) {
      const auto& v = dm.v;
      if (nu(v[0], v[1]) * nu(v[1], v[2]) * nu(v[2], v[3]) * nu(v[3], v[0]) != -1) {
        out.diamond_products = false;
        break;
      }
    }
  } else {
    out.diamond_products = false;
  }
  out.deformable = is_deformable(g, nu).deformable;
  return out;
}

SignMap signatures_equivalent(const Graph& g, const Connection& s1, const Connection& s2) {
  auto e = connections_equivalent(g, s1, s2);
  if (!e)
    throw InvariantViolation("uniqueness of signatures up to equivalence",
                             "sign transport is inconsistent on some closed path");
  return *e;
}

ChainGraph assemble_gad(const Graph& g, const Gradation& grade) {
  const auto dg = is_diamond_graph(g);
  if (!dg.is_diamond) throw DomainError("assemble_gad: not a diamond graph (" + dg.reason + ")");
  if (!is_gradable(g)) throw DomainError("assemble_gad: not gradable");
  auto s = search_signature(g);
  if (!s.signature) throw DomainError("assemble_gad: no signature (" + s.failure + ")");
  return ChainGraph(GradedGraph(g, grade), std::move(*s.signature));
}

}  // namespace gad
