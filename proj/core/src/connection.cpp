#include "gad/connection.hpp"

#include <deque>

#include "gad/errors.hpp"

namespace gad {

void Connection::set(std::size_t a, std::size_t b, std::int64_t value) {
  set_directed(a, b, value);
  set_directed(b, a, value);
}

void Connection::set_directed(std::size_t a, std::size_t b, std::int64_t value) {
  if (value == 0)
    values_.erase({a, b});
  else
    values_[{a, b}] = value;
}

std::int64_t Connection::operator()(std::size_t a, std::size_t b) const {
  auto it = values_.find({a, b});
  return it == values_.end() ? 0 : it->second;
}

Connection induced(const Graph& g, const Connection& nu, const std::vector<std::size_t>& vertices) {
  Connection out;
  for (std::size_t x = 0; x < vertices.size(); ++x)
    for (std::size_t y = x + 1; y < vertices.size(); ++y)
      if (g.adjacent(vertices[x], vertices[y])) {
        out.set_directed(x, y, nu(vertices[x], vertices[y]));
        out.set_directed(y, x, nu(vertices[y], vertices[x]));
      }
  return out;
}

Connection constant_connection(const Graph& g, std::int64_t value) {
  Connection nu;
  for (const auto& [a, b] : g.edges()) nu.set(a, b, value);
  return nu;
}

ConnectionCheck validate_connection(const Graph& g, const Connection& nu) {
  ConnectionCheck out;
  auto flag = [&](ConnectionViolation::Kind k, std::size_t a, std::size_t b) {
    out.valid = false;
    out.violations.push_back({k, a, b});
  };
  for (const auto& [key, value] : nu.entries()) {
    const auto [a, b] = key;
    if (a >= g.size() || b >= g.size() || a == b || !g.adjacent(a, b)) {
      flag(ConnectionViolation::Kind::nonzero_off_edge, a, b);
      continue;
    }
    if (a < b && nu(b, a) != value) flag(ConnectionViolation::Kind::asymmetric, a, b);
    if (a > b && nu(b, a) == 0) flag(ConnectionViolation::Kind::asymmetric, b, a);
  }
  for (const auto& [a, b] : g.edges())
    if (nu(a, b) == 0 && nu(b, a) == 0) flag(ConnectionViolation::Kind::zero_on_edge, a, b);
  return out;
}

Connection apply_signs(const Graph& g, const Connection& nu, const SignMap& e) {
  Connection out;
  for (const auto& [a, b] : g.edges()) out.set(a, b, e[a] * e[b] * nu(a, b));
  return out;
}

std::optional<SignMap> connections_equivalent(const Graph& g, const Connection& a,
                                              const Connection& b) {
  SignMap e{std::vector<int>(g.size(), 0)};
  for (const auto& comp : g.components()) {
    e.sign[comp.front()] = 1;
    std::deque<std::size_t> queue{comp.front()};
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t w : g.neighbors(v)) {
        if (e.sign[w] != 0) continue;
        const std::int64_t x = a(v, w), y = b(v, w);
        if (x == 0 || (x != y && x != -y)) return std::nullopt;
        e.sign[w] = e.sign[v] * (x == y ? 1 : -1);
        queue.push_back(w);
      }
    }
  }
  for (const auto& [u, v] : g.edges())
    if (a(u, v) != e[u] * e[v] * b(u, v)) return std::nullopt;
  return e;
}

DeformabilityCheck is_deformable(const Graph& g, const Connection& nu) {
  DeformabilityCheck out;
  for (std::size_t a = 0; a < g.size(); ++a) {
    std::map<std::size_t, std::int64_t> sums;
    for (std::size_t c : g.neighbors(a))
      for (std::size_t b : g.neighbors(c))
        if (b > a && !g.adjacent(a, b)) sums[b] += nu(a, c) * nu(c, b);
    for (const auto& [b, s] : sums)
      if (s != 0) {
        out.deformable = false;
        out.violations.emplace_back(a, b);
      }
  }
  return out;
}

std::int64_t vertex_rank(const Graph& g, const Connection& nu, std::size_t v) {
  std::int64_t r = 0;
  for (std::size_t w : g.neighbors(v)) r += nu(w, v) * nu(w, v);
  return r;
}

std::int64_t graph_rank(const Graph& g, const Connection& nu) {
  if (g.size() == 0) return 0;
  const std::int64_t r = vertex_rank(g, nu, 0);
  for (std::size_t v = 1; v < g.size(); ++v)
    if (vertex_rank(g, nu, v) != r)
      throw InvariantViolation("equal vertex ranks of a connected deformation graph",
                               "vertex '" + g.id(v) + "' has rank " +
                                   std::to_string(vertex_rank(g, nu, v)) + ", expected " +
                                   std::to_string(r));
  return r;
}

}  // namespace gad
