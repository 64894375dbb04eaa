#include "gad/lie.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <unordered_map>

#include "gad/errors.hpp"
#include "gad/parallel.hpp"

namespace gad {

namespace {

void add_term(LieElement& e, std::size_t k, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = e.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}

LieElement scaled(const LieElement& e, std::int64_t c) {
  LieElement out;
  if (c == 0) return out;
  for (auto [k, v] : e) out.emplace(k, v * c);
  return out;
}

std::optional<std::pair<std::size_t, int>> as_unit(const LieElement& e) {
  if (e.size() != 1) return std::nullopt;
  auto [k, c] = *e.begin();
  if (c != 1 && c != -1) return std::nullopt;
  return std::make_pair(k, static_cast<int>(c));
}

std::string describe(const LieBasis& lb, const LieElement& e) {
  if (e.empty()) return "0";
  std::string out;
  for (auto [k, c] : e) {
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    const std::int64_t a = c < 0 ? -c : c;
    if (a != 1) out += std::to_string(a) + "*";
    out += lb.symbol(k);
  }
  return out;
}

}  // namespace

LieBasis::LieBasis(std::vector<std::string> symbols,
                   const std::map<std::pair<std::size_t, std::size_t>, std::vector<BracketTerm>>& brackets)
    : symbols_(std::move(symbols)) {
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw InputError("LieBasis: empty symbol name");
    if (!seen.insert(s).second) throw InputError("LieBasis: duplicate symbol " + s);
  }
  const std::size_t n = symbols_.size();
  for (const auto& [key, terms] : brackets) {
    auto [i, j] = key;
    if (i >= n || j >= n) throw InputError("LieBasis: bracket index out of range");
    LieElement e;
    for (const auto& t : terms) {
      if (t.symbol >= n) throw InputError("LieBasis: bracket term index out of range");
      add_term(e, t.symbol, t.coeff);
    }
    if (i == j) {
      if (!e.empty()) throw InputError("LieBasis: nonzero bracket [" + symbols_[i] + "," + symbols_[i] + "]");
      continue;
    }
    if (i > j) {
      std::swap(i, j);
      e = scaled(e, -1);
    }
    if (table_.count({i, j})) throw InputError("LieBasis: bracket of " + symbols_[i] + ", " + symbols_[j] + " given twice");
    if (!e.empty()) table_.emplace(std::make_pair(i, j), std::move(e));
  }
}

std::optional<std::size_t> LieBasis::find(const std::string& name) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), name);
  if (it == symbols_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - symbols_.begin());
}

LieElement LieBasis::bracket(std::size_t i, std::size_t j) const {
  if (i == j) return {};
  const bool flip = i > j;
  auto it = table_.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
  if (it == table_.end()) return {};
  return flip ? scaled(it->second, -1) : it->second;
}

LieElement LieBasis::bracket(const LieElement& x, const LieElement& y) const {
  LieElement out;
  for (auto [i, a] : x)
    for (auto [j, b] : y)
      for (auto [k, c] : bracket(i, j)) add_term(out, k, a * b * c);
  return out;
}

std::size_t type_a_index(std::size_t i, std::size_t j) {
  if (i >= j) throw InputError("type_a_index: need i < j");
  return (j - 1) * j / 2 + (j - 1 - i);
}

LieBasis type_a(std::size_t n) {
  const std::size_t count = n * (n + 1) / 2;
  std::vector<std::string> names(count);
  std::vector<std::pair<std::size_t, std::size_t>> ends(count);
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = j; i-- > 0;) {
      const std::size_t k = type_a_index(i, j);
      names[k] = n < 10 ? "e" + std::to_string(i) + std::to_string(j)
                        : "e" + std::to_string(i) + "," + std::to_string(j);
      ends[k] = {i, j};
    }
  std::map<std::pair<std::size_t, std::size_t>, std::vector<BracketTerm>> table;
  for (std::size_t p = 0; p < count; ++p)
    for (std::size_t q = p + 1; q < count; ++q) {
      auto [i, j] = ends[p];
      auto [k, l] = ends[q];
      if (j == k) table[{p, q}] = {{1, type_a_index(i, l)}};
      else if (i == l) table[{p, q}] = {{-1, type_a_index(k, j)}};
    }
  return LieBasis(std::move(names), table);
}

JacobiCheck validate_lie(const LieBasis& lb) {
  const std::size_t n = lb.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const LieElement x{{i, 1}}, y{{j, 1}}, z{{k, 1}};
        LieElement sum = lb.bracket(lb.bracket(x, y), z);
        for (auto [s, c] : lb.bracket(lb.bracket(y, z), x)) add_term(sum, s, c);
        for (auto [s, c] : lb.bracket(lb.bracket(z, x), y)) add_term(sum, s, c);
        if (!sum.empty()) return {false, std::array<std::size_t, 3>{i, j, k}};
      }
  return {};
}

std::optional<std::pair<std::size_t, int>> unit_bracket(const LieBasis& lb, std::size_t a, std::size_t b) {
  return as_unit(lb.bracket(a, b));
}

bool adjacent(const LieBasis& lb, std::size_t a, std::size_t b, std::size_t c) {
  if (a == b || b == c || a == c) return false;
  const auto ab = unit_bracket(lb, a, b);
  const auto bc = unit_bracket(lb, b, c);
  if (!ab || !bc || !lb.bracket(a, c).empty() || ab->first == bc->first) return false;
  const LieElement l = scaled(lb.bracket(ab->first, c), ab->second);
  const LieElement r = scaled(lb.bracket(a, bc->first), bc->second);
  const auto lu = as_unit(l);
  const auto ru = as_unit(r);
  return lu && ru && lu->first == ru->first;
}

RootSystemCheck is_diamond_root_system(const LieBasis& lb) {
  RootSystemCheck out;
  const std::size_t n = lb.size();
  auto fail = [&](int axiom, std::string detail) {
    out.ok = false;
    out.failed_axiom = axiom;
    out.detail = std::move(detail);
    return out;
  };
  // Axiom 1 holds by construction: symbols are distinct names, so no
  // symbol is the negative of another.

  for (const auto& [key, e] : lb.table()) {
    const auto u = as_unit(e);
    if (!u || u->first == key.first || u->first == key.second)
      return fail(2, "[" + lb.symbol(key.first) + "," + lb.symbol(key.second) + "] = " + describe(lb, e));
  }

  // Axiom 3: whenever [a,b] and [b,c] are signed symbols and [a,c] = 0, the
  // two bracketings of a,b,c agree and are zero or a signed symbol, and
  // [a,b] != +-[b,c].
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t a = 0; a < n; ++a) {
      if (a == b) continue;
      const auto ab = unit_bracket(lb, a, b);
      if (!ab) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        const auto bc = unit_bracket(lb, b, c);
        if (!bc || !lb.bracket(a, c).empty()) continue;
        const std::string triple = lb.symbol(a) + ", " + lb.symbol(b) + ", " + lb.symbol(c);
        if (ab->first == bc->first) return fail(3, "[a,b] = +-[b,c] for " + triple);
        const LieElement l = scaled(lb.bracket(ab->first, c), ab->second);
        const LieElement r = scaled(lb.bracket(a, bc->first), bc->second);
        const bool l_ok = l.empty() || as_unit(l);
        const bool same = (l.empty() && r.empty()) ||
                          (as_unit(l) && as_unit(r) && as_unit(l)->first == as_unit(r)->first);
        if (!l_ok || !same)
          return fail(3, "[[a,b],c] = " + describe(lb, l) + " and [a,[b,c]] = " + describe(lb, r) + " for " + triple);
      }
    }

  // Axiom 4: for each pair of brackets with a common signed value and four
  // distinct arguments, some ordering factors through an adjacent triple
  // and eta is not the head of an adjacent triple bracketing to xi.
  std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> by_value;
  for (const auto& [key, e] : lb.table()) by_value[as_unit(e)->first].push_back(key);
  auto head_of_bracket = [&](std::size_t eta, std::size_t xi) {
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const auto bc = unit_bracket(lb, b, c);
        if (bc && bc->first == xi && adjacent(lb, eta, b, c)) return true;
      }
    return false;
  };
  for (const auto& [value, pairs] : by_value)
    for (std::size_t x = 0; x < pairs.size(); ++x)
      for (std::size_t y = x + 1; y < pairs.size(); ++y) {
        const auto [p0, p1] = pairs[x];
        const auto [q0, q1] = pairs[y];
        if (p0 == q0 || p0 == q1 || p1 == q0 || p1 == q1) continue;
        const std::array<std::array<std::size_t, 4>, 8> orders{{{p0, p1, q0, q1},
                                                                {p0, p1, q1, q0},
                                                                {p1, p0, q0, q1},
                                                                {p1, p0, q1, q0},
                                                                {q0, q1, p0, p1},
                                                                {q0, q1, p1, p0},
                                                                {q1, q0, p0, p1},
                                                                {q1, q0, p1, p0}}};
        bool found = false;
        for (const auto& o : orders) {
          const auto [xi, eta, sigma, tau] = o;
          // alpha = xi, gamma = tau, [beta,gamma] = +-eta, [alpha,beta] = +-sigma.
          for (std::size_t beta = 0; beta < n && !found; ++beta) {
            const auto bg = unit_bracket(lb, beta, tau);
            const auto ab = unit_bracket(lb, xi, beta);
            if (!bg || !ab || bg->first != eta || ab->first != sigma) continue;
            if (!adjacent(lb, xi, beta, tau) || head_of_bracket(eta, xi)) continue;
            out.factorizations.push_back({o, {xi, beta, tau}});
            found = true;
          }
          if (found) break;
        }
        if (!found)
          return fail(4, "no valid ordering of [" + lb.symbol(p0) + "," + lb.symbol(p1) + "] = +-[" +
                             lb.symbol(q0) + "," + lb.symbol(q1) + "]");
      }
  return out;
}

std::string monomial_name(const LieBasis& lb, std::uint64_t mask) {
  if (mask == 0) return "1";
  std::string out;
  for (std::size_t k = 0; k < lb.size(); ++k)
    if (mask >> k & 1) out += lb.symbol(k);
  return out;
}

std::vector<std::pair<std::uint64_t, std::int64_t>> exterior_boundary(const LieBasis& lb, std::uint64_t mask) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < lb.size(); ++k)
    if (mask >> k & 1) idx.push_back(k);
  std::map<std::uint64_t, std::int64_t> terms;
  for (std::size_t u = 0; u < idx.size(); ++u)
    for (std::size_t v = u + 1; v < idx.size(); ++v) {
      const LieElement br = lb.bracket(idx[u], idx[v]);
      if (br.empty()) continue;
      const std::uint64_t rest = mask & ~(std::uint64_t{1} << idx[u]) & ~(std::uint64_t{1} << idx[v]);
      const std::int64_t pos_sign = (v - u) % 2 == 0 ? 1 : -1;
      for (auto [k, c] : br) {
        if (rest >> k & 1) continue;
        // Moving e_k past the smaller factors of `rest` into sorted position.
        const int before = std::popcount(rest & ((std::uint64_t{1} << k) - 1));
        terms[rest | std::uint64_t{1} << k] += pos_sign * c * (before % 2 == 0 ? 1 : -1);
      }
    }
  std::vector<std::pair<std::uint64_t, std::int64_t>> out;
  for (auto [w, c] : terms)
    if (c != 0) out.emplace_back(w, c);
  return out;
}

ChainGraph exterior_subgraph(const LieBasis& lb, const std::vector<std::uint64_t>& masks) {
  if (lb.size() > 63) throw InputError("exterior_subgraph: at most 63 symbols");
  std::unordered_map<std::uint64_t, std::size_t> where;
  std::vector<VertexId> ids;
  Gradation grade;
  ids.reserve(masks.size());
  grade.values.reserve(masks.size());
  for (std::size_t i = 0; i < masks.size(); ++i) {
    if (!where.emplace(masks[i], i).second) throw InputError("exterior_subgraph: repeated monomial");
    ids.push_back(monomial_name(lb, masks[i]));
    grade.values.push_back(std::popcount(masks[i]));
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::int64_t> weights;
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (auto [w, c] : exterior_boundary(lb, masks[i])) {
      auto it = where.find(w);
      if (it == where.end()) continue;
      edges.emplace_back(std::min(i, it->second), std::max(i, it->second));
      weights.push_back(c);
    }
  Graph g = Graph::from_indices(std::move(ids), edges);
  Connection nu;
  for (std::size_t e = 0; e < edges.size(); ++e) nu.set(edges[e].first, edges[e].second, weights[e]);
  return ChainGraph(GradedGraph(std::move(g), std::move(grade)), std::move(nu));
}

ChainGraph exterior_chain_graph(const LieBasis& lb) {
  const std::size_t n = lb.size();
  if (n > 24) throw InputError("exterior_chain_graph: at most 24 symbols");
  std::vector<std::uint64_t> masks(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < masks.size(); ++m) masks[m] = m;
  return exterior_subgraph(lb, masks);
}

int classify_diamond(const LieBasis& lb, const Diamond& dm) {
  const std::size_t n = lb.size();
  std::array<std::uint64_t, 4> d{};
  for (std::size_t i = 0; i < 4; ++i) d[i] = dm.v[i];
  const std::uint64_t common = d[0] & d[1] & d[2] & d[3];
  const std::uint64_t varying = (d[0] | d[1] | d[2] | d[3]) & ~common;
  std::array<std::uint64_t, 4> sorted_d = d;
  std::sort(sorted_d.begin(), sorted_d.end());

  auto bit = [](std::size_t k) { return std::uint64_t{1} << k; };
  auto matches = [&](std::array<std::uint64_t, 4> fronts) {
    const std::uint64_t u = fronts[0] | fronts[1] | fronts[2] | fronts[3];
    if ((u & ~varying) != 0) return false;
    const std::uint64_t x = d[0] & ~u;
    std::array<std::uint64_t, 4> got{};
    for (std::size_t i = 0; i < 4; ++i) {
      if ((d[i] & ~u) != x) return false;
      got[i] = d[i];
    }
    for (auto& f : fronts) f |= x;
    std::sort(fronts.begin(), fronts.end());
    std::sort(got.begin(), got.end());
    return fronts == got;
  };

  std::set<int> types;
  std::vector<std::size_t> symbols;
  for (std::size_t k = 0; k < n; ++k)
    if (varying >> k & 1) symbols.push_back(k);

  for (std::size_t a : symbols)
    for (std::size_t b : symbols)
      for (std::size_t c : symbols) {
        if (!adjacent(lb, a, b, c)) continue;
        const std::size_t ab = unit_bracket(lb, a, b)->first;
        const std::size_t bc = unit_bracket(lb, b, c)->first;
        const auto abc_u = as_unit(lb.bracket(ab, c));
        if (!abc_u) continue;
        const std::size_t abc = abc_u->first;
        const std::uint64_t A = bit(a), B = bit(b), C = bit(c), AB = bit(ab), BC = bit(bc), ABC = bit(abc);
        if (matches({A | B | C, A | BC, C | AB, ABC})) types.insert(2);
        if (matches({A | B | C | AB, A | AB | BC, A | B | ABC, AB | ABC})) types.insert(3);
        if (matches({A | B | C | AB | BC, A | B | BC | ABC, B | C | AB | ABC, AB | BC | ABC})) types.insert(4);
        if (matches({A | B | BC, B | C | AB, AB | BC, B | ABC})) types.insert(5);
        if (matches({A | C | AB | BC, A | B | C | ABC, A | BC | ABC, C | AB | ABC})) types.insert(6);
      }

  std::vector<std::array<std::size_t, 3>> brackets;
  for (const auto& [key, e] : lb.table()) {
    const auto u = as_unit(e);
    if (u && (varying >> key.first & 1) && (varying >> key.second & 1) && (varying >> u->first & 1))
      brackets.push_back({key.first, key.second, u->first});
  }
  for (std::size_t x = 0; x < brackets.size(); ++x)
    for (std::size_t y = x + 1; y < brackets.size(); ++y) {
      const auto [xi, eta, r1] = brackets[x];
      const auto [sigma, tau, r2] = brackets[y];
      const std::set<std::size_t> six{xi, eta, r1, sigma, tau, r2};
      if (six.size() != 6) continue;
      const std::uint64_t P = bit(xi) | bit(eta), Q = bit(sigma) | bit(tau);
      if (matches({P | Q, bit(r1) | Q, P | bit(r2), bit(r1) | bit(r2)})) types.insert(1);
    }

  std::string names;
  for (std::size_t i = 0; i < 4; ++i) names += (i ? ", " : "") + monomial_name(lb, d[i]);
  if (types.size() != 1)
    throw InvariantViolation("six diamond types",
                             "diamond {" + names + "} matches " + std::to_string(types.size()) + " types");
  return *types.begin();
}

std::vector<ComponentHomology> component_decomposition(const ChainGraph& cg, unsigned jobs) {
  const auto comps = cg.graph().components();
  std::vector<std::optional<ComponentHomology>> slots(comps.size());
  parallel_for(comps.size(), jobs, [&](std::size_t i) {
    ChainGraph sub = induced(cg, comps[i]);
    std::optional<std::int64_t> rank;
    if (sub.graph().size() <= 1) {
      rank = 0;
    } else if (is_deformable(sub.graph(), sub.connection()).deformable) {
      rank = graph_rank(sub.graph(), sub.connection());
    }
    HomologyTable h = homology(sub);
    slots[i] = ComponentHomology{comps[i], rank, std::move(h), std::move(sub)};
  });
  std::vector<ComponentHomology> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

HomologyTable sum_homology(const std::vector<ComponentHomology>& parts) {
  HomologyTable out;
  if (!parts.empty()) out.coeff = parts.front().homology.coeff;
  std::map<Grade, std::pair<std::size_t, std::vector<BigInt>>> acc;
  for (const auto& p : parts)
    for (const auto& [k, grp] : p.homology.groups) {
      auto& slot = acc[k];
      slot.first += grp.free_rank();
      slot.second.insert(slot.second.end(), grp.torsion().begin(), grp.torsion().end());
    }
  for (const auto& [k, slot] : acc) {
    AbelianGroup g = abelian_group_from_divisors(slot.first, slot.second);
    if (!g.is_zero()) out.groups.emplace(k, std::move(g));
  }
  return out;
}

TorsionExclusionReport torsion_exclusion_check(const std::vector<ComponentHomology>& parts, std::uint64_t p) {
  TorsionExclusionReport out;
  out.reference = "no p-torsion in components of rank prime to p";
  out.p = p;
  const Coefficients fp = Coefficients::prime(p);
  const BigInt bp = static_cast<unsigned long>(p);
  for (const auto& part : parts) {
    if (!part.rank || (*part.rank % static_cast<std::int64_t>(p) == 0 && *part.rank != 0)) {
      ++out.exempt;
      continue;
    }
    ++out.checked;
    const std::string where = "component of " + part.chain.graph().id(0);
    for (const auto& [k, grp] : part.homology.groups)
      for (const auto& t : grp.torsion())
        if (t % bp == 0) {
          out.verdict = Verdict::fail;
          out.details.push_back(where + ": H_" + std::to_string(k) + " = " + grp.to_string());
        }
    const HomologyTable mod = homology(part.chain, fp);
    std::set<Grade> degrees;
    for (const auto& [k, g] : mod.groups) degrees.insert(k);
    for (const auto& [k, g] : part.homology.groups) degrees.insert(k);
    for (Grade k : degrees)
      if (mod.at(k).free_rank() != part.homology.at(k).free_rank()) {
        out.verdict = Verdict::fail;
        out.details.push_back(where + ": dim H_" + std::to_string(k) + " over " + fp.name() + " is " +
                              std::to_string(mod.at(k).free_rank()) + ", free rank is " +
                              std::to_string(part.homology.at(k).free_rank()));
      }
  }
  return out;
}

}  // namespace gad
