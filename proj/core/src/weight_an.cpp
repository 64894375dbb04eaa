#include "gad/weight_an.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "gad/diamond.hpp"
#include "gad/errors.hpp"

namespace gad {

namespace {

std::int64_t triangular(std::int64_t k) { return k * (k + 1) / 2; }

const std::vector<std::uint64_t>& empty_bucket() {
  static const std::vector<std::uint64_t> e;
  return e;
}

}  // namespace

void TriMatrix01::set(std::size_t i, std::size_t j, bool v) {
  const std::uint64_t b = std::uint64_t{1} << type_a_index(i, j);
  bits = v ? (bits | b) : (bits & ~b);
}

std::string to_string(const Weight& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + std::to_string(w[i]);
  return out + ")";
}

Weight parse_weight(const std::string& text) {
  Weight w;
  std::string body = text;
  if (!body.empty() && body.front() == '(') body.erase(0, 1);
  if (!body.empty() && body.back() == ')') body.pop_back();
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      w.push_back(v);
    } catch (const std::exception&) {
      throw InputError("bad weight entry '" + item + "' in '" + text + "'");
    }
  }
  if (w.empty()) throw InputError("empty weight");
  return w;
}

std::size_t tri_size(std::size_t n) { return n * (n + 1) / 2; }

Weight weight_of(const TriMatrix01& m) {
  Weight w(m.n + 1, 0);
  for (std::size_t s = 0; s <= m.n; ++s) {
    for (std::size_t k = 0; k < s; ++k) w[s] += 1 - m.get(k, s);
    for (std::size_t k = s + 1; k <= m.n; ++k) w[s] += m.get(s, k);
  }
  return w;
}

bool is_admissible_weight(const Weight& w) {
  if (w.empty()) return false;
  Weight sorted = w;
  std::sort(sorted.begin(), sorted.end());
  std::int64_t prefix = 0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    prefix += sorted[k];
    if (prefix < triangular(static_cast<std::int64_t>(k))) return false;
  }
  return prefix == triangular(static_cast<std::int64_t>(w.size()) - 1);
}

std::vector<Weight> enumerate_omega(std::size_t n) {
  const auto len = static_cast<std::int64_t>(n) + 1;
  const std::int64_t total = triangular(len - 1);
  std::vector<Weight> out;
  Weight cur;
  auto rec = [&](auto&& self, std::int64_t sum) -> void {
    if (static_cast<std::int64_t>(cur.size()) == len) {
      if (sum == total && is_admissible_weight(cur)) out.push_back(cur);
      return;
    }
    for (std::int64_t v = 0; v <= len - 1 && sum + v <= total; ++v) {
      cur.push_back(v);
      self(self, sum + v);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::optional<Factorization> is_reducible(const Weight& w) {
  const std::size_t len = w.size();
  if (len < 2 || !is_admissible_weight(w)) return std::nullopt;
  for (std::size_t size = 1; size < len; ++size) {
    std::vector<bool> pick(len, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    // prev_permutation over a sorted-descending mask walks subsets in
    // lexicographic order of their position lists.
    do {
      std::int64_t sum = 0;
      for (std::size_t i = 0; i < len; ++i)
        if (pick[i]) sum += w[i];
      if (sum != triangular(static_cast<std::int64_t>(size) - 1)) continue;
      Factorization f;
      for (std::size_t i = 0; i < len; ++i) {
        if (pick[i]) {
          f.positions.push_back(i);
          f.first.push_back(w[i]);
        } else {
          f.second.push_back(w[i] - static_cast<std::int64_t>(size));
        }
      }
      if (!is_admissible_weight(f.first) || !is_admissible_weight(f.second))
        throw InvariantViolation("reducible weights split into admissible weights",
                                 to_string(w) + " splits into " + to_string(f.first) + " and " + to_string(f.second));
      return f;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return std::nullopt;
}

WeightAtlas::WeightAtlas(std::size_t n) : n_(n), basis_(type_a(n)) {
  if (n > 8) throw InputError("WeightAtlas: n must be at most 8");
  const std::uint64_t count = std::uint64_t{1} << tri_size(n);
  for (std::uint64_t m = 0; m < count; ++m) buckets_[weight_of(TriMatrix01{n, m})].push_back(m);
}

const std::vector<std::uint64_t>& WeightAtlas::matrices(const Weight& w) const {
  auto it = buckets_.find(w);
  return it == buckets_.end() ? empty_bucket() : it->second;
}

WeightComponent weight_subgraph(const WeightAtlas& atlas, const Weight& w) {
  const auto& masks = atlas.matrices(w);
  WeightComponent out{w, {}, exterior_subgraph(atlas.basis(), masks)};
  for (std::uint64_t m : masks) out.vertices.push_back({atlas.n(), m});
  if (!out.chain.graph().connected())
    throw InvariantViolation("weight subgraphs are connected", "G" + to_string(w) + " is disconnected");
  return out;
}

std::int64_t rank_closed_form(const Weight& w) {
  Weight s = w;
  std::sort(s.begin(), s.end());
  std::int64_t r = 0;
  for (std::size_t kk = 0; kk < s.size(); ++kk) {
    const auto k = static_cast<std::int64_t>(kk);
    const std::int64_t i = s[kk];
    if (i < k) {
      r += triangular(k - 1) - triangular(i - 1);  // i + ... + (k-1)
      r += k - i;
    } else if (i > k) {
      r -= triangular(i) - triangular(k);  // (k+1) + ... + i
    }
  }
  return r;
}

std::int64_t counted_rank(const WeightComponent& c) {
  return static_cast<std::int64_t>(diamond_rank(c.chain.graph()));
}

Weight shifted(const Weight& w, std::size_t s, std::size_t t) {
  if (s >= w.size() || t >= w.size() || s == t) throw InputError("shifted: bad positions");
  Weight out = w;
  out[s] += 1;
  out[t] -= 1;
  return out;
}

RankDeltaReport rank_delta_check(const WeightAtlas& atlas, const Weight& w, std::size_t s, std::size_t t) {
  RankDeltaReport out;
  out.reference = "rank change under a weight shift";
  const Weight v = shifted(w, s, t);
  if (!is_admissible_weight(w) || !is_admissible_weight(v)) {
    out.verdict = Verdict::not_applicable;
    out.details.push_back(to_string(w) + " -> " + to_string(v) + " leaves the admissible set");
    return out;
  }
  out.expected = w[t] - w[s] - 1;
  out.formula_delta = rank_closed_form(v) - rank_closed_form(w);
  const std::int64_t before = counted_rank(weight_subgraph(atlas, w));
  const std::int64_t after = counted_rank(weight_subgraph(atlas, v));
  out.counted_delta = after - before;
  if (out.formula_delta != out.expected || out.counted_delta != out.expected) {
    out.verdict = Verdict::fail;
    out.details.push_back(to_string(w) + " -> " + to_string(v) + ": expected " + std::to_string(out.expected) +
                          ", formula " + std::to_string(out.formula_delta) + ", counted " +
                          std::to_string(out.counted_delta));
  }
  if (rank_closed_form(w) != before || rank_closed_form(v) != after) {
    out.verdict = Verdict::fail;
    out.details.push_back("closed form disagrees with counted valence");
  }
  return out;
}

EdgeWitness edge_witness(const WeightAtlas& atlas, const Weight& w, std::size_t s, std::size_t t) {
  const std::size_t n = atlas.n();
  if (s >= t || t > n) throw InputError("edge_witness: need s < t <= n");
  if (w.size() != n + 1 || !is_admissible_weight(w) || !is_admissible_weight(shifted(w, s, t)))
    throw InputError("edge_witness: both weights must be admissible");
  const auto& bucket = atlas.matrices(w);
  if (bucket.empty()) throw InvariantViolation("admissible weights are realized", to_string(w) + " has no matrix");
  TriMatrix01 e{n, bucket.front()};
  if (!e.get(s, t)) return {e, true};

  // Trade e_st for a pair through a third index, keeping the weight.
  for (std::size_t l = t + 1; l <= n; ++l)
    if (e.get(t, l) && !e.get(s, l)) {
      e.set(s, t, false);
      e.set(t, l, false);
      e.set(s, l, true);
      return {e, true};
    }
  for (std::size_t m = 0; m < s; ++m)
    if (e.get(m, s) && !e.get(m, t)) {
      e.set(s, t, false);
      e.set(m, s, false);
      e.set(m, t, true);
      return {e, true};
    }
  for (std::size_t m = s + 1; m < t; ++m)
    if (!e.get(s, m) && !e.get(m, t)) {
      e.set(s, t, false);
      e.set(s, m, true);
      e.set(m, t, true);
      return {e, true};
    }
  for (std::uint64_t m : bucket) {
    const TriMatrix01 c{n, m};
    if (!c.get(s, t)) return {c, false};
  }
  throw InvariantViolation("edges between adjacent weights",
                           "no matrix of weight " + to_string(w) + " has a_" + std::to_string(s) + std::to_string(t) +
                               " = 0");
}

TriMatrix01 apply_sigma(const TriMatrix01& a, std::size_t k) {
  const std::size_t n = a.n;
  if (k < 1 || k > n) throw InputError("apply_sigma: k out of range");
  TriMatrix01 b = a;
  for (std::size_t i = 0; i + 2 <= k; ++i) {
    b.set(i, k - 1, a.get(i, k));
    b.set(i, k, a.get(i, k - 1));
  }
  b.set(k - 1, k, !a.get(k - 1, k));
  for (std::size_t l = k + 1; l <= n; ++l) {
    b.set(k - 1, l, a.get(k, l));
    b.set(k, l, a.get(k - 1, l));
  }
  return b;
}

TriMatrix01 apply_transpose(const TriMatrix01& a) {
  const std::size_t n = a.n;
  TriMatrix01 b{n, 0};
  for (std::size_t q = 1; q <= n; ++q)
    for (std::size_t p = 0; p < q; ++p) b.set(p, q, a.get(n - q, n - p));
  return b;
}

TriMatrix01 apply_rotation(const TriMatrix01& a) {
  const std::size_t n = a.n;
  TriMatrix01 b{n, 0};
  for (std::size_t q = 1; q <= n; ++q) {
    b.set(0, q, !a.get(q - 1, n));
    for (std::size_t p = 1; p < q; ++p) b.set(p, q, a.get(p - 1, q - 1));
  }
  return b;
}

TriMatrix01 apply_duality(const TriMatrix01& a) {
  const std::uint64_t all = tri_size(a.n) == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << tri_size(a.n)) - 1;
  return {a.n, ~a.bits & all};
}

std::int64_t duality_tau(const TriMatrix01& a) {
  std::int64_t tau = 0;
  for (std::size_t j = 1; j <= a.n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (a.get(i, j)) tau += triangular(static_cast<std::int64_t>(j) - 1) + static_cast<std::int64_t>(j - i) - 1;
  return tau;
}

std::vector<std::size_t> transposition_word(const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw InputError("transposition_word: not a permutation of 0..n");
  std::vector<std::size_t> cur(perm.size());
  std::iota(cur.begin(), cur.end(), 0);
  std::vector<std::size_t> word;
  for (std::size_t p = 0; p < perm.size(); ++p) {
    std::size_t q = p;
    while (cur[q] != perm[p]) ++q;
    for (std::size_t k = q; k > p; --k) {
      std::swap(cur[k - 1], cur[k]);
      word.push_back(k);
    }
  }
  return word;
}

TriMatrix01 VertexMap::operator()(const TriMatrix01& a) const {
  if (a.n != n) throw InputError("VertexMap: matrix size mismatch");
  switch (kind) {
    case Kind::permutation: {
      TriMatrix01 b = a;
      for (std::size_t k : word) b = apply_sigma(b, k);
      return b;
    }
    case Kind::transpose:
      return apply_transpose(a);
    case Kind::rotation:
      return apply_rotation(a);
    case Kind::duality:
      return apply_duality(a);
  }
  return a;
}

Weight VertexMap::target(const Weight& w) const {
  const auto top = static_cast<std::int64_t>(n);
  Weight out = w;
  switch (kind) {
    case Kind::permutation:
      for (std::size_t k : word) std::swap(out[k - 1], out[k]);
      break;
    case Kind::transpose:
      for (std::size_t i = 0; i < w.size(); ++i) out[i] = top - w[w.size() - 1 - i];
      break;
    case Kind::rotation:
      std::rotate(out.rbegin(), out.rbegin() + 1, out.rend());
      break;
    case Kind::duality:
      for (auto& x : out) x = top - x;
      break;
  }
  return out;
}

std::string to_string(VertexMap::Kind k) {
  switch (k) {
    case VertexMap::Kind::permutation:
      return "perm";
    case VertexMap::Kind::transpose:
      return "transpose";
    case VertexMap::Kind::rotation:
      return "rotate";
    case VertexMap::Kind::duality:
      return "dual";
  }
  return "?";
}

VertexMap iso_permutation(std::size_t n, std::vector<std::size_t> word) {
  for (std::size_t k : word)
    if (k < 1 || k > n) throw InputError("iso_permutation: sigma_" + std::to_string(k) + " out of range");
  return {VertexMap::Kind::permutation, n, std::move(word)};
}
VertexMap iso_transpose(std::size_t n) { return {VertexMap::Kind::transpose, n, {}}; }
VertexMap iso_rotation(std::size_t n) { return {VertexMap::Kind::rotation, n, {}}; }
VertexMap iso_duality(std::size_t n) { return {VertexMap::Kind::duality, n, {}}; }

IsoReport verify_iso(const WeightAtlas& atlas, const VertexMap& f, const Weight& w, bool strict) {
  IsoReport out;
  out.reference = f.signed_iso() ? "signed isomorphism of weight subgraphs (" + to_string(f.kind) + ")"
                                 : "graph isomorphism of weight subgraphs (" + to_string(f.kind) + ")";
  out.source = w;
  out.target = f.target(w);
  const WeightComponent src = weight_subgraph(atlas, w);
  const WeightComponent tgt = weight_subgraph(atlas, out.target);
  auto fail = [&](std::string why) {
    out.verdict = Verdict::fail;
    out.details.push_back(std::move(why));
  };

  std::unordered_map<std::uint64_t, std::size_t> where;
  for (std::size_t i = 0; i < tgt.vertices.size(); ++i) where.emplace(tgt.vertices[i].bits, i);
  std::vector<std::size_t> image(src.vertices.size());
  std::vector<char> hit(tgt.vertices.size(), 0);
  out.bijective = src.vertices.size() == tgt.vertices.size();
  for (std::size_t i = 0; i < src.vertices.size() && out.bijective; ++i) {
    auto it = where.find(f(src.vertices[i]).bits);
    if (it == where.end() || hit[it->second]) {
      out.bijective = false;
      break;
    }
    hit[it->second] = 1;
    image[i] = it->second;
  }
  if (!out.bijective) {
    fail("vertex map is not a bijection onto G" + to_string(out.target));
  } else {
    const Graph& gs = src.chain.graph();
    const Graph& gt = tgt.chain.graph();
    out.edges_preserved = gs.edge_count() == gt.edge_count();
    for (auto [a, b] : gs.edges())
      if (!gt.adjacent(image[a], image[b])) out.edges_preserved = false;
    if (!out.edges_preserved) fail("edges are not preserved");

    out.grade_direction = f.kind == VertexMap::Kind::duality ? -1 : 1;
    if (!src.vertices.empty()) out.grade_offset = tgt.chain.grade(image[0]) - out.grade_direction * src.chain.grade(0);
    for (std::size_t i = 0; i < src.vertices.size() && f.signed_iso(); ++i)
      if (tgt.chain.grade(image[i]) != out.grade_offset + out.grade_direction * src.chain.grade(i)) {
        fail("grades are not shifted uniformly");
        break;
      }

    if (f.signed_iso() && out.edges_preserved) {
      SignMap e{std::vector<int>(src.vertices.size(), 0)};
      if (!src.vertices.empty()) {
        e.sign[0] = 1;
        std::deque<std::size_t> queue{0};
        while (!queue.empty()) {
          const std::size_t a = queue.front();
          queue.pop_front();
          for (std::size_t b : gs.neighbors(a))
            if (e.sign[b] == 0) {
              e.sign[b] = static_cast<int>(e.sign[a] * src.chain.connection()(a, b) *
                                           tgt.chain.connection()(image[a], image[b]));
              queue.push_back(b);
            }
        }
      }
      bool ok = true;
      for (auto [a, b] : gs.edges())
        if (tgt.chain.connection()(image[a], image[b]) != e[a] * e[b] * src.chain.connection()(a, b)) ok = false;
      if (ok) out.gauge = std::move(e);
      else fail("no sign gauge makes the map a chain isomorphism");
    }
  }
  if (strict && out.verdict == Verdict::fail)
    throw InvariantViolation(out.reference, to_string(w) + ": " + out.details.front());
  return out;
}

HomologyTable shift_degrees(const HomologyTable& h, Grade offset) {
  HomologyTable out;
  out.coeff = h.coeff;
  for (const auto& [k, g] : h.groups) out.groups.emplace(k + offset, g);
  return out;
}

ProductIsoReport verify_product_iso(const WeightAtlas& atlas, const Weight& w) {
  ProductIsoReport out;
  out.reference = "reducible weight components are products";
  const auto f = is_reducible(w);
  if (!f) {
    out.verdict = Verdict::not_applicable;
    out.details.push_back(to_string(w) + " is not reducible");
    return out;
  }
  out.factors = *f;
  const WeightAtlas a1(f->first.size() - 1);
  const WeightAtlas a2(f->second.size() - 1);
  const WeightComponent whole = weight_subgraph(atlas, w);
  const WeightComponent c1 = weight_subgraph(a1, f->first);
  const WeightComponent c2 = weight_subgraph(a2, f->second);
  out.size = whole.vertices.size();
  out.size_first = c1.vertices.size();
  out.size_second = c2.vertices.size();
  if (out.size != out.size_first * out.size_second) {
    out.verdict = Verdict::fail;
    out.details.push_back("|G" + to_string(w) + "| = " + std::to_string(out.size) + " but factors give " +
                          std::to_string(out.size_first) + " * " + std::to_string(out.size_second));
    return out;
  }
  const ChainGraph prod = product_chain_graph(c1.chain, c2.chain);
  out.homology = homology(whole.chain);
  Grade min_whole = whole.chain.grade(0), min_prod = prod.grade(0);
  for (std::size_t v = 0; v < whole.vertices.size(); ++v) min_whole = std::min(min_whole, whole.chain.grade(v));
  for (std::size_t v = 0; v < prod.graph().size(); ++v) min_prod = std::min(min_prod, prod.grade(v));
  out.product_homology = shift_degrees(homology(prod), min_whole - min_prod);
  if (!(out.homology == out.product_homology)) {
    out.verdict = Verdict::fail;
    out.details.push_back("homology of G" + to_string(w) + " differs from the product of G" + to_string(f->first) +
                          " and G" + to_string(f->second));
  }
  return out;
}

}  // namespace gad
