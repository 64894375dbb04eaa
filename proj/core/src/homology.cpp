#include "gad/homology.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <sstream>

#include "gad/errors.hpp"
#include "gad/rep_matrix.hpp"
#include "gad/smith.hpp"

namespace gad {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Grade mod2(Grade k) { return ((k % 2) + 2) % 2; }

// Prime factorisation by trial division; large cofactors must be prime.
std::map<BigInt, unsigned> factorize(BigInt x) {
  std::map<BigInt, unsigned> out;
  x = abs(x);
  for (unsigned long d = 2; x > 1 && d < 1'000'000; ++d) {
    if (BigInt(d) * d > x) break;
    while (mpz_divisible_ui_p(x.get_mpz_t(), d)) {
      ++out[BigInt(d)];
      x /= d;
    }
  }
  if (x > 1) {
    if (mpz_probab_prime_p(x.get_mpz_t(), 30) == 0)
      throw DomainError("factorize: cofactor " + x.get_str() + " too large to factor");
    ++out[x];
  }
  return out;
}

unsigned valuation(BigInt x, const BigInt& p) {
  unsigned e = 0;
  while (x != 0 && mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
    x /= p;
    ++e;
  }
  return e;
}

// Exponents of p in the invariant factors, largest first.
std::vector<unsigned> p_partition(const AbelianGroup& g, const BigInt& p) {
  std::vector<unsigned> out;
  for (const auto& d : g.torsion()) {
    const unsigned e = valuation(d, p);
    if (e > 0) out.push_back(e);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

// lambda / mu is a horizontal strip of size e.
bool horizontal_strip(const std::vector<unsigned>& lambda, const std::vector<unsigned>& mu, unsigned e) {
  unsigned sl = 0, sm = 0;
  for (unsigned x : lambda) sl += x;
  for (unsigned x : mu) sm += x;
  if (sl != sm + e || mu.size() > lambda.size()) return false;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const unsigned m = i < mu.size() ? mu[i] : 0;
    if (m > lambda[i]) return false;
    if (i + 1 < lambda.size() && lambda[i + 1] > m) return false;
  }
  return true;
}

struct RankAndTorsion {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;
};

RankAndTorsion analyse(const IntMatrix& m, const Coefficients& c) {
  RankAndTorsion out;
  if (m.empty()) return out;
  switch (c.kind) {
    case Coefficients::Kind::integers: {
      const SmithForm s = smith_normal_form(m);
      out.rank = s.divisors.size();
      for (const auto& d : s.divisors)
        if (d > 1) out.torsion.push_back(d);
      break;
    }
    case Coefficients::Kind::rationals:
      out.rank = rank_q(m);
      break;
    case Coefficients::Kind::prime_field:
      out.rank = rank_mod_p(m, c.p);
      break;
  }
  return out;
}

std::set<Grade> degrees_of(const std::map<Grade, std::vector<VertexId>>& basis) {
  std::set<Grade> out;
  for (const auto& [k, b] : basis)
    if (!b.empty()) out.insert(k);
  return out;
}

void check_shape(const IntMatrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols) {
    std::ostringstream os;
    os << what << " has shape " << m.rows() << "x" << m.cols() << ", expected " << rows << "x" << cols;
    throw DomainError(os.str());
  }
}

HomologyTable make_table(Coefficients coeff) {
  HomologyTable t;
  t.coeff = coeff;
  return t;
}

void put(HomologyTable& t, Grade k, AbelianGroup g) {
  if (!g.is_zero()) t.groups[k] = std::move(g);
}

bool connected_deformable(const ChainGraph& cg) {
  return cg.graph().size() > 0 && cg.graph().connected() &&
         is_deformable(cg.graph(), cg.connection()).deformable;
}

std::vector<BigInt> positive_divisors(std::int64_t n) {
  std::vector<BigInt> out;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.emplace_back(static_cast<long>(d));
  return out;
}

}  // namespace

// ---- AbelianGroup -------------------------------------------------------------

AbelianGroup::AbelianGroup(std::size_t free_rank, std::vector<BigInt> torsion) : free_rank_(free_rank) {
  std::sort(torsion.begin(), torsion.end());
  for (auto& d : torsion) {
    if (d <= 0) throw InputError("abelian group: divisors must be positive");
    if (d == 1) continue;
    if (!torsion_.empty() && !mpz_divisible_p(d.get_mpz_t(), torsion_.back().get_mpz_t()))
      throw InputError("abelian group: divisors must form a divisibility chain");
    torsion_.push_back(std::move(d));
  }
}

AbelianGroup AbelianGroup::cyclic(const BigInt& order) { return AbelianGroup(0, {order}); }

BigInt AbelianGroup::order() const {
  if (free_rank_ > 0) throw DomainError("order of an infinite group");
  BigInt n = 1;
  for (const auto& d : torsion_) n *= d;
  return n;
}

std::string AbelianGroup::to_string() const {
  if (is_zero()) return "0";
  std::vector<std::string> parts;
  if (free_rank_ == 1) parts.push_back("Z");
  else if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
  for (const auto& d : torsion_) parts.push_back("Z/" + d.get_str());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " ⊕ " : "") + parts[i];
  return out;
}

AbelianGroup abelian_group_from_divisors(std::size_t free_rank, const std::vector<BigInt>& divisors) {
  BigMatrix diag(divisors.size(), divisors.size());
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    if (divisors[i] <= 0) throw InputError("abelian group: divisors must be positive");
    diag(i, i) = divisors[i];
  }
  return AbelianGroup(free_rank, smith_normal_form(diag).divisors);
}

Coefficients Coefficients::prime(std::uint64_t p) {
  if (!is_prime(p)) throw InputError("coefficient field: " + std::to_string(p) + " is not prime");
  return {Kind::prime_field, p};
}

Coefficients Coefficients::field(std::uint64_t characteristic) {
  return characteristic == 0 ? rationals() : prime(characteristic);
}

std::string Coefficients::name() const {
  switch (kind) {
    case Kind::integers: return "Z";
    case Kind::rationals: return "Q";
    case Kind::prime_field: return "Fp:" + std::to_string(p);
  }
  return "?";
}

const AbelianGroup& HomologyTable::at(Grade k) const {
  static const AbelianGroup zero;
  auto it = groups.find(k);
  return it == groups.end() ? zero : it->second;
}

bool HomologyTable::all_zero() const { return groups.empty(); }

std::size_t HomologyTable::total_free_rank() const {
  std::size_t n = 0;
  for (const auto& [k, g] : groups) n += g.free_rank();
  return n;
}

// ---- complexes --------------------------------------------------------------------

std::size_t ChainComplex::dim(Grade k) const {
  auto it = basis.find(k);
  return it == basis.end() ? 0 : it->second.size();
}

IntMatrix ChainComplex::d(Grade k) const {
  auto it = boundary.find(k);
  if (it != boundary.end()) return it->second;
  return IntMatrix(dim(k - 1), dim(k));
}

void ChainComplex::validate() const {
  for (const auto& [k, m] : boundary) check_shape(m, dim(k - 1), dim(k), "d_" + std::to_string(k));
  for (const auto& [k, m] : boundary) {
    auto it = boundary.find(k - 1);
    if (it == boundary.end()) continue;
    if (!(it->second * m).is_zero())
      throw DomainError("d_" + std::to_string(k - 1) + " d_" + std::to_string(k) + " is not zero");
  }
}

std::size_t CochainComplex::dim(Grade k) const {
  auto it = basis.find(k);
  return it == basis.end() ? 0 : it->second.size();
}

IntMatrix CochainComplex::delta(Grade k) const {
  auto it = coboundary.find(k);
  if (it != coboundary.end()) return it->second;
  return IntMatrix(dim(k + 1), dim(k));
}

void CochainComplex::validate() const {
  for (const auto& [k, m] : coboundary)
    check_shape(m, dim(k + 1), dim(k), "delta_" + std::to_string(k));
  for (const auto& [k, m] : coboundary) {
    auto it = coboundary.find(k + 1);
    if (it == coboundary.end()) continue;
    if (!(it->second * m).is_zero())
      throw DomainError("delta_" + std::to_string(k + 1) + " delta_" + std::to_string(k) + " is not zero");
  }
}

HomologyTable homology(const ChainComplex& cx, Coefficients coeff) {
  HomologyTable t = make_table(coeff);
  std::map<Grade, RankAndTorsion> d;
  auto get = [&](Grade k) -> const RankAndTorsion& {
    auto it = d.find(k);
    if (it == d.end()) it = d.emplace(k, analyse(cx.d(k), coeff)).first;
    return it->second;
  };
  for (Grade k : degrees_of(cx.basis)) {
    const auto& in = get(k + 1);
    const std::size_t free = cx.dim(k) - get(k).rank - in.rank;
    put(t, k, AbelianGroup(free, in.torsion));
  }
  return t;
}

HomologyTable cohomology(const CochainComplex& cx, Coefficients coeff) {
  HomologyTable t = make_table(coeff);
  std::map<Grade, RankAndTorsion> d;
  auto get = [&](Grade k) -> const RankAndTorsion& {
    auto it = d.find(k);
    if (it == d.end()) it = d.emplace(k, analyse(cx.delta(k), coeff)).first;
    return it->second;
  };
  for (Grade k : degrees_of(cx.basis)) {
    const auto& in = get(k - 1);
    const std::size_t free = cx.dim(k) - get(k).rank - in.rank;
    put(t, k, AbelianGroup(free, in.torsion));
  }
  return t;
}

// ---- chain graphs -------------------------------------------------------------------

ChainGraphCheck is_chain_graph(const GradedGraph& gg, const Connection& nu) {
  const Graph& g = gg.graph();
  ChainGraphCheck out;
  for (std::size_t a = 0; a < g.size(); ++a) {
    std::map<std::size_t, std::int64_t> sums;
    for (std::size_t c : g.neighbors(a)) {
      if (gg.grade(c) != gg.grade(a) + 1) continue;
      for (std::size_t b : g.neighbors(c))
        if (gg.grade(b) == gg.grade(a) + 2) sums[b] += nu(a, c) * nu(c, b);
    }
    for (const auto& [b, s] : sums)
      if (s != 0) out.violations.push_back({a, b, s});
  }
  out.valid = out.violations.empty();
  return out;
}

ChainGraph::ChainGraph(GradedGraph graded, Connection nu) : graded_(std::move(graded)), nu_(std::move(nu)) {
  const auto vc = validate_connection(graded_.graph(), nu_);
  if (!vc.valid) {
    const auto& v = vc.violations.front();
    throw InputError("invalid connection at pair (" + graph().id(v.a) + ", " + graph().id(v.b) + ")");
  }
  const auto cc = is_chain_graph(graded_, nu_);
  if (!cc.valid) {
    const auto& v = cc.violations.front();
    throw DomainError("chain condition fails for (" + graph().id(v.low) + ", " + graph().id(v.high) +
                      "): two-step sum " + std::to_string(v.sum));
  }
}

ChainComplex chain_complex(const ChainGraph& cg) {
  const Graph& g = cg.graph();
  ChainComplex cx;
  std::map<Grade, std::vector<std::size_t>> members;
  std::vector<std::size_t> pos(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    auto& m = members[cg.grade(v)];
    pos[v] = m.size();
    m.push_back(v);
    cx.basis[cg.grade(v)].push_back(g.id(v));
  }
  for (const auto& [k, vs] : members) {
    auto below = members.find(k - 1);
    if (below == members.end()) continue;
    IntMatrix d(below->second.size(), vs.size());
    for (std::size_t v : vs)
      for (std::size_t w : g.neighbors(v))
        if (cg.grade(w) == k - 1) d(pos[w], pos[v]) = cg.connection()(v, w);
    cx.boundary[k] = std::move(d);
  }
  cx.validate();
  return cx;
}

CochainComplex cochain_complex(const ChainGraph& cg) {
  const Graph& g = cg.graph();
  CochainComplex cx;
  std::map<Grade, std::vector<std::size_t>> members;
  std::vector<std::size_t> pos(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    auto& m = members[cg.grade(v)];
    pos[v] = m.size();
    m.push_back(v);
    cx.basis[cg.grade(v)].push_back(g.id(v));
  }
  for (const auto& [k, vs] : members) {
    auto above = members.find(k + 1);
    if (above == members.end()) continue;
    IntMatrix d(above->second.size(), vs.size());
    for (std::size_t v : vs)
      for (std::size_t w : g.neighbors(v))
        if (cg.grade(w) == k + 1) d(pos[w], pos[v]) = cg.connection()(v, w);
    cx.coboundary[k] = std::move(d);
  }
  cx.validate();
  return cx;
}

HomologyTable homology(const ChainGraph& cg, Coefficients coeff) { return homology(chain_complex(cg), coeff); }

HomologyTable cohomology(const ChainGraph& cg, Coefficients coeff) {
  return cohomology(cochain_complex(cg), coeff);
}

ChainGraph disjoint_union(const ChainGraph& a, const ChainGraph& b) {
  std::vector<VertexId> ids = a.graph().ids();
  ids.insert(ids.end(), b.graph().ids().begin(), b.graph().ids().end());
  const std::size_t off = a.graph().size();
  std::vector<std::pair<std::size_t, std::size_t>> edges = a.graph().edges();
  for (auto [x, y] : b.graph().edges()) edges.emplace_back(x + off, y + off);
  std::set<VertexId> seen(ids.begin(), ids.end());
  if (seen.size() != ids.size()) throw InputError("disjoint_union: vertex ids collide");
  Graph g = Graph::from_indices(ids, edges);
  Gradation grade = a.graded().gradation();
  for (Grade x : b.graded().gradation().values) grade.values.push_back(x);
  Connection nu;
  for (auto [x, y] : a.graph().edges()) nu.set(x, y, a.connection()(x, y));
  for (auto [x, y] : b.graph().edges()) nu.set(x + off, y + off, b.connection()(x, y));
  return ChainGraph(GradedGraph(std::move(g), std::move(grade)), std::move(nu));
}

ChainGraph induced(const ChainGraph& cg, const std::vector<std::size_t>& vertices) {
  Graph g = cg.graph().induced(vertices);
  Gradation grade;
  grade.values.reserve(vertices.size());
  for (std::size_t v : vertices) grade.values.push_back(cg.grade(v));
  Connection nu = induced(cg.graph(), cg.connection(), vertices);
  return ChainGraph(GradedGraph(std::move(g), std::move(grade)), std::move(nu));
}

ChainGraph product_chain_graph(const ChainGraph& a, const ChainGraph& b) {
  const Graph& ga = a.graph();
  const Graph& gb = b.graph();
  const std::size_t nb = gb.size();
  std::vector<VertexId> ids;
  Gradation grade;
  for (std::size_t i = 0; i < ga.size(); ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      ids.push_back("(" + ga.id(i) + "," + gb.id(j) + ")");
      grade.values.push_back(a.grade(i) + b.grade(j));
    }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  Connection nu;
  for (auto [x, y] : ga.edges())
    for (std::size_t j = 0; j < nb; ++j) {
      edges.emplace_back(x * nb + j, y * nb + j);
      nu.set(x * nb + j, y * nb + j, a.connection()(x, y));
    }
  for (std::size_t i = 0; i < ga.size(); ++i) {
    const std::int64_t sign = mod2(a.grade(i)) == 0 ? 1 : -1;
    for (auto [x, y] : gb.edges()) {
      edges.emplace_back(i * nb + x, i * nb + y);
      nu.set(i * nb + x, i * nb + y, sign * b.connection()(x, y));
    }
  }
  Graph g = Graph::from_indices(std::move(ids), edges);
  return ChainGraph(GradedGraph(std::move(g), std::move(grade)), std::move(nu));
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
  ChainComplex out;
  std::set<Grade> ks;
  for (const auto& [k, v] : a.basis) ks.insert(k);
  for (const auto& [k, v] : b.basis) ks.insert(k);
  for (Grade k : ks) {
    auto& basis = out.basis[k];
    if (auto it = a.basis.find(k); it != a.basis.end()) basis = it->second;
    if (auto it = b.basis.find(k); it != b.basis.end())
      basis.insert(basis.end(), it->second.begin(), it->second.end());
  }
  for (Grade k : ks) {
    if (!ks.count(k - 1)) continue;
    const IntMatrix da = a.d(k), db = b.d(k);
    IntMatrix d(da.rows() + db.rows(), da.cols() + db.cols());
    for (std::size_t i = 0; i < da.rows(); ++i)
      for (std::size_t j = 0; j < da.cols(); ++j) d(i, j) = da(i, j);
    for (std::size_t i = 0; i < db.rows(); ++i)
      for (std::size_t j = 0; j < db.cols(); ++j) d(da.rows() + i, da.cols() + j) = db(i, j);
    out.boundary[k] = std::move(d);
  }
  out.validate();
  return out;
}

ChainComplex tensor_product(const ChainComplex& a, const ChainComplex& b) {
  // Basis of degree n: pairs (x in A_i, y in B_{n-i}) by increasing i.
  struct Slot {
    Grade i, j;
    std::size_t x, y;
  };
  std::map<Grade, std::vector<Slot>> slots;
  for (const auto& [i, bx] : a.basis)
    for (const auto& [j, by] : b.basis)
      for (std::size_t x = 0; x < bx.size(); ++x)
        for (std::size_t y = 0; y < by.size(); ++y) slots[i + j].push_back({i, j, x, y});
  ChainComplex out;
  std::map<std::tuple<Grade, Grade, std::size_t, std::size_t>, std::size_t> index;
  for (const auto& [n, ss] : slots)
    for (std::size_t s = 0; s < ss.size(); ++s) {
      const auto& sl = ss[s];
      out.basis[n].push_back("(" + a.basis.at(sl.i)[sl.x] + "," + b.basis.at(sl.j)[sl.y] + ")");
      index[{sl.i, sl.j, sl.x, sl.y}] = s;
    }
  std::map<Grade, IntMatrix> da, db;
  for (const auto& [i, bx] : a.basis) da[i] = a.d(i);
  for (const auto& [j, by] : b.basis) db[j] = b.d(j);
  for (const auto& [n, ss] : slots) {
    if (!slots.count(n - 1)) continue;
    IntMatrix d(slots.at(n - 1).size(), ss.size());
    for (std::size_t s = 0; s < ss.size(); ++s) {
      const auto& sl = ss[s];
      const IntMatrix& ma = da.at(sl.i);
      for (std::size_t r = 0; r < ma.rows(); ++r)
        if (ma(r, sl.x) != 0) d(index.at({sl.i - 1, sl.j, r, sl.y}), s) += ma(r, sl.x);
      const IntMatrix& mb = db.at(sl.j);
      const std::int64_t sign = mod2(sl.i) == 0 ? 1 : -1;
      for (std::size_t r = 0; r < mb.rows(); ++r)
        if (mb(r, sl.y) != 0) d(index.at({sl.i, sl.j - 1, sl.x, r}), s) += sign * mb(r, sl.y);
    }
    out.boundary[n] = std::move(d);
  }
  out.validate();
  return out;
}

bool same_complex(const ChainComplex& a, const ChainComplex& b) {
  if (degrees_of(a.basis) != degrees_of(b.basis)) return false;
  std::map<Grade, std::vector<std::size_t>> perm;  // position in b of a's basis element
  for (Grade k : degrees_of(a.basis)) {
    const auto& ba = a.basis.at(k);
    const auto& bb = b.basis.at(k);
    if (ba.size() != bb.size()) return false;
    std::map<VertexId, std::size_t> where;
    for (std::size_t i = 0; i < bb.size(); ++i) where[bb[i]] = i;
    auto& p = perm[k];
    for (const auto& id : ba) {
      auto it = where.find(id);
      if (it == where.end()) return false;
      p.push_back(it->second);
    }
  }
  for (Grade k : degrees_of(a.basis)) {
    if (!perm.count(k - 1)) continue;
    const IntMatrix da = a.d(k), db = b.d(k);
    for (std::size_t r = 0; r < da.rows(); ++r)
      for (std::size_t c = 0; c < da.cols(); ++c)
        if (da(r, c) != db(perm.at(k - 1)[r], perm.at(k)[c])) return false;
  }
  return true;
}

HomologyTable kunneth(const HomologyTable& a, const HomologyTable& b) {
  if (a.coeff.kind != Coefficients::Kind::integers || b.coeff.kind != Coefficients::Kind::integers)
    throw InputError("kunneth: integer coefficients required");
  std::map<Grade, std::pair<std::size_t, std::vector<BigInt>>> acc;
  for (const auto& [i, ga] : a.groups)
    for (const auto& [j, gb] : b.groups) {
      auto& tens = acc[i + j];
      tens.first += ga.free_rank() * gb.free_rank();
      for (std::size_t r = 0; r < ga.free_rank(); ++r)
        tens.second.insert(tens.second.end(), gb.torsion().begin(), gb.torsion().end());
      for (std::size_t r = 0; r < gb.free_rank(); ++r)
        tens.second.insert(tens.second.end(), ga.torsion().begin(), ga.torsion().end());
      auto& tor = acc[i + j + 1];
      for (const auto& x : ga.torsion())
        for (const auto& y : gb.torsion()) {
          BigInt g;
          mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
          tens.second.push_back(g);
          tor.second.push_back(g);
        }
    }
  HomologyTable out = make_table(Coefficients::integers());
  for (const auto& [n, v] : acc) put(out, n, abelian_group_from_divisors(v.first, v.second));
  return out;
}

// ---- theorem checks ---------------------------------------------------------------

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::not_applicable: return "N/A";
  }
  return "?";
}

TorsionDualityReport verify_torsion_duality(const ChainGraph& cg) {
  TorsionDualityReport r;
  r.reference = "torsion duality of deformable chain graphs";
  if (!connected_deformable(cg) || graph_rank(cg.graph(), cg.connection()) == 0) {
    r.verdict = Verdict::not_applicable;
    r.details.push_back("requires a connected deformable chain graph with rank > 0");
    return r;
  }
  r.homology = homology(cg);
  r.cohomology = cohomology(cg);
  std::set<Grade> ks;
  for (const auto& [k, g] : r.homology.groups) ks.insert(k);
  for (const auto& [k, g] : r.cohomology.groups) ks.insert(k);
  for (Grade k : ks) {
    if (!r.homology.at(k).is_torsion())
      r.details.push_back("H_" + std::to_string(k) + " = " + r.homology.at(k).to_string() + " is not torsion");
    if (!r.cohomology.at(k).is_torsion())
      r.details.push_back("H^" + std::to_string(k) + " = " + r.cohomology.at(k).to_string() + " is not torsion");
  }
  for (Grade k : ks)
    for (Grade m : {k, k + 1})
      if (!(r.cohomology.at(m) == r.homology.at(m - 1)))
        r.details.push_back("H^" + std::to_string(m) + " = " + r.cohomology.at(m).to_string() + " but H_" +
                            std::to_string(m - 1) + " = " + r.homology.at(m - 1).to_string());
  std::sort(r.details.begin(), r.details.end());
  r.details.erase(std::unique(r.details.begin(), r.details.end()), r.details.end());
  r.verdict = r.details.empty() ? Verdict::pass : Verdict::fail;
  return r;
}

bool is_cyclic_extension(const AbelianGroup& whole, const AbelianGroup& other, const BigInt& cyclic_order) {
  if (cyclic_order <= 0) return false;
  if (whole.free_rank() != other.free_rank()) return false;
  std::set<BigInt> primes;
  for (const auto& d : whole.torsion())
    for (const auto& [p, e] : factorize(d)) primes.insert(p);
  for (const auto& d : other.torsion())
    for (const auto& [p, e] : factorize(d)) primes.insert(p);
  for (const auto& [p, e] : factorize(cyclic_order)) primes.insert(p);
  for (const auto& p : primes)
    if (!horizontal_strip(p_partition(whole, p), p_partition(other, p), valuation(cyclic_order, p)))
      return false;
  return true;
}

LiftReport lift_homology_report(const ChainGraph& cg, std::size_t v) {
  LiftReport r;
  r.reference = "homology change under lifting a bottom vertex";
  r.vertex = v;
  if (v >= cg.graph().size()) throw InputError("lift_homology_report: vertex out of range");
  if (!connected_deformable(cg) || !is_bottom_vertex(cg.graded(), v)) {
    r.verdict = Verdict::not_applicable;
    r.details.push_back("requires a connected deformable chain graph and a bottom vertex");
    return r;
  }
  r.rank = graph_rank(cg.graph(), cg.connection());
  if (r.rank == 0) {
    r.verdict = Verdict::not_applicable;
    r.details.push_back("rank is 0");
    return r;
  }
  r.q = cg.grade(v);
  const ChainGraph lifted(lift(cg.graded(), v), cg.connection());
  r.before = homology(cg);
  r.after = homology(lifted);
  std::set<Grade> ks;
  for (const auto& [k, g] : r.before.groups) ks.insert(k);
  for (const auto& [k, g] : r.after.groups) ks.insert(k);
  for (Grade k : ks)
    if (k != r.q && k != r.q + 1 && !(r.before.at(k) == r.after.at(k)))
      r.details.push_back("H_" + std::to_string(k) + " changed from " + r.before.at(k).to_string() + " to " +
                          r.after.at(k).to_string());
  for (const auto& k : positive_divisors(r.rank)) {
    const BigInt cofactor = BigInt(static_cast<long>(r.rank)) / k;
    if (is_cyclic_extension(r.before.at(r.q), r.after.at(r.q), k) &&
        is_cyclic_extension(r.after.at(r.q + 1), r.before.at(r.q + 1), cofactor))
      r.candidates.push_back(k);
  }
  if (r.candidates.empty())
    r.details.push_back("no divisor k of " + std::to_string(r.rank) + " relates H_" + std::to_string(r.q) +
                        " and H_" + std::to_string(r.q + 1));
  else
    r.k = r.candidates.front();
  r.verdict = r.details.empty() ? Verdict::pass : Verdict::fail;
  return r;
}

mpq_class characteristic_number_graded(const ChainGraph& cg) {
  const HomologyTable h = homology(cg);
  BigInt num = 1, den = 1;
  for (const auto& [k, g] : h.groups) {
    if (!g.is_torsion())
      throw DomainError("characteristic number: H_" + std::to_string(k) + " = " + g.to_string() + " is infinite");
    (mod2(k) == 0 ? num : den) *= g.order();
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

CheckReport field_vanishing_check(const ChainGraph& cg, std::uint64_t p) {
  CheckReport r;
  r.reference = "vanishing of field homology away from the rank";
  const Coefficients coeff = Coefficients::field(p);
  if (!connected_deformable(cg)) {
    r.verdict = Verdict::not_applicable;
    r.details.push_back("requires a connected deformation graph");
    return r;
  }
  const std::int64_t rank = graph_rank(cg.graph(), cg.connection());
  if (rank == 0 || (p != 0 && rank % static_cast<std::int64_t>(p) == 0)) {
    r.verdict = Verdict::not_applicable;
    r.details.push_back("rank " + std::to_string(rank) + (rank == 0 ? " is 0" : " is divisible by p"));
    return r;
  }
  const HomologyTable h = homology(cg, coeff), c = cohomology(cg, coeff);
  for (const auto& [k, g] : h.groups)
    r.details.push_back("H_" + std::to_string(k) + "(" + coeff.name() + ") = " + g.to_string());
  for (const auto& [k, g] : c.groups)
    r.details.push_back("H^" + std::to_string(k) + "(" + coeff.name() + ") = " + g.to_string());
  r.verdict = r.details.empty() ? Verdict::pass : Verdict::fail;
  return r;
}

MuProbe mu_probe(const ChainGraph& cg) {
  MuProbe out;
  const Graph& g = cg.graph();
  out.rank = graph_rank(g, cg.connection());
  out.chi_graded = characteristic_number_graded(cg);
  out.chi_ungraded = characteristic_number(g, cg.connection());
  auto evaluate = [&](const std::string& name, const std::map<Grade, std::int64_t>& mu_k) {
    MuProbe::Reading rd;
    rd.name = name;
    auto count = [&](Grade k) {
      auto it = mu_k.find(k);
      return it == mu_k.end() ? std::int64_t{0} : it->second;
    };
    // s: mu_i = 0 below 2s and mu_{2s+1} != 0.
    std::optional<Grade> s;
    if (!mu_k.empty()) {
      const Grade lo = mu_k.begin()->first;
      if (mod2(lo) == 1) s = (lo - 1) / 2;
      else if (count(lo + 1) != 0) s = lo / 2;
    }
    if (s) {
      std::int64_t mu = 0;
      const Grade hi = mu_k.rbegin()->first;
      for (Grade k = 0; 2 * (k + *s) <= hi; ++k) mu += k * (count(2 * (k + *s) + 1) - count(2 * (k + *s)));
      rd.mu = mu;
      mpq_class rhs(out.chi_ungraded);
      mpq_class base(static_cast<long>(out.rank));
      for (std::int64_t e = 0; e < std::llabs(mu); ++e) rhs = mu >= 0 ? mpq_class(rhs * base) : mpq_class(rhs / base);
      rd.matches = out.rank > 0 && rhs == out.chi_graded;
    }
    out.readings.push_back(std::move(rd));
  };
  std::map<Grade, std::int64_t> by_grade, by_valence;
  for (std::size_t v = 0; v < g.size(); ++v) {
    ++by_grade[cg.grade(v)];
    ++by_valence[static_cast<Grade>(g.degree(v))];
  }
  evaluate("grade", by_grade);
  evaluate("valence", by_valence);
  return out;
}

}  // namespace gad
