// Runs the acceptance criteria in order and prints one PASS/FAIL line each.
// Exit status is 0 only if every criterion passes.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "gad/diamond.hpp"
#include "gad/errors.hpp"
#include "gad/fixtures.hpp"
#include "gad/homology.hpp"
#include "gad/io.hpp"
#include "gad/lie.hpp"
#include "gad/rep_matrix.hpp"
#include "gad/smith.hpp"
#include "gad/weight_an.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace gad {
namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

ChainGraph chain_of(const GraphFile& f) { return ChainGraph(GradedGraph(f.graph, *f.gradation), *f.connection); }

ChainGraph chain_of(const testing::DeformationSample& s) {
  return ChainGraph(GradedGraph(s.graph, s.grade), s.nu);
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Components of the exterior chain graph of strictly upper triangular 4x4
// matrices, shared by several criteria.
const std::vector<ComponentHomology>& a4_components() {
  static const auto parts = component_decomposition(exterior_chain_graph(type_a(3)), 2);
  return parts;
}

Outcome worked_example() {
  Outcome out;
  const auto f = fixtures::ex13();
  const ChainGraph cg = chain_of(f);
  const auto h = homology(cg);
  out.require(h.groups.size() == 1 && h.at(2) == AbelianGroup(0, {2}), "homology is " + format_homology(h));

  // The cycle is closed, twice it bounds, and it does not bound itself.
  const Graph& g = f.graph;
  const auto cycle = fixtures::ex13_cycle();
  for (std::size_t x = 0; x < g.size(); ++x) {
    if (cg.grade(x) != 1) continue;
    std::int64_t sum = 0;
    for (const auto& [id, c] : cycle) sum += c * cg.connection()(g.index(id), x);
    out.require(sum == 0, "cycle has nonzero boundary at " + g.id(x));
  }
  std::vector<std::size_t> rows, cols;
  for (std::size_t x = 0; x < g.size(); ++x) {
    if (cg.grade(x) == 2) rows.push_back(x);
    if (cg.grade(x) == 3) cols.push_back(x);
  }
  IntMatrix d(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) d(r, c) = cg.connection()(rows[r], cols[c]);
  std::vector<BigInt> z(rows.size(), 0), twice(rows.size(), 0);
  for (const auto& [id, c] : cycle)
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (g.id(rows[r]) == id) z[r] = c, twice[r] = 2 * c;
  out.require(!in_integer_image(d, z), "the cycle bounds");
  out.require(in_integer_image(d, twice), "twice the cycle does not bound");
  out.detail = out.ok ? "H_2 = Z/2, cycle of order 2" : out.detail;
  return out;
}

Outcome ungradable_diamond() {
  Outcome out;
  const Graph g = fixtures::d1().graph;
  out.require(is_diamond_graph(g).is_diamond, "not a diamond graph");
  out.require(diamond_rank(g) == 5, "rank " + std::to_string(diamond_rank(g)));
  out.require(!is_gradable(g), "reported gradable");
  if (out.ok) out.detail = "diamond, rank 5, ungradable";
  return out;
}

Outcome odd_volume() {
  Outcome out;
  const Graph g = fixtures::d2().graph;
  out.require(is_gradable(g).has_value(), "not gradable");
  out.require(is_diamond_graph(g).is_diamond, "not a diamond graph");
  out.require(diamond_rank(g) == 5, "rank " + std::to_string(diamond_rank(g)));
  const std::size_t vol = volume(g, constant_connection(g, 1));
  out.require(vol == 11, "volume " + std::to_string(vol));
  const bool found = find_signature(g).has_value();
  const bool predicted = signature_obstruction(g).has_value();
  out.require(!found, "a signature was found");
  out.require(predicted, "the size obstruction does not fire");
  if (out.ok) out.detail = "volume 11, rank 5, no signature, obstruction agrees";
  return out;
}

Outcome omega_sweep() {
  Outcome out;
  std::size_t admissible = 0, empty = 0;
  for (std::size_t n = 2; n <= 4; ++n) {
    const WeightAtlas atlas(n);
    const auto total = static_cast<std::int64_t>(n * (n + 1) / 2);
    Weight w(n + 1, 0);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t pos, std::int64_t left) {
      if (pos == n) {
        w[pos] = left;
        if (is_admissible_weight(w)) {
          ++admissible;
          const WeightComponent c = weight_subgraph(atlas, w);
          out.require(!c.vertices.empty() && c.chain.graph().connected(), "component of " + to_string(w));
        } else {
          ++empty;
          out.require(atlas.matrices(w).empty(), "matrices of inadmissible " + to_string(w));
        }
        return;
      }
      for (std::int64_t v = 0; v <= left; ++v) {
        w[pos] = v;
        rec(pos + 1, left - v);
      }
    };
    rec(0, total);
    out.require(admissible == std::size_t{7} + (n >= 3 ? 38 : 0) + (n >= 4 ? 291 : 0), "admissible count");
  }
  if (out.ok) out.detail = std::to_string(admissible) + " connected, " + std::to_string(empty) + " empty";
  return out;
}

Outcome rank_formula() {
  Outcome out;
  std::size_t weights = 0, deltas = 0;
  for (std::size_t n = 0; n <= 4; ++n) {
    const WeightAtlas atlas(n);
    for (const auto& w : enumerate_omega(n)) {
      ++weights;
      out.require(rank_closed_form(w) == counted_rank(weight_subgraph(atlas, w)), "rank of " + to_string(w));
      for (std::size_t s = 0; s <= n; ++s)
        for (std::size_t t = 0; t <= n; ++t) {
          if (s == t) continue;
          const auto rep = rank_delta_check(atlas, w, s, t);
          if (rep.verdict == Verdict::not_applicable) continue;
          ++deltas;
          out.require(rep.verdict == Verdict::pass && rep.counted_delta == w[t] - w[s] - 1,
                      "delta " + to_string(w) + " " + std::to_string(s) + "->" + std::to_string(t));
        }
    }
  }
  if (out.ok) out.detail = std::to_string(weights) + " weights, " + std::to_string(deltas) + " shifts";
  return out;
}

Outcome kostant() {
  Outcome out;
  for (std::size_t n = 2; n <= 3; ++n) {
    const ChainGraph cg = exterior_chain_graph(type_a(n));
    const auto parts = component_decomposition(cg, 2);
    std::size_t rank0 = 0;
    for (const auto& p : parts) rank0 += p.rank && *p.rank == 0;
    const HomologyTable sum = sum_homology(parts);
    const HomologyTable full = homology(cg);
    out.require(rank0 == factorial(n + 1), "rank-0 components for n = " + std::to_string(n));
    out.require(full.total_free_rank() == factorial(n + 1), "free rank for n = " + std::to_string(n));
    out.require(full == sum, "component sum differs from the full complex for n = " + std::to_string(n));
  }
  if (out.ok) out.detail = "6 and 24";
  return out;
}

Outcome torsion_duality() {
  Outcome out;
  std::size_t checked = 0;
  for (const auto& p : a4_components()) {
    if (!p.rank || *p.rank == 0) continue;
    ++checked;
    const auto rep = verify_torsion_duality(p.chain);
    out.require(rep.verdict == Verdict::pass, "component at " + p.chain.graph().id(0));
    for (const auto& [k, x] : rep.homology.groups) out.require(x.is_torsion(), "free part in degree " + std::to_string(k));
  }
  out.require(checked > 0, "no components");
  if (out.ok) out.detail = std::to_string(checked) + " components";
  return out;
}

bool chi_relation(const Graph& g, const Connection& nu) {
  const BigInt chi = characteristic_number(g, nu);
  const BigInt r = g.size() == 1 ? BigInt(0) : BigInt(static_cast<long>(graph_rank(g, nu)));
  BigInt power;
  mpz_pow_ui(power.get_mpz_t(), r.get_mpz_t(), volume(g, nu));
  return chi * chi == power;
}

Outcome chi_squared() {
  Outcome out;
  const WeightAtlas atlas(3);
  std::size_t components = 0;
  for (const auto& w : enumerate_omega(3)) {
    const WeightComponent c = weight_subgraph(atlas, w);
    ++components;
    out.require(chi_relation(c.chain.graph(), c.chain.connection()), "component " + to_string(w));
  }
  auto rng = testing::make_rng(1008);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = testing::random_deformation_graph(rng, 10);
    out.require(chi_relation(s.graph, s.nu), "random graph " + std::to_string(trial));
  }
  if (out.ok) out.detail = std::to_string(components) + " components, 200 random graphs";
  return out;
}

Outcome lifting() {
  Outcome out;
  auto check = [&](const ChainGraph& cg, std::size_t v, const std::string& what) {
    const auto rep = lift_homology_report(cg, v);
    out.require(rep.verdict == Verdict::pass, what + ": " + (rep.details.empty() ? "" : rep.details.front()));
    out.require(rep.k > 0 && BigInt(static_cast<long>(rep.rank)) % rep.k == 0, what + ": k does not divide the rank");
  };
  const auto f = fixtures::four_cycle();
  check(chain_of(f), f.graph.index("v"), "four-cycle");
  std::size_t used = 0;
  for (const auto& p : a4_components()) {
    if (used == 10) break;
    if (!p.rank || *p.rank == 0) continue;
    const auto ext = classify_extreme_vertices(p.chain.graded());
    if (ext.bottom.empty()) continue;
    check(p.chain, ext.bottom.front(), "component at " + p.chain.graph().id(0));
    ++used;
  }
  out.require(used == 10, "only " + std::to_string(used) + " components with a bottom vertex");
  if (out.ok) out.detail = "four-cycle and 10 components";
  return out;
}

Outcome products() {
  Outcome out;
  auto rng = testing::make_rng(1010);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testing::random_deformation_graph(rng, 6, "a");
    const auto b = testing::random_deformation_graph(rng, 6, "b");
    const ChainGraph prod = product_chain_graph(chain_of(a), chain_of(b));
    out.require(same_complex(chain_complex(prod), tensor_product(chain_complex(chain_of(a)), chain_complex(chain_of(b)))),
                "tensor complex, trial " + std::to_string(trial));
    const RepMatrix pm = representation_matrix(prod.graph(), prod.connection());
    const RepMatrix om = orthogonal_product(representation_matrix(a.graph, a.nu), representation_matrix(b.graph, b.nu));
    const auto w = label_witness(om, pm);
    out.require(w && replay(om.entries, *w) == pm.entries, "orthogonal product, trial " + std::to_string(trial));
  }
  const WeightAtlas atlas(4);
  std::size_t reducible = 0;
  for (const auto& w : enumerate_omega(4)) {
    if (!is_reducible(w)) continue;
    ++reducible;
    const auto rep = verify_product_iso(atlas, w);
    out.require(rep.verdict == Verdict::pass && rep.size == rep.size_first * rep.size_second, "weight " + to_string(w));
  }
  if (out.ok) out.detail = "100 pairs, " + std::to_string(reducible) + " reducible weights";
  return out;
}

Outcome global_dimension_invariance() {
  Outcome out;
  auto rng = testing::make_rng(1011);
  for (int trial = 0; trial < 100; ++trial) {
    testing::DeformationSample s;
    if (trial % 2) {
      s = testing::random_deformable_sum(rng, 12);
    } else {
      s.graph = testing::random_bipartite(rng, static_cast<std::size_t>(testing::uniform(rng, 1, 12)), 0.4);
      s.nu = testing::random_connection(rng, s.graph, 3);
    }
    const Gradation rep = representation_gradation(s.graph);
    const std::size_t d = global_dimension(representation_matrix(s.graph, s.nu));
    for (int k = 0; k < 5; ++k) {
      const Gradation grade = testing::random_chain_gradation(rng, s.graph, s.nu, rep, 25);
      const ChainGraph cg(GradedGraph(s.graph, grade), s.nu);
      out.require(homology(cg).total_free_rank() == d, "trial " + std::to_string(trial));
    }
  }
  if (out.ok) out.detail = "100 graphs x 5 gradations";
  return out;
}

Outcome root_systems() {
  Outcome out;
  for (std::size_t n = 1; n <= 4; ++n) {
    const LieBasis lb = type_a(n);
    out.require(!testing::structure_mismatch(lb, testing::type_a_matrices(n)), "type A structure constants");
    out.require(is_diamond_root_system(lb).ok, "type A fails for n = " + std::to_string(n));
  }
  const LieBasis c3 = read_lie_file(std::string(GAD_DATA_DIR) + "/c3.json");
  const auto mismatch = testing::structure_mismatch(c3, testing::symplectic_matrices());
  out.require(!mismatch, "c3 fixture disagrees with the matrix model at " + mismatch.value_or(""));
  out.require(!is_diamond_root_system(c3).ok, "c3 passes");
  const ChainGraph cg = exterior_chain_graph(type_a(3));
  std::size_t diamonds = 0;
  for (const auto& d : enumerate_diamonds(cg.graph())) {
    const int t = classify_diamond(type_a(3), d);
    out.require(t >= 1 && t <= 6, "diamond type " + std::to_string(t));
    ++diamonds;
  }
  if (out.ok) out.detail = "type A n <= 4 pass, c3 fails, " + std::to_string(diamonds) + " diamonds typed";
  return out;
}

Outcome field_vanishing() {
  Outcome out;
  std::size_t checks = 0;
  for (std::uint64_t p : {2u, 3u, 5u}) {
    const auto rep = torsion_exclusion_check(a4_components(), p);
    out.require(rep.verdict == Verdict::pass, "torsion exclusion at p = " + std::to_string(p));
    checks += rep.checked;
    for (const auto& c : a4_components()) {
      if (!c.rank || *c.rank == 0 || *c.rank % static_cast<std::int64_t>(p) == 0) continue;
      out.require(field_vanishing_check(c.chain, p).verdict == Verdict::pass,
                  "field vanishing at p = " + std::to_string(p));
      const auto hp = homology(c.chain, Coefficients::prime(p));
      out.require(hp.total_free_rank() == c.homology.total_free_rank(), "mod-p dimension");
    }
  }
  if (out.ok) out.detail = std::to_string(checks) + " component checks";
  return out;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
  double limit_seconds = 0;  // 0: no limit
};

}  // namespace
}  // namespace gad

int main() {
  using namespace gad;
  const std::vector<Criterion> criteria = {
      {"torsion example", worked_example, 1},
      {"ungradable diamond graph", ungradable_diamond, 1},
      {"odd volume diamond graph", odd_volume, 1},
      {"admissible weight sweep", omega_sweep, 60},
      {"rank formula", rank_formula},
      {"rank-0 components", kostant},
      {"torsion duality", torsion_duality},
      {"characteristic number", chi_squared},
      {"lifting relations", lifting},
      {"products", products},
      {"global dimension", global_dimension_invariance},
      {"root-system axioms", root_systems},
      {"field vanishing", field_vanishing},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.ok && criteria[i].limit_seconds > 0 && secs > criteria[i].limit_seconds) {
      out.ok = false;
      out.detail += " (over the time limit)";
    }
    failed += !out.ok;
    std::printf("%s %2zu %-26s %.2fs  %s\n", out.ok ? "PASS" : "FAIL", i + 1, criteria[i].name, secs, out.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
