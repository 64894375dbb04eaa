#include <gtest/gtest.h>

#include "gad/errors.hpp"
#include "gad/fixtures.hpp"
#include "gad/homology.hpp"
#include "gad/rep_matrix.hpp"
#include "gad/smith.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace gad {
namespace {

using testing::make_rng;

IntMatrix mat(std::size_t r, std::size_t c, std::initializer_list<std::int64_t> xs) {
  IntMatrix m(r, c);
  auto it = xs.begin();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = *it++;
  return m;
}

ChainComplex projective_plane() {
  ChainComplex cx;
  cx.basis = {{0, {"p"}}, {1, {"e"}}, {2, {"f"}}};
  cx.boundary[1] = mat(1, 1, {0});
  cx.boundary[2] = mat(1, 1, {2});
  return cx;
}

TEST(Smith, RandomMatricesFactor) {
  auto rng = make_rng(20);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = static_cast<std::size_t>(testing::uniform(rng, 0, 5));
    const auto c = static_cast<std::size_t>(testing::uniform(rng, 0, 5));
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = testing::uniform(rng, -6, 6);
    const SmithForm s = smith_normal_form(m, true);
    ASSERT_TRUE(s.left && s.right);
    EXPECT_EQ(*s.left * to_big(m) * *s.right, smith_diagonal(r, c, s.divisors));
    EXPECT_EQ(abs(testing::laplace_det(*s.left)), 1);
    EXPECT_EQ(abs(testing::laplace_det(*s.right)), 1);
    EXPECT_EQ(s.divisors.size(), rank_q(m));
    for (std::size_t k = 1; k < s.divisors.size(); ++k) EXPECT_EQ(s.divisors[k] % s.divisors[k - 1], 0);
    for (const auto& d : s.divisors) EXPECT_GT(d, 0);
  }
}

// Determinant by Gaussian elimination over the rationals.
mpq_class rational_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) std::swap(a[p], a[c]), det = -det;
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const mpq_class f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

IntMatrix random_dense(testing::Rng& rng, std::size_t r, std::size_t c, std::int64_t max_abs) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = testing::uniform(rng, -max_abs, max_abs);
  return m;
}

TEST(Smith, ModularAgreesWithDirect) {
  auto rng = make_rng(28);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = static_cast<std::size_t>(testing::uniform(rng, 1, 7));
    const auto c = static_cast<std::size_t>(testing::uniform(rng, 1, 7));
    IntMatrix m = random_dense(rng, r, c, 4);
    // Duplicate a row now and then to lower the rank.
    if (r > 1 && testing::coin(rng, 0.3))
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = 2 * m(0, j);
    EXPECT_EQ(smith_normal_form_modular(to_big(m)).divisors, smith_normal_form(m, true).divisors) << "trial " << trial;
  }
}

TEST(Smith, DenseMatricesStayFast) {
  auto rng = make_rng(29);
  for (std::size_t n : {12u, 24u, 40u}) {
    const IntMatrix m = random_dense(rng, n, n, 3);
    const auto s = smith_normal_form(m);
    ASSERT_EQ(s.divisors.size(), n);
    BigInt prod = 1;
    for (const auto& d : s.divisors) prod *= d;
    EXPECT_EQ(mpq_class(prod), abs(rational_det(m))) << n;
  }
}

TEST(Smith, KnownForm) {
  const SmithForm s = smith_normal_form(mat(2, 2, {2, 4, 6, 8}));
  ASSERT_EQ(s.divisors.size(), 2u);
  EXPECT_EQ(s.divisors[0], 2);
  EXPECT_EQ(s.divisors[1], 4);
  EXPECT_TRUE(in_integer_image(mat(2, 1, {2, 0}), {BigInt(4), BigInt(0)}));
  EXPECT_FALSE(in_integer_image(mat(2, 1, {2, 0}), {BigInt(3), BigInt(0)}));
}

TEST(AbelianGroup, Normalizes) {
  EXPECT_EQ(AbelianGroup(0, {}).to_string(), "0");
  EXPECT_EQ(AbelianGroup(1, {}).to_string(), "Z");
  EXPECT_EQ(AbelianGroup(2, {2, 6}).to_string(), "Z^2 ⊕ Z/2 ⊕ Z/6");
  EXPECT_EQ(AbelianGroup(0, {1, 2}), AbelianGroup(0, {2}));
  EXPECT_THROW(AbelianGroup(0, {4, 6}), InputError);
  EXPECT_THROW(AbelianGroup(0, {0}), InputError);
  EXPECT_EQ(abelian_group_from_divisors(0, {2, 3}), AbelianGroup(0, {6}));
  EXPECT_EQ(abelian_group_from_divisors(0, {4, 6}), AbelianGroup(0, {2, 12}));
  EXPECT_EQ(AbelianGroup(0, {2, 6}).order(), 12);
  EXPECT_THROW(AbelianGroup(1, {}).order(), DomainError);
}

TEST(Coefficients, Names) {
  EXPECT_EQ(Coefficients::integers().name(), "Z");
  EXPECT_EQ(Coefficients::rationals().name(), "Q");
  EXPECT_EQ(Coefficients::prime(5).name(), "Fp:5");
  EXPECT_EQ(Coefficients::field(0), Coefficients::rationals());
  EXPECT_THROW(Coefficients::prime(6), InputError);
}

TEST(Homology, ProjectivePlane) {
  const auto cx = projective_plane();
  const auto hz = homology(cx);
  EXPECT_EQ(hz.at(0), AbelianGroup(1, {}));
  EXPECT_EQ(hz.at(1), AbelianGroup(0, {2}));
  EXPECT_TRUE(hz.at(2).is_zero());
  const auto h2 = homology(cx, Coefficients::prime(2));
  EXPECT_EQ(h2.at(1).free_rank(), 1u);
  EXPECT_EQ(h2.at(2).free_rank(), 1u);
  const auto hq = homology(cx, Coefficients::rationals());
  EXPECT_EQ(hq.total_free_rank(), 1u);

  CochainComplex co;
  co.basis = cx.basis;
  co.coboundary[0] = mat(1, 1, {0});
  co.coboundary[1] = mat(1, 1, {2});
  const auto hc = cohomology(co);
  EXPECT_EQ(hc.at(0), AbelianGroup(1, {}));
  EXPECT_TRUE(hc.at(1).is_zero());
  EXPECT_EQ(hc.at(2), AbelianGroup(0, {2}));
}

TEST(Homology, RejectsNonComplex) {
  ChainComplex cx;
  cx.basis = {{0, {"a"}}, {1, {"b"}}, {2, {"c"}}};
  cx.boundary[1] = mat(1, 1, {1});
  cx.boundary[2] = mat(1, 1, {1});
  EXPECT_THROW(cx.validate(), DomainError);
  cx.boundary[2] = mat(2, 1, {1, 1});
  EXPECT_THROW(cx.validate(), DomainError);
}

TEST(ChainGraph, RejectsBrokenChainCondition) {
  // v - a - w, v - b - w with equal signs: the two-step sum is 2.
  const Graph g({"v", "a", "w", "b"}, {{"v", "a"}, {"a", "w"}, {"w", "b"}, {"b", "v"}});
  const GradedGraph gg(g, Gradation{{0, 1, 2, 1}});
  const Connection ones = constant_connection(g, 1);
  const auto check = is_chain_graph(gg, ones);
  ASSERT_FALSE(check.valid);
  EXPECT_EQ(check.violations.front().sum, 2);
  EXPECT_THROW(ChainGraph(gg, ones), DomainError);
}

// The worked example, with boundaries transcribed independently of the
// fixture builder.
TEST(ChainGraph, WorkedExampleTorsion) {
  const auto f = fixtures::ex13();
  const Graph& g = f.graph;
  const Connection& nu = *f.connection;
  auto vij = [](int a, int b) { return a < b ? "v" + std::to_string(a) + std::to_string(b) : "v" + std::to_string(b) + std::to_string(a); };
  auto sgn = [](int a, int b) { return a < b ? 1 : -1; };
  const int faces[3][4][2] = {{{1, 2}, {2, 3}, {3, 4}, {4, 1}}, {{1, 3}, {3, 4}, {4, 2}, {2, 1}}, {{1, 4}, {4, 2}, {2, 3}, {3, 1}}};
  for (int k = 0; k < 3; ++k) {
    const std::size_t e = g.index("e" + std::to_string(k + 1));
    EXPECT_EQ(g.degree(e), 4u);
    for (const auto& t : faces[k]) EXPECT_EQ(nu(e, g.index(vij(t[0], t[1]))), sgn(t[0], t[1]));
  }
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      EXPECT_EQ(nu(g.index(vij(i, j)), g.index("v" + std::to_string(i))), 1);
      EXPECT_EQ(nu(g.index(vij(i, j)), g.index("v" + std::to_string(j))), -1);
    }

  const ChainGraph cg(GradedGraph(g, *f.gradation), nu);
  const auto h = homology(cg);
  EXPECT_EQ(h.groups.size(), 1u);
  EXPECT_EQ(h.at(2), AbelianGroup(0, {2}));

  // The cycle is closed.
  const auto cycle = fixtures::ex13_cycle();
  for (std::size_t x = 0; x < g.size(); ++x) {
    if (cg.grade(x) != 1) continue;
    std::int64_t sum = 0;
    for (const auto& [id, c] : cycle) sum += c * nu(g.index(id), x);
    EXPECT_EQ(sum, 0) << g.id(x);
  }
  // Twice the cycle bounds: search small integer combinations of de_k.
  std::vector<std::string> grade2;
  for (std::size_t x = 0; x < g.size(); ++x)
    if (cg.grade(x) == 2) grade2.push_back(g.id(x));
  auto boundary_of = [&](std::array<std::int64_t, 3> k) {
    std::map<std::string, std::int64_t> out;
    for (int e = 0; e < 3; ++e)
      for (const auto& id : grade2) out[id] += k[e] * nu(g.index("e" + std::to_string(e + 1)), g.index(id));
    return out;
  };
  std::map<std::string, std::int64_t> twice;
  for (const auto& id : grade2) twice[id] = 0;
  for (const auto& [id, c] : cycle) twice[id] = 2 * c;
  std::optional<std::array<std::int64_t, 3>> found;
  for (std::int64_t a = -3; a <= 3 && !found; ++a)
    for (std::int64_t b = -3; b <= 3 && !found; ++b)
      for (std::int64_t c = -3; c <= 3 && !found; ++c)
        if (boundary_of({a, b, c}) == twice) found = std::array<std::int64_t, 3>{a, b, c};
  ASSERT_TRUE(found);
  // The three boundaries are independent (a nonzero 3x3 minor), so the
  // rational preimage of the cycle is found/2, which is not integral.
  bool independent = false;
  for (std::size_t r0 = 0; r0 < grade2.size() && !independent; ++r0)
    for (std::size_t r1 = r0 + 1; r1 < grade2.size() && !independent; ++r1)
      for (std::size_t r2 = r1 + 1; r2 < grade2.size() && !independent; ++r2) {
        IntMatrix m(3, 3);
        const std::size_t rows[3] = {r0, r1, r2};
        for (int i = 0; i < 3; ++i)
          for (int e = 0; e < 3; ++e) m(i, e) = nu(g.index("e" + std::to_string(e + 1)), g.index(grade2[rows[i]]));
        independent = testing::laplace_det(m) != 0;
      }
  EXPECT_TRUE(independent);
  EXPECT_TRUE(std::any_of(found->begin(), found->end(), [](std::int64_t x) { return x % 2 != 0; }));
}

TEST(ChainGraph, UniversalCoefficients) {
  auto rng = make_rng(21);
  int nontrivial = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const Graph g = testing::random_bipartite(rng, static_cast<std::size_t>(testing::uniform(rng, 1, 10)), 0.5);
    const Connection nu = testing::random_connection(rng, g, 3);
    const Gradation grade = testing::random_chain_gradation(rng, g, nu, representation_gradation(g), 15);
    const ChainGraph cg(GradedGraph(g, grade), nu);
    const auto h = homology(cg);
    const auto c = cohomology(cg);
    std::set<Grade> degrees;
    for (const auto& [k, x] : h.groups) degrees.insert(k), degrees.insert(k + 1);
    for (const auto& [k, x] : c.groups) degrees.insert(k);
    for (Grade k : degrees) {
      EXPECT_EQ(c.at(k).free_rank(), h.at(k).free_rank()) << k;
      EXPECT_EQ(c.at(k).torsion(), h.at(k - 1).torsion()) << k;
    }
    for (const auto& [k, x] : h.groups) nontrivial += !x.torsion().empty();
  }
  EXPECT_GT(nontrivial, 0);
}

TEST(ChainGraph, GlobalDimensionEqualsFreeRank) {
  auto rng = make_rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    testing::DeformationSample s;
    if (trial % 2) {
      s = testing::random_deformable_sum(rng, 12);
    } else {
      s.graph = testing::random_bipartite(rng, static_cast<std::size_t>(testing::uniform(rng, 1, 12)), 0.4);
      s.nu = testing::random_connection(rng, s.graph, 3);
      s.grade = representation_gradation(s.graph);
    }
    const std::size_t d = global_dimension(representation_matrix(s.graph, s.nu));
    for (int k = 0; k < 5; ++k) {
      const Gradation grade = testing::random_chain_gradation(rng, s.graph, s.nu, representation_gradation(s.graph), 25);
      ASSERT_TRUE(gradations_equivalent(s.graph, grade, representation_gradation(s.graph)));
      const ChainGraph cg(GradedGraph(s.graph, grade), s.nu);
      EXPECT_EQ(homology(cg).total_free_rank(), d) << "trial " << trial;
    }
  }
}

ChainGraph as_chain(const testing::DeformationSample& s) { return ChainGraph(GradedGraph(s.graph, s.grade), s.nu); }

TEST(ChainGraph, ProductIsTensorProduct) {
  auto rng = make_rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    ChainGraph a = as_chain(testing::random_deformation_graph(rng, 6, "a"));
    ChainGraph b = as_chain(testing::random_deformation_graph(rng, 6, "b"));
    if (trial % 3 == 0) {
      // A factor that is usually not deformable.
      const Graph g = testing::random_bipartite(rng, static_cast<std::size_t>(testing::uniform(rng, 1, 6)), 0.6);
      a = ChainGraph(GradedGraph(g, representation_gradation(g)), testing::random_connection(rng, g, 3));
    }
    const ChainGraph p = product_chain_graph(a, b);
    const ChainComplex pc = chain_complex(p);
    pc.validate();
    EXPECT_TRUE(same_complex(pc, tensor_product(chain_complex(a), chain_complex(b))));
    EXPECT_EQ(homology(p), kunneth(homology(a), homology(b)));
  }
}

TEST(ChainGraph, KunnethTorsionFree) {
  // Two single edges with weight 1: both acyclic, and so is the product.
  const Graph g({"p", "q"}, {{"p", "q"}});
  Connection one;
  one.set(0, 1, 1);
  const ChainGraph e(GradedGraph(g, Gradation{{0, 1}}), one);
  const ChainGraph pt(GradedGraph(Graph({"o"}, {}), Gradation{{0}}), Connection{});
  EXPECT_TRUE(homology(product_chain_graph(e, e)).all_zero());
  EXPECT_EQ(homology(product_chain_graph(pt, pt)).at(0), AbelianGroup(1, {}));
}

TEST(ChainGraph, DisjointUnionAddsHomology) {
  const auto f = fixtures::ex13();
  const ChainGraph a(GradedGraph(f.graph, *f.gradation), *f.connection);
  const ChainGraph pt(GradedGraph(Graph({"o"}, {}), Gradation{{5}}), Connection{});
  const auto h = homology(disjoint_union(a, pt));
  EXPECT_EQ(h.at(2), AbelianGroup(0, {2}));
  EXPECT_EQ(h.at(5), AbelianGroup(1, {}));
  EXPECT_THROW(disjoint_union(a, a), InputError);
}

TEST(ChainGraph, TorsionDuality) {
  auto rng = make_rng(24);
  int applicable = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = testing::random_deformation_graph(rng, 10);
    const Gradation grade = testing::random_chain_gradation(rng, s.graph, s.nu, s.grade, 20);
    const ChainGraph cg(GradedGraph(s.graph, grade), s.nu);
    const auto rep = verify_torsion_duality(cg);
    if (s.graph.size() == 1) {
      EXPECT_EQ(rep.verdict, Verdict::not_applicable);
      continue;
    }
    ++applicable;
    EXPECT_EQ(rep.verdict, Verdict::pass);
    for (const auto& [k, x] : rep.homology.groups) EXPECT_TRUE(x.is_torsion());
  }
  EXPECT_GT(applicable, 50);
}

TEST(ChainGraph, GradedCharacteristicNumber) {
  auto rng = make_rng(25);
  for (int trial = 0; trial < 60; ++trial) {
    const auto s = testing::random_deformation_graph(rng, 10);
    if (s.graph.size() == 1) continue;
    const ChainGraph cg = as_chain(s);
    const BigInt chi = characteristic_number(s.graph, s.nu);
    // Rows sit at grade 0: H_0 is the cokernel, of order |det|.
    EXPECT_EQ(characteristic_number_graded(cg), mpq_class(chi));
    const auto probe = mu_probe(cg);
    EXPECT_EQ(probe.readings.size(), 2u);
    EXPECT_EQ(probe.chi_ungraded, chi);
  }
}

TEST(ChainGraph, FieldVanishing) {
  auto rng = make_rng(26);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = testing::random_deformation_graph(rng, 10);
    const ChainGraph cg = as_chain(s);
    const std::int64_t r = graph_rank(s.graph, s.nu);
    for (std::uint64_t p : {2u, 3u, 5u}) {
      const auto rep = field_vanishing_check(cg, p);
      if (r == 0 || r % static_cast<std::int64_t>(p) == 0) {
        EXPECT_EQ(rep.verdict, Verdict::not_applicable);
      } else {
        EXPECT_EQ(rep.verdict, Verdict::pass);
        EXPECT_TRUE(homology(cg, Coefficients::prime(p)).all_zero());
      }
    }
  }
}

TEST(ChainGraph, LiftingFourCycle) {
  const auto f = fixtures::four_cycle();
  const ChainGraph cg(GradedGraph(f.graph, *f.gradation), *f.connection);
  const auto rep = lift_homology_report(cg, f.graph.index("v"));
  EXPECT_EQ(rep.verdict, Verdict::pass);
  EXPECT_EQ(rep.rank, 2);
  ASSERT_GT(rep.k, 0);
  EXPECT_EQ(2 % rep.k.get_si(), 0);
  EXPECT_TRUE(rep.before.all_zero());
  EXPECT_EQ(rep.after.at(1), AbelianGroup(0, {2}));
}

TEST(ChainGraph, LiftingRandom) {
  auto rng = make_rng(27);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto s = testing::random_deformation_graph(rng, 10);
    if (s.graph.size() == 1) continue;
    const Gradation grade = testing::random_chain_gradation(rng, s.graph, s.nu, s.grade, 10);
    const ChainGraph cg(GradedGraph(s.graph, grade), s.nu);
    const auto ext = classify_extreme_vertices(cg.graded());
    for (std::size_t v : ext.bottom) {
      const auto rep = lift_homology_report(cg, v);
      EXPECT_EQ(rep.verdict, Verdict::pass);
      EXPECT_EQ(BigInt(static_cast<long>(rep.rank)) % rep.k, 0);
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

}  // namespace
}  // namespace gad
