#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "gad/diamond.hpp"
#include "gad/errors.hpp"
#include "gad/io.hpp"
#include "gad/lie.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace gad {
namespace {

using testing::structure_mismatch;

LieBasis c3() { return read_lie_file(std::string(GAD_DATA_DIR) + "/c3.json"); }

// d(x_1 ... x_k) = sum_{i<j} (-1)^(i+j) [x_i, x_j] x_1 .. ^i .. ^j .. x_k,
// with each word sorted by counting transpositions.
std::map<std::uint64_t, std::int64_t> boundary_oracle(const LieBasis& lb, std::uint64_t mask) {
  std::vector<std::size_t> xs;
  for (std::size_t k = 0; k < lb.size(); ++k)
    if (mask >> k & 1) xs.push_back(k);
  std::map<std::uint64_t, std::int64_t> out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      for (auto [s, c] : lb.bracket(xs[i], xs[j])) {
        std::vector<std::size_t> word{s};
        for (std::size_t k = 0; k < xs.size(); ++k)
          if (k != i && k != j) word.push_back(xs[k]);
        std::int64_t sign = (i + j) % 2 == 0 ? 1 : -1;
        for (std::size_t p = 0; p < word.size(); ++p)
          for (std::size_t q = p + 1; q < word.size(); ++q)
            if (word[p] > word[q]) sign = -sign;
        std::sort(word.begin(), word.end());
        if (std::adjacent_find(word.begin(), word.end()) != word.end()) continue;
        std::uint64_t w = 0;
        for (std::size_t x : word) w |= std::uint64_t{1} << x;
        out[w] += sign * c;
      }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Permutations of n+1 letters counted by inversions.
std::vector<std::size_t> mahonian(std::size_t n) {
  std::vector<std::size_t> p(n + 1);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::vector<std::size_t> count(n * (n + 1) / 2 + 1, 0);
  do {
    std::size_t inv = 0;
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = a + 1; b < p.size(); ++b) inv += p[a] > p[b];
    ++count[inv];
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

TEST(Lie, TypeAIndexOrder) {
  const LieBasis lb = type_a(3);
  EXPECT_EQ(lb.symbols(), (std::vector<std::string>{"e01", "e12", "e02", "e23", "e13", "e03"}));
  for (std::size_t j = 1; j <= 4; ++j)
    for (std::size_t i = 0; i < j; ++i) EXPECT_EQ(type_a(4).symbol(type_a_index(i, j)), "e" + std::to_string(i) + std::to_string(j));
}

TEST(Lie, TypeAMatchesMatrixCommutator) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const LieBasis lb = type_a(n);
    EXPECT_EQ(structure_mismatch(lb, testing::type_a_matrices(n)), std::nullopt);
    EXPECT_TRUE(validate_lie(lb).valid);
  }
}

TEST(Lie, SymplecticFixtureMatchesMatrixCommutator) {
  const LieBasis lb = c3();
  EXPECT_EQ(lb.size(), 9u);
  EXPECT_EQ(lb.table().size(), 10u);
  EXPECT_EQ(structure_mismatch(lb, testing::symplectic_matrices()), std::nullopt);
  EXPECT_TRUE(validate_lie(lb).valid);
  const auto rs = is_diamond_root_system(lb);
  EXPECT_FALSE(rs.ok);
  EXPECT_EQ(rs.failed_axiom, 2);
}

TEST(Lie, RejectsBadBases) {
  using Key = std::pair<std::size_t, std::size_t>;
  EXPECT_THROW(LieBasis({"x", "x"}, {}), InputError);
  EXPECT_THROW(LieBasis({"x", ""}, {}), InputError);
  EXPECT_THROW(LieBasis({"x", "y"}, {{Key{0, 0}, {{1, 1}}}}), InputError);
  EXPECT_THROW(LieBasis({"x", "y"}, {{Key{0, 1}, {{1, 2}}}}), InputError);
  // [x,y] = x, [y,z] = y: the Jacobi sum for (x, y, z) is x.
  const LieBasis bad({"x", "y", "z"}, {{Key{0, 1}, {{1, 0}}}, {Key{1, 2}, {{1, 1}}}});
  const auto jc = validate_lie(bad);
  EXPECT_FALSE(jc.valid);
  ASSERT_TRUE(jc.triple);
  EXPECT_THROW(parse_lie_json(R"({"symbols":["x","y","z"],"brackets":[{"x":"x","y":"y","terms":[{"c":1,"z":"x"}]},{"x":"y","y":"z","terms":[{"c":1,"z":"y"}]}]})"),
               InputError);
  // Stored antisymmetrically.
  const LieBasis flipped({"x", "y"}, {{Key{1, 0}, {{3, 1}}}});
  EXPECT_EQ(flipped.bracket(0, 1), (LieElement{{1, -3}}));
  EXPECT_EQ(flipped.bracket(1, 0), (LieElement{{1, 3}}));
}

TEST(Lie, BoundaryMatchesOracle) {
  for (const LieBasis& lb : {type_a(3), type_a(4), c3()}) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << lb.size()); ++mask) {
      std::map<std::uint64_t, std::int64_t> got;
      for (auto [w, c] : exterior_boundary(lb, mask)) got[w] = c;
      ASSERT_EQ(got, boundary_oracle(lb, mask)) << monomial_name(lb, mask);
      // d o d = 0.
      std::map<std::uint64_t, std::int64_t> dd;
      for (auto [w, c] : got)
        for (auto [u, e] : exterior_boundary(lb, w)) dd[u] += c * e;
      for (auto [u, c] : dd) ASSERT_EQ(c, 0) << monomial_name(lb, mask);
    }
  }
}

TEST(Lie, MonomialNames) {
  const LieBasis lb = type_a(2);
  EXPECT_EQ(monomial_name(lb, 0), "1");
  EXPECT_EQ(monomial_name(lb, 0b101), "e01e02");
}

TEST(Lie, RootSystemAcrossRanks) {
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_TRUE(is_diamond_root_system(type_a(n)).ok) << n;
  const auto five = is_diamond_root_system(type_a(5));
  EXPECT_FALSE(five.ok);
  EXPECT_EQ(five.failed_axiom, 4);
}

TEST(Lie, AdjacentTriples) {
  const LieBasis lb = type_a(3);
  const auto e = [](std::size_t i, std::size_t j) { return type_a_index(i, j); };
  EXPECT_TRUE(adjacent(lb, e(0, 1), e(1, 2), e(2, 3)));
  EXPECT_FALSE(adjacent(lb, e(0, 1), e(2, 3), e(1, 2)));
  const auto ub = unit_bracket(lb, e(0, 1), e(1, 2));
  ASSERT_TRUE(ub);
  EXPECT_EQ(ub->first, e(0, 2));
  EXPECT_EQ(ub->second, 1);
  EXPECT_FALSE(unit_bracket(lb, e(0, 1), e(2, 3)));
}

TEST(Lie, DiamondTypes) {
  const LieBasis lb = type_a(3);
  const ChainGraph cg = exterior_chain_graph(lb);
  const auto diamonds = enumerate_diamonds(cg.graph());
  std::array<std::size_t, 7> counts{};
  for (const auto& d : diamonds) {
    const int t = classify_diamond(lb, d);
    ASSERT_GE(t, 1);
    ASSERT_LE(t, 6);
    ++counts[static_cast<std::size_t>(t)];
  }
  EXPECT_EQ(diamonds.size(), 6u);
  EXPECT_EQ(counts, (std::array<std::size_t, 7>{0, 0, 1, 2, 1, 1, 1}));
}

TEST(Lie, ComponentHomologyOfTypeA) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const LieBasis lb = type_a(n);
    const ChainGraph cg = exterior_chain_graph(lb);
    const auto parts = component_decomposition(cg, 2);
    std::size_t rank0 = 0;
    for (const auto& p : parts) {
      ASSERT_TRUE(p.rank) << "component at " << p.vertices.front();
      rank0 += *p.rank == 0;
      if (*p.rank == 0) EXPECT_EQ(p.vertices.size(), 1u);
    }
    EXPECT_EQ(rank0, factorial(n + 1));
    const HomologyTable sum = sum_homology(parts);
    EXPECT_EQ(sum.total_free_rank(), factorial(n + 1));
    const auto m = mahonian(n);
    for (std::size_t k = 0; k < m.size(); ++k) EXPECT_EQ(sum.at(static_cast<Grade>(k)).free_rank(), m[k]) << n << " " << k;
    if (n <= 3) EXPECT_EQ(homology(cg), sum);
    for (std::uint64_t p : {2u, 3u, 5u}) EXPECT_EQ(torsion_exclusion_check(parts, p).verdict, Verdict::pass);
  }
}

TEST(Lie, KnownTorsionForThreeByThree) {
  const auto h = sum_homology(component_decomposition(exterior_chain_graph(type_a(3))));
  EXPECT_EQ(h.at(2), AbelianGroup(5, {2}));
  EXPECT_EQ(h.at(3), AbelianGroup(6, {2}));
  EXPECT_EQ(h.at(4), AbelianGroup(5, {}));
}

TEST(Lie, SymplecticComponents) {
  const auto parts = component_decomposition(exterior_chain_graph(c3()), 2);
  EXPECT_EQ(parts.size(), 135u);
  std::size_t rank0 = 0;
  for (const auto& p : parts) rank0 += p.rank && *p.rank == 0;
  EXPECT_EQ(rank0, 48u);
  // Order of the Weyl group of type C3.
  EXPECT_EQ(sum_homology(parts).total_free_rank(), 48u);
}

TEST(Lie, SignatureReplacesConnection) {
  for (std::size_t n = 2; n <= 3; ++n) {
    const ChainGraph cg = exterior_chain_graph(type_a(n));
    const Graph& g = cg.graph();
    ASSERT_TRUE(is_diamond_graph(g).is_diamond);
    EXPECT_TRUE(check_signature(g, cg.connection()).ok());
    const auto sig = find_signature(g);
    ASSERT_TRUE(sig);
    EXPECT_NO_THROW(signatures_equivalent(g, cg.connection(), *sig));
    const ChainGraph other(cg.graded(), *sig);
    EXPECT_EQ(homology(other), homology(cg));
  }
}

}  // namespace
}  // namespace gad
