#include <gtest/gtest.h>

#include <filesystem>

#include "gad/errors.hpp"
#include "gad/fixtures.hpp"
#include "gad/io.hpp"
#include "generators.hpp"

namespace gad {
namespace {

std::string data(const std::string& name) { return std::string(GAD_DATA_DIR) + "/" + name; }

TEST(Io, GraphRoundTrip) {
  auto rng = testing::make_rng(50);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = testing::random_bipartite(rng, static_cast<std::size_t>(testing::uniform(rng, 1, 10)), 0.5);
    const Gradation grade = representation_gradation(g);
    const Connection nu = testing::random_connection(rng, g, 5);
    const GraphFile back = parse_graph_json(graph_to_json(g, &grade, &nu).dump());
    EXPECT_EQ(back.graph.ids(), g.ids());
    EXPECT_EQ(back.graph.edges(), g.edges());
    ASSERT_TRUE(back.gradation);
    EXPECT_EQ(*back.gradation, grade);
    // An edgeless graph carries no connection.
    EXPECT_EQ(back.connection.has_value(), !g.edges().empty());
    if (back.connection) EXPECT_EQ(*back.connection, nu);
    const GraphFile bare = parse_graph_json(graph_to_json(g).dump());
    EXPECT_FALSE(bare.gradation);
    EXPECT_FALSE(bare.connection);
  }
}

TEST(Io, GraphErrors) {
  try {
    parse_graph_json("{\"vertices\": [");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
  }
  EXPECT_THROW(parse_graph_json("[]"), InputError);
  EXPECT_THROW(parse_graph_json(R"({"vertices":[{"id":"a","grade":0},{"id":"b"}],"edges":[]})"), InputError);
  EXPECT_THROW(parse_graph_json(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"b"},{"u":"b","v":"a"}]})"), InputError);
  EXPECT_THROW(parse_graph_json(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"c"}]})"), InputError);
  EXPECT_THROW(parse_graph_json(R"({"vertices":["a","b","c"],"edges":[{"u":"a","v":"b","nu":1},{"u":"b","v":"c"}]})"),
               InputError);
  EXPECT_THROW(read_graph_file(data("missing.json")), InputError);
  // Plain string vertices and absent edges are accepted.
  EXPECT_EQ(parse_graph_json(R"({"vertices":["a"]})").graph.size(), 1u);
}

TEST(Io, Dot) {
  const Graph g({"a", "b"}, {{"a", "b"}});
  const Gradation grade{{0, 1}};
  Connection nu;
  nu.set(0, 1, -2);
  const std::string dot = to_dot(g, &grade, &nu);
  EXPECT_NE(dot.find("a:0"), std::string::npos);
  EXPECT_NE(dot.find("b:1"), std::string::npos);
  EXPECT_NE(dot.find("-2"), std::string::npos);
  EXPECT_EQ(dot.rfind("graph", 0), 0u);
}

TEST(Io, MatrixRoundTrip) {
  const auto f = fixtures::ex13();
  const RepMatrix m = representation_matrix(f.graph, *f.connection);
  EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
  EXPECT_FALSE(format_matrix(m).empty());
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"entries":[[1,2],[3]]})")), InputError);
}

TEST(Io, HomologyRoundTrip) {
  HomologyTable h;
  h.coeff = Coefficients::integers();
  h.groups[0] = AbelianGroup(1, {});
  h.groups[3] = AbelianGroup(2, {2, 6});
  EXPECT_EQ(homology_from_json(homology_to_json(h)), h);
  EXPECT_EQ(format_homology(h), "H_0 = Z\nH_3 = Z^2 ⊕ Z/2 ⊕ Z/6\n");
  EXPECT_EQ(format_homology(HomologyTable{}), "all groups vanish\n");
  HomologyTable f;
  f.coeff = Coefficients::prime(7);
  f.groups[1] = AbelianGroup(3, {});
  EXPECT_EQ(homology_from_json(homology_to_json(f)), f);
  EXPECT_EQ(format_group(f.at(1), f.coeff), "F7^3");
  EXPECT_EQ(format_group(AbelianGroup(1, {}), Coefficients::rationals()), "Q");
}

TEST(Io, LieRoundTrip) {
  const LieBasis lb = type_a(3);
  const LieBasis back = parse_lie_json(lie_to_json(lb).dump());
  EXPECT_EQ(back.symbols(), lb.symbols());
  EXPECT_EQ(back.table(), lb.table());
  EXPECT_THROW(parse_lie_json(R"({"symbols":["x"],"brackets":[{"x":"x","y":"q","terms":[]}]})"), InputError);
}

TEST(Io, FixtureFilesMatchBuilders) {
  const std::pair<const char*, GraphFile> files[] = {{"d1.json", fixtures::d1()}, {"d2.json", fixtures::d2()}, {"ex13.json", fixtures::ex13()}};
  for (const auto& [name, built] : files) {
    const GraphFile read = read_graph_file(data(name));
    EXPECT_EQ(read.graph.ids(), built.graph.ids()) << name;
    EXPECT_EQ(read.graph.edges(), built.graph.edges()) << name;
    EXPECT_EQ(read.gradation, built.gradation) << name;
    EXPECT_EQ(read.connection, built.connection) << name;
  }
  const GraphFile ex = read_graph_file(data("ex13.json"));
  EXPECT_EQ(ex.graph.size(), 14u);
  EXPECT_EQ(ex.graph.degree(ex.graph.index("e1")), 4u);
  EXPECT_EQ(read_graph_file(data("d1.json")).graph.size(), 16u);
  const Graph d2 = read_graph_file(data("d2.json")).graph;
  EXPECT_EQ(d2.size(), 22u);
  std::size_t u_edges = 0;
  for (auto [a, b] : d2.edges()) u_edges += d2.id(a)[0] == 'u' || d2.id(b)[0] == 'u';
  // Five edges at v and two per pair vertex, then the listed u-edges.
  EXPECT_EQ(u_edges, 30u);
  EXPECT_EQ(d2.edges().size(), 30u + 5u + 20u);
}

TEST(Io, WriteFixtures) {
  const auto dir = std::filesystem::temp_directory_path() / ("gad-io-" + std::to_string(testing::test_seed()));
  std::filesystem::remove_all(dir);
  const auto paths = fixtures::write_all(dir.string());
  EXPECT_EQ(paths.size(), 3u);
  for (const auto& p : paths) {
    const std::string name = std::filesystem::path(p).filename().string();
    EXPECT_EQ(read_text_file(p), read_text_file(data(name))) << name;
  }
  std::filesystem::remove_all(dir);
  EXPECT_THROW(write_text_file("/nonexistent-dir/x.json", "{}"), InputError);
}

}  // namespace
}  // namespace gad
