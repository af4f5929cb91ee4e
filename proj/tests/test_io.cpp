#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cybergraph/io.hpp"
#include "cybergraph/reference.hpp"

using namespace cybergraph;

TEST(EdgeListIo, RoundTripSimple) {
  const SimpleGraph g(5, {{0, 1}, {1, 2}, {3, 4}});
  std::ostringstream out;
  io::write_edge_list(out, g);
  std::istringstream in(out.str());
  const auto back = io::to_graph(io::parse_edge_list(in));
  ASSERT_TRUE(std::holds_alternative<SimpleGraph>(back));
  EXPECT_EQ(std::get<SimpleGraph>(back), g);
}

TEST(EdgeListIo, NodeHeaderKeepsIsolatedNodes) {
  std::istringstream in("# nodes 6\n0 1\n\n# comment\n2 1\n");
  const auto list = io::parse_edge_list(in);
  EXPECT_EQ(list.node_count, 6u);
  EXPECT_EQ(list.edges.size(), 2u);
  std::istringstream bad("# nodes 2\n0 5\n");
  EXPECT_THROW(io::parse_edge_list(bad), InputError);
}

TEST(EdgeListIo, DefectsBecomeMultigraph) {
  std::istringstream in("0 1\n1 0\n2 2\n");
  const auto g = io::to_graph(io::parse_edge_list(in));
  ASSERT_TRUE(std::holds_alternative<WorkGraph>(g));
  std::ostringstream out;
  io::write_edge_list(out, g);
  EXPECT_EQ(out.str(), "# multigraph\n# nodes 3\n0 1\n0 1\n2 2\n");
}

TEST(EdgeListIo, MalformedLinesAreRejected) {
  for (const char* text : {"0\n", "0 1 2\n", "a b\n", "-1 2\n", ""}) {
    std::istringstream in(text);
    EXPECT_THROW(io::parse_edge_list(in), InputError) << text;
  }
}

TEST(DegreeCountsIo, ParsesReferenceFile) {
  std::ifstream in(std::string(CYBERGRAPH_DATA_DIR) + "/reference_counts.csv");
  ASSERT_TRUE(in);
  const auto k = io::parse_degree_counts(in);
  EXPECT_EQ(k.counts(), reference::degree_counts().counts());
  EXPECT_EQ(k.node_count(), reference::kNodes);
  EXPECT_EQ(k.degree_sum(), 2 * reference::kEdges);
}

TEST(DegreeCountsIo, RejectsBadRows) {
  std::istringstream bad("degree,count\n1,2\nx,3\n");
  EXPECT_THROW(io::parse_degree_counts(bad), InputError);
  std::istringstream zero("0,4\n");
  EXPECT_THROW(io::parse_degree_counts(zero), InputError);
}

TEST(PositionsIo, ParsesAndValidates) {
  std::istringstream in("label,x,y\n1,2.5,3\n0,-1,0\n");
  const auto p = io::parse_positions(in);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_DOUBLE_EQ(p[0].x, -1.0);
  EXPECT_DOUBLE_EQ(p[1].x, 2.5);
  std::istringstream dup("0,1,1\n0,2,2\n");
  EXPECT_THROW(io::parse_positions(dup), InputError);
  std::istringstream gap("0,1,1\n2,2,2\n");
  EXPECT_THROW(io::parse_positions(gap), InputError);
}

TEST(Export, DotAndGraphml) {
  const SimpleGraph g(3, {{0, 1}, {1, 2}});
  const auto dot = io::to_dot(g);
  EXPECT_NE(dot.find("1 [degree=2];"), std::string::npos);
  EXPECT_NE(dot.find("0 -- 1;"), std::string::npos);
  const auto xml = io::to_graphml(g);
  EXPECT_NE(xml.find("source=\"n1\" target=\"n2\""), std::string::npos);
}

TEST(Export, JsonRoundTrip) {
  WorkGraph w(3);
  w.add_edge(0, 1);
  w.add_edge(0, 1);
  const io::AnyGraph g = w;
  const auto j = io::graph_to_json(g);
  EXPECT_TRUE(j["multigraph"].get<bool>());
  const auto back = io::to_graph(io::edge_list_from_json(j));
  ASSERT_TRUE(std::holds_alternative<WorkGraph>(back));
  EXPECT_EQ(std::get<WorkGraph>(back).multiplicity(0, 1), 2u);
  EXPECT_THROW(io::edge_list_from_json(io::json{{"nodes", 2}, {"edges", {{0, 4}}}}), InputError);
  EXPECT_THROW(io::edge_list_from_json(io::json{{"edges", 1}}), InputError);
}

TEST(LoadGraph, DetectsFormat) {
  const auto dir = std::filesystem::temp_directory_path() / "cybergraph_io_test";
  std::filesystem::create_directories(dir);
  const auto json_path = (dir / "g.json").string();
  const auto text_path = (dir / "g.txt").string();
  std::ofstream(json_path) << R"({"nodes": 3, "edges": [[0, 1], [1, 2]]})";
  std::ofstream(text_path) << "0 1\n1 2\n";
  EXPECT_EQ(std::get<SimpleGraph>(io::load_graph(json_path)), std::get<SimpleGraph>(io::load_graph(text_path)));
  EXPECT_THROW(io::load_graph((dir / "missing").string()), InputError);
  std::filesystem::remove_all(dir);
}

TEST(ReportJson, UndefinedValuesAreNull) {
  const auto j = io::report_to_json(full_report(SimpleGraph(2, {})));
  EXPECT_TRUE(j["diameter"].is_null());
  EXPECT_TRUE(j["spectral_gap"].is_null());
  EXPECT_FALSE(j["connected"].get<bool>());
}
