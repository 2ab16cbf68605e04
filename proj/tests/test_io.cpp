#include <gtest/gtest.h>

#include "glc/generators.hpp"
#include "glc/io.hpp"

using namespace glc;

namespace {

errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return errc::not_found;
}

}  // namespace

TEST(Io, GraphRoundTripKeepsLoopsAndParallels) {
  MultiGraph g({"a", "b"}, {{"e1", "a", "b"}, {"e2", "a", "b"}, {"l", "b", "b"}});
  auto j = graph_to_json(g);
  EXPECT_EQ(j["edges"][2]["ends"][0], "b");
  EXPECT_EQ(graph_from_json(j), g);
}

TEST(Io, SystemRoundTripOnEveryGenerator) {
  for (Kind k : {Kind::ladder, Kind::cbs, Kind::cbc, Kind::xl_dyadic, Kind::hawaiian, Kind::figure1, Kind::random}) {
    GeneratorSpec spec;
    spec.kind = k;
    spec.depth = 4;
    spec.seed = 7;
    auto sys = generate(spec);
    auto text = dump(system_to_json(sys));
    auto back = system_from_json(parse_json(text));
    EXPECT_EQ(back, sys);
    EXPECT_EQ(digest(back), digest(sys));
    EXPECT_EQ(dump(system_to_json(back)), text);
  }
}

TEST(Io, ContractedEdgesUseVertexObjects) {
  auto sys = cbs_system(2);
  auto j = system_to_json(sys);
  bool saw_vertex = false;
  for (const auto& [e, im] : j["bonds"][1]["edge_map"].items()) saw_vertex = saw_vertex || im.is_object();
  EXPECT_TRUE(saw_vertex);
}

TEST(Io, DigestTracksSizesAndContent) {
  auto d = digest(cbs_system(3));
  EXPECT_EQ(d["depth"], 3);
  EXPECT_EQ(d["levels"][3]["vertices"], 8);
  EXPECT_EQ(d["levels"][3]["edges"], 7);
  EXPECT_EQ(d["fnv1a"].get<std::string>().size(), 16u);
  EXPECT_NE(d["fnv1a"], digest(cbc_system(3))["fnv1a"]);
}

TEST(Io, SyntaxErrorsCarryLineAndColumn) {
  try {
    parse_json("{\n  \"levels\": [,]\n}", "sys.json");
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::parse_error);
    EXPECT_NE(std::string(e.what()).find("sys.json:2:"), std::string::npos) << e.what();
  }
}

TEST(Io, ShapeErrorsNameThePath) {
  auto j = parse_json(R"({"levels":[{"vertices":["a"],"edges":[{"id":"e","ends":["a"]}]}],"bonds":[]})");
  try {
    system_from_json(j);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::parse_error);
    EXPECT_NE(std::string(e.what()).find("/levels/0/edges/0/ends"), std::string::npos) << e.what();
  }
  EXPECT_EQ(code_of([] { system_from_json(parse_json(R"({"levels":[]})")); }), errc::parse_error);
  EXPECT_EQ(code_of([] { system_from_json(parse_json(R"({"levels":[{"vertices":[1],"edges":[]}],"bonds":[]})")); }),
            errc::parse_error);
  // Unknown endpoint is rejected by the graph and reported as a parse error.
  EXPECT_EQ(code_of([] {
              graph_from_json(parse_json(R"({"vertices":["a"],"edges":[{"id":"e","ends":["a","z"]}]})"));
            }),
            errc::parse_error);
}

TEST(Io, DotWritesEveryParallelEdgeAndColour) {
  MultiGraph g({"a", "b"}, {{"e1", "a", "b"}, {"e2", "a", "b"}});
  DotStyle style;
  style.edge_color[EdgeId("e2")] = "blue";
  auto dot = to_dot(g, "g", style);
  EXPECT_NE(dot.find("\"a\" -- \"b\" [label=\"e1\"]"), std::string::npos);
  EXPECT_NE(dot.find("[label=\"e2\", color=blue]"), std::string::npos);
  EXPECT_EQ(system_to_dot(cbs_system(2)).find("graph \"level2\""), system_to_dot(cbs_system(2)).rfind("graph "));
}
