#include <gtest/gtest.h>

#include "glc/euler.hpp"
#include "oracles.hpp"

using namespace glc;

namespace {

// Triangle a, b, c for levels 0-2; from level 3 on each level hangs one more
// digon off `a`, contracted by the bond below it.
InverseSystem triangle_then_digons(std::size_t depth) {
  InverseSystem sys;
  std::vector<VertexId> vs{"a", "b", "c"};
  std::vector<Edge> es{{"ab", "a", "b"}, {"bc", "b", "c"}, {"ca", "c", "a"}};
  for (std::size_t n = 0; n <= depth; ++n) {
    BondingMap f;
    if (n >= 3) {
      for (const auto& v : vs) f.vertex_map[v] = v;
      for (const auto& e : es) f.edge_map[e.id] = e.id;
      std::string p = "p" + std::to_string(n);
      vs.push_back(p);
      es.push_back({p + "x", "a", p});
      es.push_back({p + "y", "a", p});
      f.vertex_map[p] = VertexId("a");
      f.edge_map[p + "x"] = VertexId("a");
      f.edge_map[p + "y"] = VertexId("a");
    } else if (n > 0) {
      f = BondingMap::identity(sys.levels.back());
    }
    sys.levels.emplace_back(vs, es);
    if (n > 0) sys.bonds.push_back(std::move(f));
  }
  return sys;
}

// Six parallel edges a-b; the fine level splits a into a1 (entry ends of the
// circuit e1..e6) and a2 (exit ends) joined by one contracted edge.
InverseSystem unliftable() {
  InverseSystem sys;
  std::vector<Edge> coarse, fine;
  BondingMap f;
  for (int i = 1; i <= 6; ++i) {
    std::string id = "e" + std::to_string(i);
    coarse.push_back({id, "a", "b"});
    fine.push_back({id, i % 2 == 1 ? "a2" : "a1", "b"});
    f.edge_map[id] = EdgeId(id);
  }
  fine.push_back({"k", "a1", "a2"});
  f.edge_map["k"] = VertexId("a");
  f.vertex_map = {{"a1", "a"}, {"a2", "a"}, {"b", "b"}};
  sys.levels = {MultiGraph({"a", "b"}, coarse), MultiGraph({"a1", "a2", "b"}, fine)};
  sys.bonds = {f};
  return sys;
}

// Every Euler circuit of level n+1 rooted in the fibre of c's root that
// projects onto c.
std::vector<Circuit> lifts_by_enumeration(const InverseSystem& sys, std::size_t n, const Circuit& c) {
  std::vector<Circuit> out;
  for (const auto& r : fiber(sys, n + 1, {n, {c.root}}))
    for (const auto& deep : enumerate_euler_circuits(sys.level(n + 1), r).circuits)
      if (project_circuit(sys.bond(n), deep) == c) out.push_back(deep);
  return out;
}

std::vector<InverseSystem> small_generators() {
  return {cbs_system(4),           cbc_system(4),    ladder_system(3), xl_dyadic_system(4),
          hawaiian_system(4),      figure1_system(3), tangent_chain_system(4, "1010"),
          constant_system(named_graph("triangle"), 3), random_system(11, 5), random_system(12, 5, {12, true})};
}

}  // namespace

TEST(ClosedEulerian, ExampleVerdicts) {
  auto cbc = is_closed_eulerian(cbc_system(5));
  EXPECT_EQ(cbc.status, EulerStatus::closed_certified);
  EXPECT_EQ(cbc.depth, 5u);

  auto cbs = is_closed_eulerian(cbs_system(5));
  EXPECT_EQ(cbs.status, EulerStatus::not_eulerian);
  ASSERT_TRUE(cbs.witness);
  EXPECT_EQ(*cbs.witness, (CylinderSet{1, {"c0"}}));
  EXPECT_EQ(cbs.witness_cut_size, 1u);

  auto ladder = is_closed_eulerian(ladder_system(5));
  EXPECT_EQ(ladder.status, EulerStatus::not_eulerian);
  EXPECT_EQ(ladder.odd_classes, (std::vector<VertexId>{"L", "R"}));
}

TEST(ClosedEulerian, InvalidSystemIsRejected) {
  auto sys = cbc_system(2);
  sys.bonds[0].vertex_map.erase("c1");
  try {
    is_closed_eulerian(sys);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::invalid_system);
  }
}

TEST(EulerChain, TriangleChainIsConstant) {
  auto sys = constant_system(named_graph("triangle"), 3);
  auto chain = euler_chain(sys);
  ASSERT_TRUE(chain);
  for (const auto& c : chain->circuits) EXPECT_EQ(c, chain->circuits[0]);
  EXPECT_TRUE(is_compatible_chain(sys, *chain));
}

TEST(EulerChain, CantorCircleLevelOneIsAParallelEdgeCircuit) {
  auto sys = cbc_system(4);
  auto chain = euler_chain(sys);
  ASSERT_TRUE(chain);
  EXPECT_TRUE(is_compatible_chain(sys, *chain));
  auto level1 = enumerate_euler_circuits(sys.level(1), chain->circuits[1].root).circuits;
  ASSERT_EQ(level1.size(), 2u);
  EXPECT_TRUE(chain->circuits[1] == level1[0] || chain->circuits[1] == level1[1]);
  EXPECT_EQ(chain->circuits[1].length(), 2u);
}

TEST(EulerChain, AbsentExactlyWhenNotCertified) {
  EXPECT_FALSE(euler_chain(cbs_system(4)));
  for (const auto& sys : small_generators()) {
    for (std::size_t d = 0; d <= sys.depth(); ++d) {
      auto t = truncate(sys, d);
      auto chain = euler_chain(t);
      EXPECT_EQ(chain.has_value(), is_closed_eulerian(t).status == EulerStatus::closed_certified);
      if (chain) EXPECT_TRUE(is_compatible_chain(t, *chain));
    }
  }
}

TEST(LiftCircuit, IdentityBondReturnsSameCircuit) {
  auto sys = constant_system(named_graph("c4"), 1);
  auto c = *euler_circuit(sys.level(0), "a");
  EXPECT_EQ(lift_circuit(sys, 0, c), std::optional<Circuit>(c));
}

TEST(LiftCircuit, CantorCircleLevelOneAlwaysLifts) {
  auto sys = cbc_system(2);
  for (const auto& c : enumerate_euler_circuits(sys.level(1), "c0").circuits) {
    auto lift = lift_circuit(sys, 1, c);
    ASSERT_TRUE(lift);
    EXPECT_TRUE(is_euler_circuit(sys.level(2), *lift));
    EXPECT_EQ(project_circuit(sys.bond(1), *lift), c);
    EXPECT_FALSE(lifts_by_enumeration(sys, 1, c).empty());
  }
}

TEST(LiftCircuit, ConstructedBondWithoutLift) {
  auto sys = unliftable();
  ASSERT_TRUE(validate(sys).valid);
  auto c = make_circuit(sys.level(0), "a", {"e1", "e2", "e3", "e4", "e5", "e6"});
  EXPECT_TRUE(lifts_by_enumeration(sys, 0, c).empty());
  EXPECT_FALSE(lift_circuit(sys, 0, c));
  // Other orders of the same edges do lift.
  auto d = make_circuit(sys.level(0), "a", {"e1", "e2", "e4", "e3", "e5", "e6"});
  EXPECT_FALSE(lifts_by_enumeration(sys, 0, d).empty());
  EXPECT_TRUE(lift_circuit(sys, 0, d));
}

TEST(LiftCircuit, RejectsNonEulerInput) {
  auto sys = cbc_system(2);
  Circuit half = make_circuit(sys.level(1), "c0", {"d", "d"});
  EXPECT_THROW(lift_circuit(sys, 1, half), error);
}

TEST(LiftCircuit, MatchesEnumerationFilterOnSmallEvenSystems) {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto sys = random_system(seed, 4, {6, true});
    for (std::size_t n = 0; n < sys.depth(); ++n) {
      if (sys.level(n + 1).edge_count() > 10) continue;
      auto root = canonical_root_thread(sys).at(n);
      for (const auto& c : enumerate_euler_circuits(sys.level(n), root, 50).circuits) {
        auto expected = lifts_by_enumeration(sys, n, c);
        auto got = lift_circuit(sys, n, c);
        EXPECT_EQ(got.has_value(), !expected.empty());
        if (got) {
          EXPECT_TRUE(is_euler_circuit(sys.level(n + 1), *got));
          EXPECT_EQ(project_circuit(sys.bond(n), *got), c);
        }
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(CountEuler, ConstantSystems) {
  for (const auto& name : {"triangle", "digon"}) {
    auto counts = count_euler(constant_system(named_graph(name), 3));
    for (const auto& l : counts.levels) {
      EXPECT_EQ(l.count, 2u);
      EXPECT_EQ(l.unoriented, 1u);
    }
    for (const auto& m : counts.maps) {
      EXPECT_EQ(m.surjective, std::optional<bool>(true));
      EXPECT_EQ(m.injective, std::optional<bool>(true));
    }
  }
  auto loop = count_euler(constant_system(named_graph("loop"), 1));
  EXPECT_EQ(loop.levels[0].count, 1u);
  EXPECT_EQ(loop.levels[0].unoriented, 1u);
}

TEST(CountEuler, ConstantMatchesPermutationOracle) {
  Rng rng(5);
  int tried = 0;
  while (tried < 25) {
    auto g = oracle::random_multigraph(rng, 4, 4, true);
    if (!odd_vertices(g).empty() || !is_connected(g)) continue;
    ++tried;
    auto counts = count_euler(constant_system(g, 1));
    EXPECT_EQ(counts.levels[0].count, oracle::euler_count_by_permutation(g, g.vertex_at(0)));
  }
}

TEST(CountEuler, CantorCircleGrowsAndRefusesOddSystems) {
  auto counts = count_euler(cbc_system(4));
  std::vector<std::uint64_t> got;
  for (const auto& l : counts.levels) got.push_back(l.count);
  EXPECT_EQ(got, (std::vector<std::uint64_t>{1, 2, 16, 1536, 18874368}));
  EXPECT_EQ(counts.maps[0].surjective, std::optional<bool>(true));
  EXPECT_EQ(counts.maps[0].injective, std::optional<bool>(false));
  try {
    count_euler(cbs_system(3));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::refused);
  }
}

TEST(Dichotomy, Examples) {
  auto tri = dichotomy_probe(constant_system(named_graph("triangle"), 4));
  EXPECT_EQ(tri.kind, DichotomyKind::stabilized_graph);
  EXPECT_EQ(tri.level, 0u);
  EXPECT_EQ(dichotomy_probe(cbc_system(4)).kind, DichotomyKind::growing_evidence);

  auto at3 = triangle_then_digons(3);
  ASSERT_TRUE(validate(at3).valid);
  EXPECT_EQ(dichotomy_probe(at3).kind, DichotomyKind::inconclusive);
  auto at4 = dichotomy_probe(triangle_then_digons(4));
  EXPECT_EQ(at4.kind, DichotomyKind::growing_evidence);
  EXPECT_EQ(at4.counts[3].count, 8u);
  EXPECT_EQ(at4.counts[4].count, 48u);
}

TEST(OpenEulerian, Ladder) {
  auto v = is_open_eulerian(ladder_system(5));
  ASSERT_EQ(v.status, EulerStatus::open_certified) << v.reason;
  EXPECT_EQ(v.odd_threads->first.vertices, std::vector<VertexId>(6, "L"));
  EXPECT_EQ(v.odd_threads->second.vertices, std::vector<VertexId>(6, "R"));
}

TEST(OpenEulerian, Refusals) {
  auto cbs = is_open_eulerian(cbs_system(4));
  EXPECT_EQ(cbs.status, EulerStatus::not_eulerian);
  EXPECT_EQ(cbs.failing_level, std::optional<std::size_t>(3));
  auto cbc = is_open_eulerian(cbc_system(4));
  EXPECT_EQ(cbc.status, EulerStatus::not_eulerian);
  EXPECT_TRUE(cbc.odd_classes.empty());
}

TEST(OpenEulerian, OddPointsMayShareACoarseClass) {
  auto sys = constant_system(named_graph("path2"), 2);
  EXPECT_EQ(is_open_eulerian(sys).status, EulerStatus::open_certified);
  // Both ends of ab fall into the single level-0 class, which is even.
  InverseSystem merged;
  merged.levels = {MultiGraph({"a"}, {}), MultiGraph({"a", "b"}, {{"ab", "a", "b"}})};
  BondingMap f;
  f.vertex_map = {{"a", "a"}, {"b", "a"}};
  f.edge_map = {{"ab", VertexId("a")}};
  merged.bonds = {f};
  auto v = is_open_eulerian(merged);
  EXPECT_EQ(v.status, EulerStatus::open_certified) << v.reason;
}

TEST(OpenEulerChain, LadderTrailsRunEndToEnd) {
  auto sys = ladder_system(4);
  auto open = open_euler_chain(sys);
  ASSERT_TRUE(open);
  EXPECT_EQ(open->marked, EdgeId("aux"));
  for (std::size_t n = 0; n <= 4; ++n) {
    const auto& t = open->trails[n];
    EXPECT_EQ(t.edges.size(), sys.level(n).edge_count());
    std::set<VertexId> ends{t.vertices.front(), t.vertices.back()};
    EXPECT_EQ(ends, (std::set<VertexId>{"L", "R"}));
    std::set<EdgeId> covered(t.edges.begin(), t.edges.end());
    EXPECT_EQ(covered.size(), t.edges.size());
  }
}

TEST(OpenEulerChain, PathAndRefusal) {
  auto open = open_euler_chain(constant_system(named_graph("path2"), 1));
  ASSERT_TRUE(open);
  EXPECT_EQ(open->trails[0].edges, std::vector<EdgeId>{"ab"});
  EXPECT_FALSE(open_euler_chain(cbs_system(4)));
}
