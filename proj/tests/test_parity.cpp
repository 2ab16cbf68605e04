#include <gtest/gtest.h>

#include "glc/euler.hpp"
#include "glc/parity.hpp"
#include "oracles.hpp"

using namespace glc;

namespace {

VertexThread constant_thread(const InverseSystem& sys, const VertexId& v) {
  return {std::vector<VertexId>(sys.depth() + 1, v)};
}

VertexThread zero_thread(std::size_t depth) {
  VertexThread t;
  for (std::size_t n = 0; n <= depth; ++n) t.vertices.push_back("c" + std::string(n, '0'));
  return t;
}

}  // namespace

TEST(ParityOracle, Examples) {
  auto tri = named_graph("triangle");
  EXPECT_EQ(parity_oracle(tri, {"a"}, "a"), FibreParity::all_even);
  auto path = named_graph("path3");  // a(1) b(2) c(1)
  EXPECT_EQ(parity_oracle(path, {"a", "b"}, "a"), FibreParity::all_odd);
  EXPECT_EQ(parity_oracle(path, {"a", "b", "c"}, "b"), FibreParity::mixed);
  EXPECT_THROW(parity_oracle(path, {"a"}, "b"), error);
  Rng rng(1);
  auto big = oracle::random_multigraph(rng, 14, 3);
  try {
    parity_oracle(big, all_vertices(big), big.vertex_at(0));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::too_large);
  }
}

TEST(ParityOracle, AgreesWithDegreeCriterion) {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    auto g = oracle::random_multigraph(rng, 3 + rng.below(10), rng.below(12), true);
    auto f = oracle::random_subset(rng, g);
    if (f.empty()) continue;
    auto v = *std::next(f.begin(), static_cast<std::ptrdiff_t>(rng.below(f.size())));
    EXPECT_EQ(parity_oracle(g, f, v), degree_parity_criterion(g, f, v));
  }
}

TEST(VertexParity, LadderEndIsOdd) {
  auto sys = ladder_system(5);
  auto v = vertex_parity(sys, constant_thread(sys, "L"), 5, {3, 12});
  EXPECT_EQ(v.kind, ParityKind::odd_certified);
  EXPECT_EQ(v.level, 0u);
  EXPECT_GT(v.oracle_checks, 0u);
}

TEST(VertexParity, CantorCircleThreadsAreEven) {
  auto sys = cbc_system(5);
  for (const auto& t : deepest_threads(sys)) EXPECT_EQ(vertex_parity(sys, t, 5, {3, 12}).kind, ParityKind::even_certified);
}

TEST(VertexParity, CantorZeroThreadIsNeither) {
  auto sys = cbs_system(5);
  auto v = vertex_parity(sys, zero_thread(5), 5);
  ASSERT_EQ(v.kind, ParityKind::neither_certified);
  ASSERT_EQ(v.witnesses.size(), 4u);
  const auto& w = v.witnesses.front();
  EXPECT_EQ(w.first, (CylinderSet{1, {"c0"}}));
  EXPECT_EQ(w.second, (CylinderSet{2, {"c00"}}));
  EXPECT_EQ(w.first_cut, 1u);
  EXPECT_EQ(w.second_cut, 2u);
  for (const auto& x : v.witnesses) {
    EXPECT_NE(x.first_cut % 2, x.second_cut % 2);
    auto inside = fiber(sys, 5, {x.neighbourhood, {zero_thread(5).at(x.neighbourhood)}});
    for (const auto* c : {&x.first, &x.second})
      for (const auto& cell : fiber(sys, 5, *c)) EXPECT_TRUE(inside.count(cell));
  }
}

TEST(VertexParity, RejectsIncompatibleThread) {
  auto sys = cbs_system(3);
  try {
    vertex_parity(sys, {{"c", "c1", "c00", "c000"}}, 3);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::invalid_thread);
  }
}

TEST(VertexParity, AgreesWithClosedVerdictOnGenerators) {
  std::vector<InverseSystem> systems{cbs_system(5),         cbc_system(5),      ladder_system(4), xl_dyadic_system(5),
                                     hawaiian_system(5),    figure1_system(4), tangent_chain_system(5, "10110"),
                                     random_system(3, 5),   random_system(4, 5, {12, true})};
  for (const auto& sys : systems) {
    bool closed = is_closed_eulerian(sys).status == EulerStatus::closed_certified;
    bool all_even = true;
    for (const auto& t : deepest_threads(sys))
      all_even = all_even && vertex_parity(sys, t, sys.depth()).kind == ParityKind::even_certified;
    EXPECT_EQ(closed, all_even);
  }
}

TEST(StrongDegree, TangentChains) {
  auto alt = tangent_chain_system(8, "10101010");
  auto even = strong_degree(alt, constant_thread(alt, "z"), 8);
  EXPECT_EQ(even.kind, StrongKind::strongly_even);
  EXPECT_EQ(even.value, 2u);
  EXPECT_EQ(weak_degree(alt, constant_thread(alt, "z"), 8), WeakKind::weakly_even);

  // The last circle carries a chord here; it must not decide the verdict.
  auto shifted = tangent_chain_system(8, "01010101");
  auto late = strong_degree(shifted, constant_thread(shifted, "z"), 8);
  EXPECT_EQ(late.kind, StrongKind::strongly_even);
  EXPECT_EQ(late.value, 2u);
  EXPECT_EQ(late.arcs.back(), 3u);

  auto ones = tangent_chain_system(8, "11111111");
  auto odd = strong_degree(ones, constant_thread(ones, "z"), 8);
  EXPECT_EQ(odd.kind, StrongKind::strongly_odd);
  EXPECT_EQ(odd.value, 3u);
}

TEST(StrongDegree, FiniteGraphVertices) {
  auto tri = constant_system(named_graph("triangle"), 3);
  auto v = strong_degree(tri, constant_thread(tri, "a"), 3);
  EXPECT_EQ(v.kind, StrongKind::strongly_even);
  EXPECT_EQ(v.value, 2u);
  auto path = constant_system(named_graph("path2"), 2);
  EXPECT_EQ(weak_degree(path, constant_thread(path, "a"), 2), WeakKind::weakly_odd);
}

TEST(StrongDegree, CantorZeroThreadIsBoth) {
  auto sys = cbs_system(6);
  auto v = strong_degree(sys, zero_thread(6), 6);
  EXPECT_EQ(v.kind, StrongKind::unstable);
  for (std::size_t k = 0; k <= 6; ++k) EXPECT_EQ(v.arcs[k], k);
  EXPECT_EQ(weak_degree(sys, zero_thread(6), 6), WeakKind::both);
}

TEST(StrongDegree, ArcsMatchBruteMinCut) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto sys = random_system(seed, 4, {10, false});
    for (const auto& t : deepest_threads(sys)) {
      for (std::size_t k = 1; k <= 4; ++k) {
        std::size_t best = SIZE_MAX;
        for (std::size_t m = k; m <= 4; ++m) {
          const auto& g = sys.level(m);
          auto inside = fiber(sys, m, {k, {t.at(k)}});
          VertexSet outside;
          for (const auto& w : g.vertices())
            if (!inside.count(w)) outside.insert(w);
          best = std::min(best, outside.empty() ? 0 : oracle::min_cut(g, {t.at(m)}, outside));
        }
        EXPECT_EQ(neighbourhood_arcs(sys, t, k, 4), best);
      }
    }
  }
}

TEST(StrongDegree, EvenCertifiedIsNeverStronglyOdd) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto sys = random_system(seed, 5);
    for (const auto& t : deepest_threads(sys))
      if (vertex_parity(sys, t, 5).kind == ParityKind::even_certified)
        EXPECT_NE(strong_degree(sys, t, 5).kind, StrongKind::strongly_odd);
  }
}
