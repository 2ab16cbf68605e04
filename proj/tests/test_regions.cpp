#include <gtest/gtest.h>

#include "glc/parity.hpp"
#include "glc/regions.hpp"
#include "oracles.hpp"

using namespace glc;

namespace {

template <class F>
errc thrown(F&& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return errc::not_found;
}

// Every connected subset of `room` containing `core`, by brute force.
std::vector<VertexSet> between(const MultiGraph& g, const VertexSet& core, const VertexSet& room) {
  std::vector<VertexId> extra;
  for (const auto& v : room)
    if (!core.count(v)) extra.push_back(v);
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << extra.size()); ++mask) {
    VertexSet d = core;
    for (std::size_t i = 0; i < extra.size(); ++i)
      if (mask >> i & 1U) d.insert(extra[i]);
    if (induced_connected(g, membership(g, d))) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

TEST(Regions, MakeRegion) {
  auto sys = cbs_system(2);
  auto r = make_region(sys, 1, {"c0"});
  EXPECT_EQ(r.size(), 1u);
  EXPECT_TRUE(r.odd());
  EXPECT_EQ(thrown([&] { make_region(sys, 2, {}); }), errc::invalid_input);
  EXPECT_EQ(thrown([&] { make_region(sys, 2, {"c00", "c10"}); }), errc::invalid_input);
}

TEST(Regions, Within) {
  auto sys = cbs_system(2);
  auto one = regions_within(sys, 2, {"c01"});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].cells, (VertexSet{"c01"}));

  // The root edge joins c00 and c11, so the two outer cells form one region.
  auto outer = regions_within(sys, 2, {"c00", "c11"});
  ASSERT_EQ(outer.size(), 1u);
  EXPECT_EQ(outer[0].cells.size(), 2u);
  EXPECT_EQ(outer[0].size(), 2u);

  auto split = regions_within(sys, 2, {"c01", "c10"});
  EXPECT_EQ(split.size(), 2u);

  auto whole = regions_within(sys, 2, all_vertices(sys.level(2)));
  ASSERT_EQ(whole.size(), 1u);
  EXPECT_EQ(whole[0].size(), 0u);
}

TEST(Regions, ConnectedSubregionsMatchComponentCount) {
  auto sys = cbc_system(2);
  auto all = connected_subregions(sys, 2, all_vertices(sys.level(2)));
  auto brute = between(sys.level(2), {}, all_vertices(sys.level(2)));
  EXPECT_EQ(all.size(), brute.size());
  EXPECT_EQ(all.size(), 10u);
  EXPECT_EQ(thrown([&] { connected_subregions(cbs_system(5), 5, all_vertices(cbs_system(5).level(5))); }),
            errc::too_large);
}

TEST(MinimalOddRegion, CantorLevelOne) {
  auto sys = cbs_system(3);
  auto r = minimal_odd_region(sys, 1, all_vertices(sys.level(1)));
  ASSERT_TRUE(r.region);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.region->size(), 1u);
  EXPECT_EQ(r.region->cells, (VertexSet{"c0"}));
}

TEST(MinimalOddRegion, CantorCircleHasNone) {
  auto sys = cbc_system(4);
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_FALSE(minimal_odd_region(sys, n, all_vertices(sys.level(n))).region);
}

TEST(MinimalOddRegion, LadderEnd) {
  auto sys = ladder_system(4);
  for (std::size_t n = 0; n <= 4; ++n) {
    auto r = minimal_odd_region(sys, n, all_vertices(sys.level(n)));
    ASSERT_TRUE(r.region);
    EXPECT_EQ(r.region->size(), 3u);
    EXPECT_TRUE(r.region->cells.count("L") || r.region->cells.count("R"));
  }
}

TEST(MinimalOddRegion, AgreesWithBruteForce) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto sys = random_system(seed, 3, {10, false});
    const auto& g = sys.level(3);
    auto w = all_vertices(g);
    if (w.size() > 12) continue;
    std::optional<std::size_t> best;
    for (const auto& d : between(g, {}, w))
      if (!d.empty() && d != w && cut(g, d).size() % 2 == 1)
        best = best ? std::min(*best, cut(g, d).size()) : cut(g, d).size();
    auto r = minimal_odd_region(sys, 3, w);
    ASSERT_EQ(best.has_value(), r.region.has_value());
    if (best) EXPECT_EQ(r.region->size(), *best);
  }
}

TEST(MinimalOddRegion, FallbackAboveBound) {
  auto sys = cbs_system(5);
  auto r = minimal_odd_region(sys, 5, all_vertices(sys.level(5)));
  EXPECT_FALSE(r.exact);
  ASSERT_TRUE(r.region);
  EXPECT_EQ(r.region->size(), 1u);
  RegionSearchOptions strict;
  strict.allow_fallback = false;
  EXPECT_EQ(thrown([&] { minimal_odd_region(sys, 5, all_vertices(sys.level(5)), strict); }), errc::too_large);
}

TEST(OddRegionChase, CantorSpaceSatisfiesConditions) {
  auto sys = cbs_system(5);
  auto chase = odd_region_chase(sys, 5);
  ASSERT_TRUE(chase.complete);
  ASSERT_EQ(chase.steps.size(), 5u);
  EXPECT_EQ(chase.steps.front().level, 1u);
  for (std::size_t j = 0; j < chase.steps.size(); ++j) {
    const auto& s = chase.steps[j];
    EXPECT_TRUE(s.region.odd());
    EXPECT_EQ(s.region.size(), 1u);
    if (j == 0) continue;
    const auto& prev = chase.steps[j - 1].region;
    auto room = fiber(sys, s.level, {prev.level, prev.cells});
    for (const auto& c : s.region.cells) EXPECT_TRUE(room.count(c));
    // Condition (3), checked independently over every region in between.
    EXPECT_TRUE(s.not_smaller_exact);
    for (const auto& d : between(sys.level(s.level), s.region.cells, room))
      EXPECT_GE(cut(sys.level(s.level), d).size(), prev.size());
    // Condition (4): the avoided deepest edge does not lie inside the region.
    ASSERT_TRUE(s.avoided);
    EXPECT_EQ(*s.avoided, sys.level(5).edge_at(j - 1).id);
    EXPECT_FALSE(edge_inside(sys, compose(sys, 5, s.level), s.level, *s.avoided, s.region.cells));
  }
  check_thread(sys, chase.thread, 5);
  auto weak = weak_degree(sys, chase.thread, 5);
  EXPECT_TRUE(weak == WeakKind::weakly_odd || weak == WeakKind::both);
}

TEST(OddRegionChase, LadderConvergesToEnd) {
  auto sys = ladder_system(5);
  auto chase = odd_region_chase(sys, 5);
  EXPECT_TRUE(chase.complete);
  for (const auto& s : chase.steps) EXPECT_EQ(s.region.cells, (VertexSet{"L"}));
  EXPECT_EQ(chase.thread.vertices, std::vector<VertexId>(6, "L"));
}

TEST(OddRegionChase, EulerianSystemsHaveNoOddCut) {
  EXPECT_EQ(thrown([] { odd_region_chase(cbc_system(5), 5); }), errc::no_odd_cut);
  EXPECT_EQ(thrown([] { odd_region_chase(xl_dyadic_system(5), 5); }), errc::no_odd_cut);
}

TEST(OddRegionChase, RandomSystemsEndOnOddThreads) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto sys = random_system(seed, 4);
    if (all_levels_even(sys)) continue;
    auto chase = odd_region_chase(sys, 4);
    for (const auto& s : chase.steps) {
      EXPECT_TRUE(s.odd);
      EXPECT_TRUE(s.nested);
      EXPECT_TRUE(s.edge_excluded);
    }
    check_thread(sys, chase.thread, chase.steps.back().level);
  }
}

TEST(ContractRegions, LeftHalfOfCantorSpace) {
  auto sys = cbs_system(3);
  auto c = contract_regions(sys, 1, {{"c0"}});
  EXPECT_TRUE(validate(c.system).valid);
  EXPECT_EQ(degree(c.system.level(1), "c0"), 1u);
  for (std::size_t n = 1; n <= 3; ++n) {
    EXPECT_TRUE(c.system.level(n).has_vertex("c" + std::string(n, '0')));
    EXPECT_EQ(degree(c.system.level(n), "c" + std::string(n, '0')), 1u);
  }
  EXPECT_EQ(c.system.level(3).vertex_count(), 5u);
  EXPECT_EQ(c.quotient[3].at("c011"), VertexId("c000"));
}

TEST(ContractRegions, SingleDeepestCellIsIdentity) {
  auto sys = cbs_system(3);
  auto c = contract_regions(sys, 3, {{"c010"}});
  EXPECT_EQ(c.system, sys);
  EXPECT_EQ(contract_regions(sys, 2, {}).system, sys);
}

TEST(ContractRegions, WholeTopLevel) {
  auto sys = cbs_system(3);
  auto c = contract_regions(sys, 0, {all_vertices(sys.level(0))});
  EXPECT_TRUE(validate(c.system).valid);
  for (std::size_t n = 0; n <= 3; ++n) {
    EXPECT_EQ(c.system.level(n).vertex_count(), 1u);
    EXPECT_EQ(c.system.level(n).edge_count(), 0u);
  }
}

TEST(ContractRegions, OverlapIsRejected) {
  auto sys = cbs_system(3);
  EXPECT_EQ(thrown([&] { contract_regions(sys, 2, {{"c00", "c01"}, {"c01"}}); }), errc::invalid_partition);
}

TEST(ContractRegions, DisjointCylindersKeepTheirCuts) {
  Rng rng(5);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto sys = random_system(seed, 4);
    const std::size_t level = 1 + rng.below(3);
    const auto& g = sys.level(level);
    auto pick = g.vertex_at(rng.below(g.vertex_count()));
    auto region = regions_within(sys, level, {pick}).front().cells;
    auto c = contract_regions(sys, level, {region});
    ASSERT_TRUE(validate(c.system).valid) << seed;
    auto gone = fiber(sys, 4, {level, region});
    for (const auto& v : sys.level(4).vertices()) {
      if (gone.count(v)) continue;
      EXPECT_EQ(cut(c.system.level(4), {v}).boundary, cut(sys.level(4), {v}).boundary);
    }
  }
}

TEST(ComponentsEvenCheck, NestedRegionsInCantorCircle) {
  auto sys = cbc_system(3);
  auto all = connected_subregions(sys, 3, all_vertices(sys.level(3)));
  std::size_t pairs = 0;
  for (const auto& s : all)
    for (const auto& r : all)
      if (s.size() == 2 && r.size() == 2 && s.cells.size() < r.cells.size() &&
          std::includes(r.cells.begin(), r.cells.end(), s.cells.begin(), s.cells.end())) {
        ++pairs;
        auto rep = components_even_check(sys, 3, s, r);
        EXPECT_TRUE(rep.ok) << rep.detail;
        EXPECT_LE(rep.components.size(), 2u);
      }
  EXPECT_GT(pairs, 10u);
}

TEST(ComponentsEvenCheck, EmptyDifferenceAndBadInput) {
  auto sys = cbc_system(2);
  auto r = make_region(sys, 2, {"c00", "c01"});
  auto rep = components_even_check(sys, 2, r, r);
  EXPECT_TRUE(rep.ok);
  EXPECT_TRUE(rep.components.empty());
  auto single = make_region(sys, 2, {"c00"});
  EXPECT_EQ(thrown([&] { components_even_check(sys, 2, r, single); }), errc::invalid_input);
  EXPECT_EQ(thrown([&] { components_even_check(sys, 2, single, r); }), errc::invalid_input);
}

TEST(ComponentsEvenCheck, RandomEvenSystems) {
  std::size_t pairs = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto sys = random_system(seed, 3, {10, true});
    const auto& g = sys.level(3);
    if (g.vertex_count() > 10) continue;
    std::vector<Region> twos;
    for (auto& r : connected_subregions(sys, 3, all_vertices(g)))
      if (r.size() == 2) twos.push_back(std::move(r));
    for (const auto& s : twos)
      for (const auto& r : twos)
        if (s.cells.size() < r.cells.size() && std::includes(r.cells.begin(), r.cells.end(), s.cells.begin(), s.cells.end())) {
          ++pairs;
          EXPECT_TRUE(components_even_check(sys, 3, s, r).ok) << seed;
        }
  }
  EXPECT_GT(pairs, 50u);
}

TEST(ContractionMachine, CantorSpaceLeftHalf) {
  auto sys = cbs_system(5);
  auto res = contraction_machine(sys, make_region(sys, 1, {"c0"}), 2, 5);
  const auto& rep = res.report;
  EXPECT_EQ(rep.work_level, 5u);
  EXPECT_EQ(rep.infinite_regions, 14u);
  EXPECT_FALSE(res.contracted.empty());
  EXPECT_TRUE(rep.cleaning_failures.empty());
  EXPECT_TRUE(rep.isolated_even);
  EXPECT_TRUE(rep.no_small_infinite);
  EXPECT_TRUE(rep.probes_ok);
  EXPECT_GT(rep.probes, 0u);
  for (const auto& c : rep.chains) EXPECT_TRUE(c.ok) << c.detail;
  EXPECT_TRUE(rep.passed());
  for (const auto& r : res.contracted) EXPECT_EQ(r.size(), 2u);
  EXPECT_TRUE(validate(res.system.system).valid);
}

TEST(ContractionMachine, NoInfiniteRegionsLeavesSystemAlone) {
  auto sys = cbs_system(3);
  auto res = contraction_machine(sys, make_region(sys, 1, {"c0"}), 2, 3);
  EXPECT_TRUE(res.contracted.empty());
  EXPECT_EQ(res.system.system, sys);
  EXPECT_TRUE(res.report.passed());
}

TEST(ContractionMachine, OddIsolatedVertexIsAViolation) {
  auto sys = constant_system(named_graph("path3"), 3);
  EXPECT_EQ(thrown([&] { contraction_machine(sys, make_region(sys, 0, {"a", "b"}), 2, 3); }),
            errc::precondition_violated);
}

TEST(ContractionMachine, SmallInfiniteRegionIsAViolation) {
  auto sys = cbs_system(5);
  EXPECT_EQ(thrown([&] { contraction_machine(sys, make_region(sys, 1, {"c0"}), 4, 5); }), errc::precondition_violated);
}

TEST(ContractionMachine, BadArguments) {
  auto sys = cbs_system(3);
  EXPECT_EQ(thrown([&] { contraction_machine(sys, make_region(sys, 1, {"c0"}), 3, 3); }), errc::invalid_input);
  EXPECT_EQ(thrown([&] { contraction_machine(sys, make_region(sys, 0, {"c"}), 2, 3); }), errc::invalid_input);
}

// Whenever a set has an odd cut, some cell of any partition of it has an odd cut.
TEST(RegionProperties, OddSetHasOddCell) {
  Rng rng(33);
  for (int trial = 0; trial < 300; ++trial) {
    auto g = oracle::random_multigraph(rng, 4 + rng.below(8), rng.below(10), true);
    auto a = oracle::random_subset(rng, g);
    if (a.empty() || cut(g, a).size() % 2 == 0) continue;
    std::map<std::size_t, VertexSet> cells;
    for (const auto& v : a) cells[rng.below(3)].insert(v);
    bool some_odd = std::any_of(cells.begin(), cells.end(), [&](const auto& kv) { return cut(g, kv.second).size() % 2 == 1; });
    EXPECT_TRUE(some_odd);
  }
}

// A finite region made of even vertices has an even cut.
TEST(RegionProperties, EvenVerticesGiveEvenRegions) {
  Rng rng(34);
  std::size_t checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto g = oracle::random_multigraph(rng, 4 + rng.below(8), rng.below(10), true);
    VertexSet even;
    for (const auto& v : g.vertices())
      if (degree(g, v) % 2 == 0) even.insert(v);
    if (even.empty()) continue;
    for (const auto& comp : components(g, membership(g, even))) {
      ++checked;
      EXPECT_EQ(cut(g, to_set(g, comp)).size() % 2, 0u);
    }
  }
  EXPECT_GT(checked, 100u);
}
