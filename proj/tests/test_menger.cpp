#include <gtest/gtest.h>

#include "glc/generators.hpp"
#include "glc/menger.hpp"
#include "oracles.hpp"

using namespace glc;

TEST(Menger, LadderEndsHaveThreeTrails) {
  auto sys = ladder_system(5);
  auto w = menger(sys, {0, {"L"}}, {0, {"R"}}, 5);
  EXPECT_EQ(w.k, 3u);
  EXPECT_TRUE(w.projection_valid);
  ASSERT_EQ(w.levels.size(), 6u);
  for (const auto& l : w.levels) {
    EXPECT_EQ(l.flow, 3u);
    EXPECT_EQ(l.tuple.size(), 3u);
    EXPECT_TRUE(l.valid) << l.detail;
  }
}

TEST(Menger, CantorCircleOppositeClasses) {
  auto sys = cbc_system(4);
  auto w = menger(sys, {4, {"c0000"}}, {4, {"c1111"}}, 4);
  EXPECT_EQ(w.k, 2u);
  EXPECT_EQ(w.achieving_level, 4u);
  EXPECT_TRUE(w.projection_valid);
}

TEST(Menger, SinglePersistentEdge) {
  auto sys = constant_system(named_graph("path2"), 3);
  auto w = menger(sys, {0, {"a"}}, {0, {"b"}}, 3);
  EXPECT_EQ(w.k, 1u);
  EXPECT_EQ(w.cut_side, (VertexSet{"a"}));
}

TEST(Menger, OverlapIsRejected) {
  auto sys = cbs_system(3);
  try {
    menger(sys, {1, {"c0"}}, {2, {"c00"}}, 3);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::invalid_separation);
  }
}

TEST(Menger, CylindersAtDifferentLevels) {
  auto sys = cbs_system(4);
  auto w = menger(sys, {1, {"c0"}}, {2, {"c11"}}, 4);
  EXPECT_EQ(w.levels.front().level, 2u);
  EXPECT_EQ(w.k, 1u);
  EXPECT_TRUE(w.projection_valid);
}

TEST(MengerProperties, FlowsMatchMinCutAndDecrease) {
  Rng rng(41);
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto sys = random_system(seed, 4, {10, seed % 2 == 0});
    const auto& top = sys.level(1);
    if (top.vertex_count() < 2) continue;
    auto x = top.vertex_at(rng.below(top.vertex_count()));
    auto y = top.vertex_at(rng.below(top.vertex_count()));
    if (x == y) continue;
    auto w = menger(sys, {1, {x}}, {1, {y}}, 4);
    EXPECT_TRUE(w.projection_valid) << seed;
    for (std::size_t i = 0; i < w.levels.size(); ++i) {
      const auto& l = w.levels[i];
      const auto& g = sys.level(l.level);
      if (g.vertex_count() <= 12) {
        ++checked;
        EXPECT_EQ(l.flow, oracle::min_cut(g, fiber(sys, l.level, {1, {x}}), fiber(sys, l.level, {1, {y}})));
      }
      if (i > 0) EXPECT_LE(l.flow, w.levels[i - 1].flow);
    }
    EXPECT_EQ(w.k, w.levels.back().flow);
  }
  EXPECT_GT(checked, 40u);
}
