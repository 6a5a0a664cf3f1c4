#include "support.hpp"
#include "tmod/temporal_graph.hpp"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

using namespace tmod;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

namespace {

TemporalGraph p3() {
  std::vector<TimeEdge> e{{0, 1, 1}, {0, 1, 2}, {1, 2, 1}};
  return TemporalGraph::build(3, 2, e);
}

std::string build_error(int n, int T, std::vector<TimeEdge> e) {
  try {
    TemporalGraph::build(n, T, e);
  } catch (const InputError& err) {
    return err.what();
  }
  return "";
}

}  // namespace

TEST(TemporalGraph, CountsEdgesPerSnapshot) {
  const auto g = p3();
  EXPECT_EQ(g.edge_count(1), 2);
  EXPECT_EQ(g.edge_count(2), 1);
  EXPECT_EQ(g.edges().size(), 2u);
  EXPECT_THAT(g.activity(0), ElementsAre(1, 2));
}

TEST(TemporalGraph, RejectsBadTriples) {
  EXPECT_THAT(build_error(2, 1, {{0, 0, 1}}), HasSubstr("self-loop"));
  EXPECT_THAT(build_error(2, 1, {{0, 2, 1}}), HasSubstr("(0, 2, 1)"));
  EXPECT_THAT(build_error(2, 1, {{0, 1, 2}}), HasSubstr("(0, 1, 2)"));
  EXPECT_THAT(build_error(2, 2, {{0, 1, 1}, {1, 0, 1}}), HasSubstr("duplicate"));
  EXPECT_FALSE(build_error(2, 1, {{0, 1, 0}}).empty());
}

TEST(TemporalGraph, EmptyGraph) {
  const auto g = TemporalGraph::build(2, 1, {});
  EXPECT_EQ(g.edge_count(1), 0);
  const auto s = g.snapshot(1);
  EXPECT_EQ(s.edge_count, 0);
  EXPECT_THAT(s.degrees, ElementsAre(0, 0));
}

TEST(TemporalGraph, Snapshots) {
  const auto g = p3();
  auto s2 = g.snapshot(2);
  EXPECT_THAT(s2.active_edges, ElementsAre(Edge{0, 1}));
  EXPECT_THAT(s2.degrees, ElementsAre(1, 1, 0));
  auto s1 = g.snapshot(1);
  EXPECT_EQ(s1.edge_count, 2);
  EXPECT_THAT(s1.degrees, ElementsAre(1, 2, 1));
}

TEST(TemporalGraph, Restrict) {
  const auto g = p3();
  const auto a = g.restrict(1, 1);
  EXPECT_EQ(a.lifetime(), 1);
  EXPECT_THAT(a.edges_at(1), ElementsAre(Edge{0, 1}, Edge{1, 2}));
  const auto b = g.restrict(2, 2);
  EXPECT_EQ(b.lifetime(), 1);
  EXPECT_THAT(b.edges_at(1), ElementsAre(Edge{0, 1}));
  EXPECT_EQ(b.edges().size(), 1u);
  EXPECT_EQ(g.restrict(1, 2), g);
  EXPECT_THROW(g.restrict(2, 1), InputError);
  EXPECT_THROW(g.restrict(0, 1), InputError);
}

TEST(TemporalGraphProperty, DegreeSumIsTwiceEdgeCount) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 7);
    const int T = 1 + static_cast<int>(rng() % 4);
    const auto g = ref::random_temporal_graph(rng, n, T, 0.4);
    for (Time t = 1; t <= T; ++t) {
      const auto s = g.snapshot(t);
      int sum = 0;
      for (int d : s.degrees) sum += d;
      ASSERT_EQ(sum, 2 * s.edge_count);
      ASSERT_EQ(g.volume(t), sum);
    }
  }
}

TEST(TemporalGraphProperty, RestrictComposes) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const int T = 1 + static_cast<int>(rng() % 5);
    const auto g = ref::random_temporal_graph(rng, n, T, 0.3);
    ASSERT_EQ(g.restrict(1, T), g);
    const int a = 1 + static_cast<int>(rng() % T);
    const int b = a + static_cast<int>(rng() % (T - a + 1));
    const auto r = g.restrict(a, b);
    ASSERT_EQ(r.lifetime(), b - a + 1);
    for (Time t = a; t <= b; ++t) {
      ASSERT_EQ(r.edges_at(t - a + 1), g.edges_at(t));
    }
    const int a2 = 1 + static_cast<int>(rng() % r.lifetime());
    const int b2 = a2 + static_cast<int>(rng() % (r.lifetime() - a2 + 1));
    ASSERT_EQ(r.restrict(a2, b2), g.restrict(a + a2 - 1, a + b2 - 1));
  }
}

TEST(TemporalGraphProperty, TimeEdgesRebuild) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = ref::random_temporal_graph(rng, 5, 3, 0.5);
    const auto te = g.time_edges();
    ASSERT_TRUE(std::is_sorted(te.begin(), te.end()));
    ASSERT_EQ(TemporalGraph::build(5, 3, te), g);
  }
}
