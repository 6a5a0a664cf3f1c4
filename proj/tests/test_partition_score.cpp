#include "support.hpp"
#include "tmod/partition_score.hpp"

#include <gtest/gtest.h>

using namespace tmod;

namespace {

TemporalGraph p3() {
  std::vector<TimeEdge> e{{0, 1, 1}, {0, 1, 2}, {1, 2, 1}};
  return TemporalGraph::build(3, 2, e);
}

Snapshot k2() { return TemporalGraph::build(2, 1, std::vector<TimeEdge>{{0, 1, 1}}).snapshot(1); }

Omega om(long num, long den = 1) { return Omega(make_score(num, den)); }

}  // namespace

TEST(StaticModularity, SmallCases) {
  const std::vector<int> one{1, 1}, two{1, 2};
  EXPECT_EQ(static_modularity(k2(), one), 0);
  EXPECT_EQ(static_modularity(k2(), two), make_score(-1, 2));
  const auto empty = TemporalGraph::build(3, 1, {}).snapshot(1);
  EXPECT_EQ(static_modularity(empty, std::vector<int>{1, 2, 3}), 0);
}

TEST(Loyalty, Counts) {
  EXPECT_EQ(loyalty(TemporalPartition::constant(5, 2)), 5);
  // Five vertices over two steps, vertex 4 switches parts.
  TemporalPartition fig(5, 2, 2, {1, 1, 1, 1, 1, 1, 2, 2, 2, 1});
  EXPECT_EQ(loyalty(fig), 4);
  EXPECT_EQ(loyalty_at(fig, 1), 4);
  TemporalPartition distinct(2, 2, 4, {1, 3, 2, 4});
  EXPECT_EQ(loyalty(distinct), 0);
  EXPECT_EQ(loyalty(TemporalPartition::constant(3, 1)), 0);
  EXPECT_THROW(loyalty_at(TemporalPartition::constant(3, 1), 1), InputError);
}

TEST(Partition, RejectsBadLabels) {
  EXPECT_THROW(TemporalPartition(2, 1, 2, {1, 3}), InputError);
  EXPECT_THROW(TemporalPartition(2, 1, 2, {0, 1}), InputError);
  EXPECT_THROW(TemporalPartition(2, 1, 2, {1}), InputError);
}

TEST(Normalizer, Examples) {
  EXPECT_EQ(normalizer(p3(), om(1)), make_score(9, 2));
  EXPECT_EQ(normalizer(p3().restrict(1, 1), om(7)), 2);
  EXPECT_EQ(normalizer(TemporalGraph::build(3, 1, {}), om(1)), 0);
}

TEST(TemporalModularity, Examples) {
  const auto g = p3();
  const auto one = TemporalPartition::constant(3, 2);
  EXPECT_EQ(temporal_modularity_raw(g, one, om(1)), 3);
  EXPECT_EQ(temporal_modularity(g, one, om(1)), make_score(1, 3));

  const auto edgeless = TemporalGraph::build(4, 2, {});
  EXPECT_EQ(temporal_modularity(edgeless, TemporalPartition::constant(4, 2), om(1)), 1);
  EXPECT_EQ(temporal_modularity(TemporalGraph::build(4, 1, {}), TemporalPartition::constant(4, 1), om(1)), 0);
}

TEST(TemporalModularity, SingleStepMatchesStatic) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = ref::random_temporal_graph(rng, 5, 1, 0.5);
    const auto p = ref::random_partition(rng, 5, 1, 3);
    const auto s = g.snapshot(1);
    const Score q = static_modularity(s, p.at(1));
    ASSERT_EQ(temporal_modularity_raw(g, p, om(3)), 2 * s.edge_count * q);
    ASSERT_EQ(temporal_modularity(g, p, om(3)), q);
  }
}

TEST(TemporalModularity, AntiAlignedCompleteBipartite) {
  for (int n : {2, 3, 4}) {
    for (int T : {2, 3}) {
      for (const Omega& w : {om(0), om(1, 2), om(1), om(3)}) {
        std::vector<TimeEdge> e;
        for (Time t = 1; t <= T; ++t) {
          for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) e.push_back({i, n + j, t});
          }
        }
        const auto g = TemporalGraph::build(2 * n, T, e);
        // Left side labelled A at odd times and B at even times; right side opposite.
        std::vector<int> labels;
        for (Vertex v = 0; v < 2 * n; ++v) {
          for (Time t = 1; t <= T; ++t) labels.push_back((v < n) == (t % 2 == 1) ? 1 : 2);
        }
        TemporalPartition p(2 * n, T, 2, labels);
        // 2n vertices, m_t = n^2, no loyalty: q = -1/2 (1 + (w/n)(1 - 1/T))^-1.
        const Score inner = 1 + w.value() / n * (1 - Score(1, T));
        Score expected = Score(-1, 2) / inner;
        expected.canonicalize();
        EXPECT_EQ(temporal_modularity(g, p, w), expected) << "n=" << n << " T=" << T;
      }
    }
  }
}

TEST(TemporalModularityProperty, MatchesDefinition) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int T = 1 + static_cast<int>(rng() % 3);
    const int c = 1 + static_cast<int>(rng() % 4);
    const auto g = ref::random_temporal_graph(rng, n, T, 0.5);
    const auto p = ref::random_partition(rng, n, T, c);
    const Omega w = om(static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3));
    ASSERT_EQ(temporal_modularity_raw(g, p, w), ref::reference_raw(g, p.labels(), c, w.value()));
  }
}

TEST(TemporalModularityProperty, LabelPermutationInvariant) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = ref::random_temporal_graph(rng, 4, 3, 0.5);
    const auto p = ref::random_partition(rng, 4, 3, 3);
    std::vector<int> perm{1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> relabelled;
    for (int l : p.labels()) relabelled.push_back(perm[l - 1]);
    const TemporalPartition q(4, 3, 3, relabelled);
    ASSERT_EQ(temporal_modularity_raw(g, p, om(1, 2)), temporal_modularity_raw(g, q, om(1, 2)));
  }
}

TEST(Kappa, Examples) {
  const auto g = p3();
  const Omega w = om(1);
  const Score two_mu = 2 * normalizer(g, w);
  EXPECT_EQ(kappa(g, w, 0, 0, 1, 2), Score(w.value() / two_mu));
  EXPECT_EQ(kappa(g, w, 0, 1, 1, 2), 0);
  // Edge 1-2 at time 1: degrees 2 and 1, m_1 = 2.
  Score expected = (1 - Score(2 * 1, 4)) / two_mu;
  expected.canonicalize();
  EXPECT_EQ(kappa(g, w, 1, 2, 1, 1), expected);
}

TEST(SumForm, Examples) {
  const auto g = p3().restrict(1, 1);
  const auto one = TemporalPartition::constant(3, 1);
  EXPECT_EQ(temporal_modularity_sumform(g, one, om(1)), 0);
  EXPECT_EQ(temporal_modularity_sumform(g, one, om(1)), temporal_modularity(g, one, om(1)));
}

TEST(SumFormProperty, MatchesObjective) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int T = 1 + static_cast<int>(rng() % 3);
    const auto g = ref::random_temporal_graph(rng, n, T, 0.6);
    const auto p = ref::random_partition(rng, n, T, 3);
    const Omega w = om(static_cast<long>(rng() % 3), 2);
    ASSERT_EQ(temporal_modularity_sumform(g, p, w), temporal_modularity(g, p, w));
  }
}

TEST(SumFormProperty, KappaMass) {
  std::mt19937_64 rng(25);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int T = 1 + static_cast<int>(rng() % 3);
    const auto g = ref::random_temporal_graph(rng, n, T, 0.7);
    bool all_nonempty = true;
    for (Time t = 1; t <= T; ++t) all_nonempty &= g.edge_count(t) >= 1;
    if (!all_nonempty) continue;
    const Omega w = om(1 + static_cast<long>(rng() % 3), 2);
    Score mass = 0;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex u2 = 0; u2 < n; ++u2) {
        for (Time t = 1; t <= T; ++t) {
          for (Time t2 = 1; t2 <= T; ++t2) mass += kappa(g, w, u, u2, t, t2);
        }
      }
    }
    ASSERT_EQ(mass * 2 * normalizer(g, w), w.value() * n * (T - 1));
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(BoundsProperty, NormalizedWithinRange) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int T = 1 + static_cast<int>(rng() % 3);
    const auto g = ref::random_temporal_graph(rng, n, T, 0.5);
    const Omega w = om(static_cast<long>(rng() % 4), 1 + static_cast<long>(rng() % 2));
    if (normalizer(g, w) == 0) continue;
    const auto q = temporal_modularity(g, ref::random_partition(rng, n, T, 1 + static_cast<int>(rng() % 4)), w);
    ASSERT_GE(q, Score(-1, 2));
    ASSERT_LE(q, 1);
  }
}
