#include "support.hpp"
#include "tmod/genbench.hpp"
#include "tmod/io.hpp"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

using namespace tmod;
using ::testing::HasSubstr;

namespace {

Omega om(long num, long den = 1) { return Omega(make_score(num, den)); }

template <typename F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(TgFormat, ParsesPathInstance) {
  const auto g = parse_tg("tg 3 2\n0 1 1\n0 1 2\n1 2 1");
  EXPECT_EQ(g.vertex_count(), 3);
  EXPECT_EQ(g.lifetime(), 2);
  EXPECT_EQ(g.edge_count(1), 2);
  EXPECT_EQ(g.edge_count(2), 1);
  EXPECT_EQ(parse_tg("# header next\n\ntg 3 2\n1 0 1 # reversed\n0 1 2\n  2 1 1\n"), g);
}

TEST(TgFormat, ErrorsCarryLineNumbers) {
  EXPECT_THAT(error_of([] { parse_tg("tg 2 1\n0 0 1"); }), HasSubstr("line 2: self-loop"));
  EXPECT_THAT(error_of([] { parse_tg("tg 2\n"); }), HasSubstr("line 1"));
  EXPECT_THAT(error_of([] { parse_tg("graph 2 1\n"); }), HasSubstr("line 1"));
  EXPECT_THAT(error_of([] { parse_tg("tg 2 1\n0 2 1"); }), HasSubstr("line 2: vertex out of range"));
  EXPECT_THAT(error_of([] { parse_tg("tg 2 1\n0 1 2"); }), HasSubstr("line 2: time out of range"));
  EXPECT_THAT(error_of([] { parse_tg("tg 2 2\n0 1 1\n\n1 0 1"); }), HasSubstr("line 4: duplicate"));
  EXPECT_THAT(error_of([] { parse_tg("tg 2 1\n0 x 1"); }), HasSubstr("line 2: expected integer"));
  EXPECT_THAT(error_of([] { parse_tg("tg 2 1\n0 1"); }), HasSubstr("line 2"));
  EXPECT_FALSE(error_of([] { parse_tg(""); }).empty());
}

TEST(TgFormatProperty, CanonicalRoundTrip) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = ref::random_temporal_graph(rng, 1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 4), 0.4);
    const std::string text = write_tg(g);
    ASSERT_EQ(parse_tg(text), g);
    ASSERT_EQ(write_tg(parse_tg(text)), text);
  }
}

TEST(TdFormat, ParsesAndValidates) {
  const StaticGraph k2{2, {{0, 1}}};
  const auto td = load_td("s td 1 2 2\nb 1 1 2\n", k2);
  EXPECT_EQ(td.width(), 1);
  EXPECT_EQ(write_td(td, 2), "s td 1 2 2\nb 1 1 2\n");

  const StaticGraph p3{3, {{0, 1}, {1, 2}}};
  EXPECT_THAT(error_of([&] { load_td("s td 2 2 3\nb 1 1 2\nb 2 3\n1 2\n", p3); }), HasSubstr("edge 1-2"));
  EXPECT_THAT(error_of([&] { load_td("s td 3 2 3\nb 1 1 2\nb 2 2 3\nb 3 2\n1 2\n2 3\n3 1\n", p3); }),
              HasSubstr("tree"));
  EXPECT_NO_THROW(load_td("c comment\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n", p3));
}

TEST(TdFormat, SyntaxErrors) {
  EXPECT_THAT(error_of([] { parse_td("s td 1 3 2\nb 1 1 2\n"); }), HasSubstr("max bag size"));
  EXPECT_THAT(error_of([] { parse_td("s td 2 2 2\nb 1 1 2\n"); }), HasSubstr("bag 2"));
  EXPECT_THAT(error_of([] { parse_td("s td 1 2 2\nb 1 1 3\n"); }), HasSubstr("line 2"));
  EXPECT_THAT(error_of([] { parse_td("s td 1 2 2\nb 1 1 2\nb 1 1\n"); }), HasSubstr("twice"));
  EXPECT_THAT(error_of([] { parse_td("s td 1 2 2\nb 1 1 2\n1 2\n"); }), HasSubstr("unknown bag"));
  EXPECT_THAT(error_of([] { parse_td("p td 1 2 2\n"); }), HasSubstr("line 1"));
}

TEST(TdFormatProperty, CanonicalRoundTrip) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenSpec spec{.n = 8, .k = 2, .lifetime = 2, .p_active = make_score(1, 2), .seed = seed};
    const auto inst = gen_partial_ktree_temporal(spec);
    const std::string text = write_td(inst.witness, spec.n);
    const auto back = load_td(text, inst.graph.underlying());
    ASSERT_EQ(write_td(back, spec.n), text);
  }
}

TEST(PartitionFormat, ParsesAndChecksTotality) {
  const std::string all_ones = "0 1 1\n0 2 1\n1 1 1\n1 2 1\n2 1 1\n2 2 1\n";
  EXPECT_EQ(parse_partition(all_ones, 3, 2), TemporalPartition::constant(3, 2));
  EXPECT_EQ(write_partition(parse_partition(all_ones, 3, 2)), all_ones);

  EXPECT_THAT(error_of([] { parse_partition("0 1 1\n0 2 1\n1 1 1\n1 2 1\n2 1 1\n", 3, 2); }),
              HasSubstr("(2, 2)"));
  EXPECT_THAT(error_of([] { parse_partition("0 1 1\n0 1 2\n", 1, 1); }), HasSubstr("duplicate pair (0, 1)"));
  EXPECT_THAT(error_of([] { parse_partition("0 1 0\n", 1, 1); }), HasSubstr("at least 1"));
  EXPECT_THAT(error_of([] { parse_partition("3 1 1\n", 1, 1); }), HasSubstr("line 1"));
}

TEST(PartitionFormatProperty, RoundTrip) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5), T = 1 + static_cast<int>(rng() % 4);
    const auto p = ref::random_partition(rng, n, T, 4);
    const std::string text = write_partition(p);
    const auto back = parse_partition(text, n, T);
    ASSERT_EQ(back.labels(), p.labels());
    ASSERT_EQ(write_partition(back), text);
  }
}

TEST(EmitResult, Json) {
  auto rec = ResultRecord::from_raw(3, make_score(9, 2));
  EXPECT_EQ(emit_result(rec, OutputFormat::Json),
            "{\"q_raw\":{\"num\":3,\"den\":1},\"q_normalized\":{\"num\":1,\"den\":3},\"q_float\":\"0.333333333333\"}\n");

  ApproxResult a;
  a.raw = 0;
  a.normalized = 0;
  a.guarantee_factor = guarantee_factor(3, 4);
  a.plan.breakpoints = {0, 2, 4};
  EXPECT_THAT(emit_result(ResultRecord::from(a), OutputFormat::Json),
              HasSubstr("\"guarantee_factor\":{\"num\":1,\"den\":6},\"breakpoints\":[0,2,4]"));
  a.guarantee_factor = guarantee_factor(1, 1);
  EXPECT_THAT(emit_result(ResultRecord::from(a), OutputFormat::Json),
              HasSubstr("\"guarantee_factor\":{\"num\":-2,\"den\":1}"));

  ResultRecord big;
  big.q_raw = Score(mpz_class("123456789012345678901234567890"), mpz_class(7));
  EXPECT_THAT(emit_result(big, OutputFormat::Json), HasSubstr("\"num\":\"123456789012345678901234567890\""));
}

TEST(EmitResult, Tsv) {
  auto rec = ResultRecord::from_raw(3, make_score(9, 2));
  rec.witness_path = "w.txt";
  EXPECT_EQ(emit_result(rec, OutputFormat::Tsv),
            "q_raw\tq_normalized\tq_float\twitness_path\n3\t1/3\t0.333333333333\tw.txt\n");
  EXPECT_EQ(emit_result(ResultRecord::from_raw(0, 0), OutputFormat::Tsv), "q_raw\tq_normalized\tq_float\n0\t0\t0\n");
}
