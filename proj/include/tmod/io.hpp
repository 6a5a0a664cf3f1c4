#pragma once

#include "tmod/oracle.hpp"
#include "tmod/partition_score.hpp"
#include "tmod/score.hpp"
#include "tmod/temporal_graph.hpp"
#include "tmod/treedec.hpp"
#include "tmod/window_approx.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tmod {

// Temporal graph file: header `tg <n> <T>`, then `<u> <v> <t>` per line with
// 0-indexed vertices and 1-indexed times. `#` starts a comment.
TemporalGraph parse_tg(std::string_view text);
// Canonical form: time-edges sorted by (u, v, t) with u < v.
std::string write_tg(const TemporalGraph& g);

// Decomposition file in the PACE style: `s td <bags> <max_bag_size> <n>`,
// `b <id> <v...>` with 1-based bag ids and vertices, then `<id1> <id2>` tree
// edges. Lines starting with `c` or `#` are comments. Checks syntax and the
// header counts only.
TreeDecomposition parse_td(std::string_view text);
// parse_td plus full validation against `graph`; throws InputError naming the
// violation.
TreeDecomposition load_td(std::string_view text, const StaticGraph& graph);
std::string write_td(const TreeDecomposition& td, int n);

// One `<v> <t> <part>` line per (vertex, time); parts start at 1.
TemporalPartition parse_partition(std::string_view text, int n, int lifetime);
std::string write_partition(const TemporalPartition& p);

enum class OutputFormat { Json, Tsv };

struct ResultRecord {
  std::optional<Score> q_raw;
  std::optional<Score> q_normalized;
  std::optional<Score> guarantee_factor;
  std::optional<std::vector<Time>> breakpoints;
  std::optional<std::string> witness_path;

  static ResultRecord from(const ApproxResult& r);
  static ResultRecord from(const OracleResult& r);
  static ResultRecord from_raw(const Score& raw, const Score& mu);
};

std::string emit_result(const ResultRecord& r, OutputFormat format);

}  // namespace tmod
