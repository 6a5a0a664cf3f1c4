#include "tmod/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace tmod {

namespace {

struct Line {
  int number;
  std::vector<std::string_view> tokens;
};

// Splits into non-empty, comment-stripped lines of whitespace tokens.
std::vector<Line> tokenize(std::string_view text, std::string_view comment_words = {}) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Line parsed{number, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) parsed.tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    bool comment = !parsed.tokens.empty() && !comment_words.empty() &&
                   comment_words.find(parsed.tokens[0]) != std::string_view::npos && parsed.tokens[0].size() == 1;
    if (!parsed.tokens.empty() && !comment) lines.push_back(std::move(parsed));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

long to_int(std::string_view tok, int line) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) fail(line, "expected integer, got '" + std::string(tok) + "'");
  return value;
}

}  // namespace

TemporalGraph parse_tg(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw InputError("empty temporal graph file");
  const Line& header = lines.front();
  if (header.tokens.size() != 3 || header.tokens[0] != "tg") fail(header.number, "expected header 'tg <n> <T>'");
  const long n = to_int(header.tokens[1], header.number);
  const long T = to_int(header.tokens[2], header.number);
  if (n < 0) fail(header.number, "vertex count must be non-negative");
  if (T < 1) fail(header.number, "lifetime must be at least 1");

  std::vector<TimeEdge> edges;
  std::map<TimeEdge, int> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens.size() != 3) fail(l.number, "expected '<u> <v> <t>'");
    const long u = to_int(l.tokens[0], l.number);
    const long v = to_int(l.tokens[1], l.number);
    const long t = to_int(l.tokens[2], l.number);
    if (u < 0 || u >= n || v < 0 || v >= n) fail(l.number, "vertex out of range 0.." + std::to_string(n - 1));
    if (u == v) fail(l.number, "self-loop on vertex " + std::to_string(u));
    if (t < 1 || t > T) fail(l.number, "time out of range 1.." + std::to_string(T));
    TimeEdge te{static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v)), static_cast<Time>(t)};
    auto [it, inserted] = seen.emplace(te, l.number);
    if (!inserted) fail(l.number, "duplicate time-edge, first seen on line " + std::to_string(it->second));
    edges.push_back(te);
  }
  return TemporalGraph::build(static_cast<int>(n), static_cast<int>(T), edges);
}

std::string write_tg(const TemporalGraph& g) {
  std::ostringstream out;
  out << "tg " << g.vertex_count() << ' ' << g.lifetime() << '\n';
  for (const auto& te : g.time_edges()) out << te.u << ' ' << te.v << ' ' << te.t << '\n';
  return out.str();
}

TreeDecomposition parse_td(std::string_view text) {
  auto lines = tokenize(text, "c");
  if (lines.empty()) throw InputError("empty tree decomposition file");
  const Line& header = lines.front();
  if (header.tokens.size() != 5 || header.tokens[0] != "s" || header.tokens[1] != "td") {
    fail(header.number, "expected header 's td <bags> <max_bag_size> <n>'");
  }
  const long bags = to_int(header.tokens[2], header.number);
  const long max_bag = to_int(header.tokens[3], header.number);
  const long n = to_int(header.tokens[4], header.number);
  if (bags < 1) fail(header.number, "decomposition needs at least one bag");
  if (n < 0 || max_bag < 0) fail(header.number, "negative count in header");

  TreeDecomposition td;
  td.bags.resize(bags);
  std::vector<bool> defined(bags, false);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens[0] == "b") {
      if (l.tokens.size() < 2) fail(l.number, "bag line needs an id");
      const long id = to_int(l.tokens[1], l.number);
      if (id < 1 || id > bags) fail(l.number, "bag id out of range 1.." + std::to_string(bags));
      if (defined[id - 1]) fail(l.number, "bag " + std::to_string(id) + " defined twice");
      defined[id - 1] = true;
      std::vector<Vertex> bag;
      for (std::size_t k = 2; k < l.tokens.size(); ++k) {
        const long v = to_int(l.tokens[k], l.number);
        if (v < 1 || v > n) fail(l.number, "vertex out of range 1.." + std::to_string(n));
        bag.push_back(static_cast<Vertex>(v - 1));
      }
      std::sort(bag.begin(), bag.end());
      if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) fail(l.number, "repeated vertex in bag");
      td.bags[id - 1] = std::move(bag);
    } else {
      if (l.tokens.size() != 2) fail(l.number, "expected tree edge '<id1> <id2>'");
      const long a = to_int(l.tokens[0], l.number);
      const long b = to_int(l.tokens[1], l.number);
      if (a < 1 || a > bags || b < 1 || b > bags) fail(l.number, "tree edge references unknown bag");
      td.tree_edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
    }
  }
  for (long id = 0; id < bags; ++id) {
    if (!defined[id]) throw InputError("bag " + std::to_string(id + 1) + " is never defined");
  }
  if (td.width() + 1 != max_bag) {
    fail(header.number, "header declares max bag size " + std::to_string(max_bag) + " but largest bag has " +
                            std::to_string(td.width() + 1) + " vertices");
  }
  return td;
}

TreeDecomposition load_td(std::string_view text, const StaticGraph& graph) {
  TreeDecomposition td = parse_td(text);
  if (auto report = validate(td, graph); !report) throw InputError("invalid tree decomposition: " + report.message);
  return td;
}

std::string write_td(const TreeDecomposition& td, int n) {
  std::ostringstream out;
  out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << n << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    std::vector<Vertex> bag = td.bags[i];
    std::sort(bag.begin(), bag.end());
    out << "b " << i + 1;
    for (Vertex v : bag) out << ' ' << v + 1;
    out << '\n';
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : td.tree_edges) edges.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(edges.begin(), edges.end());
  for (auto [a, b] : edges) out << a + 1 << ' ' << b + 1 << '\n';
  return out.str();
}

TemporalPartition parse_partition(std::string_view text, int n, int lifetime) {
  auto lines = tokenize(text);
  std::vector<int> labels(static_cast<std::size_t>(n) * lifetime, 0);
  std::vector<int> line_of(labels.size(), 0);
  int parts = 1;
  for (const Line& l : lines) {
    if (l.tokens.size() != 3) fail(l.number, "expected '<v> <t> <part>'");
    const long v = to_int(l.tokens[0], l.number);
    const long t = to_int(l.tokens[1], l.number);
    const long p = to_int(l.tokens[2], l.number);
    if (v < 0 || v >= n) fail(l.number, "vertex out of range 0.." + std::to_string(n - 1));
    if (t < 1 || t > lifetime) fail(l.number, "time out of range 1.." + std::to_string(lifetime));
    if (p < 1) fail(l.number, "part label must be at least 1");
    const std::size_t idx = static_cast<std::size_t>(v) * lifetime + (t - 1);
    if (line_of[idx] != 0) {
      fail(l.number, "duplicate pair (" + std::to_string(v) + ", " + std::to_string(t) + "), first on line " +
                         std::to_string(line_of[idx]));
    }
    line_of[idx] = l.number;
    labels[idx] = static_cast<int>(p);
    parts = std::max(parts, static_cast<int>(p));
  }
  for (std::size_t idx = 0; idx < labels.size(); ++idx) {
    if (labels[idx] == 0) {
      throw InputError("partition misses pair (" + std::to_string(idx / lifetime) + ", " +
                       std::to_string(idx % lifetime + 1) + ")");
    }
  }
  return TemporalPartition(n, lifetime, parts, std::move(labels));
}

std::string write_partition(const TemporalPartition& p) {
  std::ostringstream out;
  for (Vertex v = 0; v < p.vertex_count(); ++v) {
    for (Time t = 1; t <= p.lifetime(); ++t) out << v << ' ' << t << ' ' << p.label(v, t) << '\n';
  }
  return out.str();
}

ResultRecord ResultRecord::from(const ApproxResult& r) {
  ResultRecord rec;
  rec.q_raw = r.raw;
  rec.q_normalized = r.normalized;
  rec.guarantee_factor = r.guarantee_factor;
  rec.breakpoints = r.plan.breakpoints;
  return rec;
}

ResultRecord ResultRecord::from(const OracleResult& r) {
  ResultRecord rec;
  rec.q_raw = r.best_raw;
  rec.q_normalized = r.best_normalized;
  return rec;
}

ResultRecord ResultRecord::from_raw(const Score& raw, const Score& mu) {
  ResultRecord rec;
  rec.q_raw = raw;
  Score q = sgn(mu) == 0 ? Score(0) : Score(raw / (2 * mu));
  q.canonicalize();
  rec.q_normalized = q;
  return rec;
}

namespace {

nlohmann::ordered_json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

nlohmann::ordered_json rational_json(const Score& s) {
  return {{"num", integer_json(s.get_num())}, {"den", integer_json(s.get_den())}};
}

}  // namespace

std::string emit_result(const ResultRecord& r, OutputFormat format) {
  // Float rendering follows the normalised value when present.
  std::optional<std::string> q_float;
  if (r.q_normalized) {
    q_float = to_decimal(*r.q_normalized, 12);
  } else if (r.q_raw) {
    q_float = to_decimal(*r.q_raw, 12);
  }

  if (format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    if (r.q_raw) j["q_raw"] = rational_json(*r.q_raw);
    if (r.q_normalized) j["q_normalized"] = rational_json(*r.q_normalized);
    if (q_float) j["q_float"] = *q_float;
    if (r.guarantee_factor) j["guarantee_factor"] = rational_json(*r.guarantee_factor);
    if (r.breakpoints) j["breakpoints"] = *r.breakpoints;
    if (r.witness_path) j["witness_path"] = *r.witness_path;
    return j.dump() + "\n";
  }

  std::vector<std::string> names;
  std::vector<std::string> values;
  auto add = [&](std::string name, std::string value) {
    names.push_back(std::move(name));
    values.push_back(std::move(value));
  };
  if (r.q_raw) add("q_raw", to_string(*r.q_raw));
  if (r.q_normalized) add("q_normalized", to_string(*r.q_normalized));
  if (q_float) add("q_float", *q_float);
  if (r.guarantee_factor) add("guarantee_factor", to_string(*r.guarantee_factor));
  if (r.breakpoints) {
    std::string list;
    for (std::size_t i = 0; i < r.breakpoints->size(); ++i) {
      if (i) list += ',';
      list += std::to_string((*r.breakpoints)[i]);
    }
    add("breakpoints", list);
  }
  if (r.witness_path) add("witness_path", *r.witness_path);
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "\t" : "") + names[i];
  out += '\n';
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "\t" : "") + values[i];
  out += '\n';
  return out;
}

}  // namespace tmod
