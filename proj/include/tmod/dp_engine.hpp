#pragma once

#include "tmod/partition_score.hpp"
#include "tmod/score.hpp"
#include "tmod/temporal_graph.hpp"
#include "tmod/treedec.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tmod {

struct DpOptions {
  bool emit_witness = false;
  // Merge states that differ only by a global permutation of part labels.
  bool canonicalize = false;
  // When false, per-part alpha and gamma become part of the key (the
  // uncollapsed state space); only useful for cross-checking.
  bool collapse = true;
};

// Edges inside parts with a forgotten endpoint, and loyal forgotten (v, t).
struct LinearPayload {
  std::int64_t total_alpha = 0;
  std::int64_t gamma = 0;
  friend bool operator==(const LinearPayload&, const LinearPayload&) = default;
};

// Orders payloads by 2*total_alpha + omega*gamma, then gamma, then alpha.
class PayloadOrder {
 public:
  PayloadOrder() = default;
  explicit PayloadOrder(const Omega& omega);
  bool better(const LinearPayload& a, const LinearPayload& b) const;

 private:
  std::int64_t omega_num_ = 0;
  std::int64_t omega_den_ = 1;
};

struct BackPointer {
  std::uint32_t first = UINT32_MAX;
  std::uint32_t second = UINT32_MAX;
};

// States of one nice-decomposition node, keyed by (bag assignment, beta
// profile). Labels are stored 0-based. Each key keeps its dominant payload.
class StateTable {
 public:
  StateTable(int parts, int lifetime, std::vector<Vertex> bag, PayloadOrder order, DpOptions options,
             int aux_width = 0);

  int parts() const { return parts_; }
  int lifetime() const { return lifetime_; }
  const std::vector<Vertex>& bag() const { return bag_; }
  const DpOptions& options() const { return options_; }
  const PayloadOrder& order() const { return order_; }
  std::size_t size() const { return payloads_.size(); }
  bool empty() const { return payloads_.empty(); }

  std::size_t key_width() const { return key_width_; }
  std::size_t assignment_width() const { return bag_.size() * lifetime_; }
  std::span<const std::uint32_t> key(std::size_t i) const {
    return {keys_.data() + i * key_width_, key_width_};
  }
  // Labels of bag position b at times 1..T, entry i.
  std::span<const std::uint32_t> assignment(std::size_t i) const { return key(i).subspan(0, assignment_width()); }
  // beta(p, t) at index p * T + (t - 1).
  std::span<const std::uint32_t> beta(std::size_t i) const {
    return key(i).subspan(assignment_width(), static_cast<std::size_t>(parts_) * lifetime_);
  }
  const LinearPayload& payload(std::size_t i) const { return payloads_[i]; }

  bool has_back_pointers() const { return options_.emit_witness; }
  const BackPointer& back_pointer(std::size_t i) const { return back_[i]; }
  std::span<const std::uint8_t> aux(std::size_t i) const {
    return {aux_.data() + i * aux_width_, static_cast<std::size_t>(aux_width_)};
  }

  // Inserts the state, or replaces an existing entry's payload if the new one
  // is better. Returns the entry index.
  std::size_t offer(std::span<const std::uint32_t> key, const LinearPayload& payload, BackPointer bp = {},
                    std::span<const std::uint8_t> aux = {});
  // Index of an existing key, if present.
  std::optional<std::size_t> find(std::span<const std::uint32_t> key) const;
  // Pre-sizes storage for about `entries` states.
  void reserve(std::size_t entries);
  // Drops all states, keeping allocations.
  void clear();
  // Moves in every state of `other`, whose keys must all be absent here.
  void append_disjoint(const StateTable& other);

 private:
  std::uint64_t hash(std::span<const std::uint32_t> key) const;
  void grow();

  int parts_;
  int lifetime_;
  std::vector<Vertex> bag_;
  PayloadOrder order_;
  DpOptions options_;
  int aux_width_;
  std::size_t key_width_;
  std::vector<std::uint32_t> keys_;
  std::vector<LinearPayload> payloads_;
  std::vector<BackPointer> back_;
  std::vector<std::uint8_t> aux_;
  std::vector<std::uint64_t> hashes_;
  std::vector<std::uint32_t> slots_;  // entry index + 1, 0 = empty
};

StateTable leaf_table(int parts, int lifetime, const Omega& omega, const DpOptions& options = {});
StateTable introduce(const StateTable& child, Vertex v);
StateTable forget(const StateTable& child, Vertex v, const TemporalGraph& g);
StateTable join(const StateTable& left, const StateTable& right);

struct RootScore {
  Score value;
  std::size_t entry = 0;
};

// Maximum over root states of 2*alpha - sum beta^2/(2 m_t) + omega*gamma.
// Throws InputError on a non-root (non-empty bag) or empty table.
RootScore root_score(const StateTable& table, const TemporalGraph& g, const Omega& omega);

struct DpStats {
  std::size_t nodes = 0;
  std::size_t max_table_size = 0;
  std::size_t total_states = 0;
};

struct ExactResult {
  Score raw;
  std::optional<TemporalPartition> witness;
  DpStats stats;
};

// Exact non-normalised temporal c-modularity. Throws InputError if ntd is not
// a valid nice decomposition of g's underlying graph.
ExactResult exact_c_modularity(const TemporalGraph& g, const Omega& omega, int parts,
                               const NiceTreeDecomposition& ntd, const DpOptions& options = {});

}  // namespace tmod
