#include "tmod/dp_engine.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace tmod {

namespace {

using i128 = __int128;

std::int64_t to_int64(const mpz_class& z, const char* what) {
  if (!z.fits_slong_p()) throw InputError(std::string(what) + " does not fit in 64 bits");
  return z.get_si();
}

// Word offsets of the key sections for a bag of `bag` vertices.
struct Layout {
  std::size_t bag;
  int T;
  int c;
  bool collapse;

  std::size_t assign_width() const { return bag * T; }
  std::size_t beta_offset() const { return assign_width(); }
  std::size_t alpha_offset() const { return beta_offset() + static_cast<std::size_t>(c) * T; }
  std::size_t gamma_offset() const { return alpha_offset() + c; }
  std::size_t width() const { return collapse ? alpha_offset() : gamma_offset() + 1; }
};

Layout layout_of(const StateTable& t) {
  return Layout{t.bag().size(), t.lifetime(), t.parts(), t.options().collapse};
}

std::size_t position_in(const std::vector<Vertex>& bag, Vertex v) {
  return static_cast<std::size_t>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

// Relabelling that puts a key into canonical form: labels of the bag
// assignment in order of first appearance, then labels that only carry
// forgotten degree mass ordered by their beta rows (largest first), then
// empty labels. perm[old] = new.
std::vector<std::uint32_t> canonical_perm(std::span<const std::uint32_t> key, const Layout& L) {
  constexpr std::uint32_t unset = UINT32_MAX;
  std::vector<std::uint32_t> perm(L.c, unset);
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < L.assign_width(); ++i) {
    if (perm[key[i]] == unset) perm[key[i]] = next++;
  }
  auto row = [&](std::uint32_t p) { return key.subspan(L.beta_offset() + static_cast<std::size_t>(p) * L.T, L.T); };
  std::vector<std::uint32_t> loaded;
  std::vector<std::uint32_t> empty;
  for (std::uint32_t p = 0; p < static_cast<std::uint32_t>(L.c); ++p) {
    if (perm[p] != unset) continue;
    auto r = row(p);
    if (std::any_of(r.begin(), r.end(), [](std::uint32_t x) { return x != 0; })) {
      loaded.push_back(p);
    } else {
      empty.push_back(p);
    }
  }
  std::stable_sort(loaded.begin(), loaded.end(), [&](std::uint32_t a, std::uint32_t b) {
    auto ra = row(a), rb = row(b);
    return std::lexicographical_compare(rb.begin(), rb.end(), ra.begin(), ra.end());
  });
  for (auto p : loaded) perm[p] = next++;
  for (auto p : empty) perm[p] = next++;
  return perm;
}

void apply_perm(std::vector<std::uint32_t>& key, const Layout& L, std::span<const std::uint32_t> perm) {
  for (std::size_t i = 0; i < L.assign_width(); ++i) key[i] = perm[key[i]];
  std::vector<std::uint32_t> beta(key.begin() + L.beta_offset(), key.begin() + L.alpha_offset());
  for (int p = 0; p < L.c; ++p) {
    std::copy_n(beta.begin() + static_cast<std::size_t>(p) * L.T, L.T,
                key.begin() + L.beta_offset() + static_cast<std::size_t>(perm[p]) * L.T);
  }
}

bool is_identity(std::span<const std::uint32_t> perm) {
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] != i) return false;
  }
  return true;
}

// Number of distinct labels in a canonical key's assignment plus the labels
// holding forgotten mass; those are exactly 0..used-1.
std::uint32_t used_labels(std::span<const std::uint32_t> key, const Layout& L) {
  std::uint32_t used = 0;
  for (std::size_t i = 0; i < L.assign_width(); ++i) used = std::max(used, key[i] + 1);
  for (std::uint32_t p = used; p < static_cast<std::uint32_t>(L.c); ++p) {
    auto r = key.subspan(L.beta_offset() + static_cast<std::size_t>(p) * L.T, L.T);
    if (std::any_of(r.begin(), r.end(), [](std::uint32_t x) { return x != 0; })) used = p + 1;
  }
  return used;
}

void introduce_key(std::span<const std::uint32_t> child, const Layout& CL, std::size_t pos,
                   std::span<const std::uint8_t> labels, std::vector<std::uint32_t>& out) {
  const std::size_t T = CL.T;
  const std::size_t head = pos * T;
  out.resize(CL.width() + T);
  std::copy_n(child.begin(), head, out.begin());
  for (std::size_t t = 0; t < T; ++t) out[head + t] = labels[t];
  std::copy(child.begin() + head, child.end(), out.begin() + head + T);
}

// Neighbours of the forgotten vertex that stay in the bag, per time.
struct ForgetPlan {
  std::size_t pos = 0;
  std::vector<std::vector<std::size_t>> partners;  // [t-1] -> child bag positions
  std::vector<std::uint32_t> degree;               // [t-1]
};

ForgetPlan plan_forget(const std::vector<Vertex>& child_bag, Vertex v, const TemporalGraph& g) {
  ForgetPlan plan;
  plan.pos = position_in(child_bag, v);
  const int T = g.lifetime();
  plan.partners.assign(T, {});
  plan.degree.assign(T, 0);
  for (Time t = 1; t <= T; ++t) plan.degree[t - 1] = static_cast<std::uint32_t>(g.degree(v, t));
  for (const auto& [u, e] : g.neighbours(v)) {
    auto it = std::lower_bound(child_bag.begin(), child_bag.end(), u);
    if (it == child_bag.end() || *it != u) continue;
    const std::size_t upos = static_cast<std::size_t>(it - child_bag.begin());
    for (Time t : g.activity(e)) plan.partners[t - 1].push_back(upos);
  }
  return plan;
}

LinearPayload forget_key(std::span<const std::uint32_t> child, const Layout& CL, const ForgetPlan& plan,
                         std::vector<std::uint32_t>& out) {
  const std::size_t T = CL.T;
  const Layout PL{CL.bag - 1, CL.T, CL.c, CL.collapse};
  out.resize(PL.width());
  const std::size_t head = plan.pos * T;
  std::copy_n(child.begin(), head, out.begin());
  std::copy(child.begin() + head + T, child.end(), out.begin() + head);

  LinearPayload inc;
  auto vlabel = [&](std::size_t t) { return child[head + t]; };
  for (std::size_t t = 0; t < T; ++t) {
    const std::uint32_t p = vlabel(t);
    std::int64_t matched = 0;
    for (std::size_t upos : plan.partners[t]) matched += child[upos * T + t] == p;
    inc.total_alpha += matched;
    out[PL.beta_offset() + p * T + t] += plan.degree[t];
    if (!CL.collapse) out[PL.alpha_offset() + p] += static_cast<std::uint32_t>(matched);
    if (t + 1 < T && vlabel(t + 1) == p) ++inc.gamma;
  }
  if (!CL.collapse) out[PL.gamma_offset()] += static_cast<std::uint32_t>(inc.gamma);
  return inc;
}

// right's labels are mapped through `map` (identity when empty).
void join_key(std::span<const std::uint32_t> left, std::span<const std::uint32_t> right, const Layout& L,
              std::span<const std::uint8_t> map, std::vector<std::uint32_t>& out) {
  out.assign(left.begin(), left.end());
  const std::size_t T = L.T;
  for (int p = 0; p < L.c; ++p) {
    const std::size_t target = map.empty() ? p : map[p];
    for (std::size_t t = 0; t < T; ++t) {
      out[L.beta_offset() + target * T + t] += right[L.beta_offset() + p * T + t];
    }
  }
  if (!L.collapse) {
    for (int p = 0; p < L.c; ++p) {
      const std::size_t target = map.empty() ? p : map[p];
      out[L.alpha_offset() + target] += right[L.alpha_offset() + p];
    }
    out[L.gamma_offset()] += right[L.gamma_offset()];
  }
}

LinearPayload add(const LinearPayload& a, const LinearPayload& b) {
  return {a.total_alpha + b.total_alpha, a.gamma + b.gamma};
}

// Canonicalises `key` in place when the table asks for it.
void finish_key(std::vector<std::uint32_t>& key, const Layout& L, bool canonical) {
  if (!canonical) return;
  auto perm = canonical_perm(key, L);
  if (!is_identity(perm)) apply_perm(key, L, perm);
}

}  // namespace

PayloadOrder::PayloadOrder(const Omega& omega)
    : omega_num_(to_int64(omega.value().get_num(), "omega numerator")),
      omega_den_(to_int64(omega.value().get_den(), "omega denominator")) {}

bool PayloadOrder::better(const LinearPayload& a, const LinearPayload& b) const {
  const i128 sa = static_cast<i128>(2 * a.total_alpha) * omega_den_ + static_cast<i128>(omega_num_) * a.gamma;
  const i128 sb = static_cast<i128>(2 * b.total_alpha) * omega_den_ + static_cast<i128>(omega_num_) * b.gamma;
  if (sa != sb) return sa > sb;
  if (a.gamma != b.gamma) return a.gamma > b.gamma;
  return a.total_alpha > b.total_alpha;
}

StateTable::StateTable(int parts, int lifetime, std::vector<Vertex> bag, PayloadOrder order, DpOptions options,
                       int aux_width)
    : parts_(parts),
      lifetime_(lifetime),
      bag_(std::move(bag)),
      order_(order),
      options_(options),
      aux_width_(options.emit_witness ? aux_width : 0) {
  key_width_ = Layout{bag_.size(), lifetime_, parts_, options_.collapse}.width();
  slots_.assign(16, 0);
}

std::uint64_t StateTable::hash(std::span<const std::uint32_t> key) const {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ key.size();
  for (std::uint32_t w : key) {
    h ^= w;
    h *= 0xFF51AFD7ED558CCDULL;
    h ^= h >> 32;
  }
  h ^= h >> 29;
  h *= 0xC4CEB9FE1A85EC53ULL;
  h ^= h >> 32;
  return h;
}

void StateTable::grow() {
  std::vector<std::uint32_t> slots(slots_.size() * 2, 0);
  const std::size_t mask = slots.size() - 1;
  for (std::size_t i = 0; i < size(); ++i) {
    std::size_t s = hashes_[i] & mask;
    while (slots[s] != 0) s = (s + 1) & mask;
    slots[s] = static_cast<std::uint32_t>(i + 1);
  }
  slots_ = std::move(slots);
}

void StateTable::reserve(std::size_t entries) {
  keys_.reserve(entries * key_width_);
  payloads_.reserve(entries);
  hashes_.reserve(entries);
  if (options_.emit_witness) {
    back_.reserve(entries);
    aux_.reserve(entries * aux_width_);
  }
  std::size_t want = 16;
  while (want < 2 * entries + 2) want *= 2;
  while (slots_.size() < want) grow();
}

void StateTable::clear() {
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t i = 0; i < size(); ++i) {
    std::size_t s = hashes_[i] & mask;
    while (slots_[s] != i + 1) s = (s + 1) & mask;
    slots_[s] = 0;
  }
  keys_.clear();
  payloads_.clear();
  hashes_.clear();
  back_.clear();
  aux_.clear();
}

void StateTable::append_disjoint(const StateTable& other) {
  while (slots_.size() < 2 * (size() + other.size()) + 2) grow();
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t i = 0; i < other.size(); ++i) {
    const std::size_t idx = size();
    if (idx >= UINT32_MAX - 1) throw std::length_error("state table too large");
    const std::uint64_t h = other.hashes_[i];
    std::size_t s = h & mask;
    while (slots_[s] != 0) s = (s + 1) & mask;
    slots_[s] = static_cast<std::uint32_t>(idx + 1);
    auto k = other.key(i);
    keys_.insert(keys_.end(), k.begin(), k.end());
    payloads_.push_back(other.payloads_[i]);
    hashes_.push_back(h);
    if (options_.emit_witness) {
      back_.push_back(other.back_[i]);
      auto a = other.aux(i);
      aux_.insert(aux_.end(), a.begin(), a.end());
    }
  }
}

std::optional<std::size_t> StateTable::find(std::span<const std::uint32_t> k) const {
  const std::uint64_t h = hash(k);
  const std::size_t mask = slots_.size() - 1;
  std::size_t s = h & mask;
  while (slots_[s] != 0) {
    const std::size_t idx = slots_[s] - 1;
    if (hashes_[idx] == h) {
      auto existing = key(idx);
      if (std::equal(existing.begin(), existing.end(), k.begin(), k.end())) return idx;
    }
    s = (s + 1) & mask;
  }
  return std::nullopt;
}

std::size_t StateTable::offer(std::span<const std::uint32_t> k, const LinearPayload& payload, BackPointer bp,
                              std::span<const std::uint8_t> aux) {
  if (k.size() != key_width_) throw std::logic_error("state key width mismatch");
  const std::uint64_t h = hash(k);
  const std::size_t mask = slots_.size() - 1;
  std::size_t s = h & mask;
  while (slots_[s] != 0) {
    const std::size_t idx = slots_[s] - 1;
    if (hashes_[idx] == h) {
      auto existing = key(idx);
      if (std::equal(existing.begin(), existing.end(), k.begin(), k.end())) {
        if (order_.better(payload, payloads_[idx])) {
          payloads_[idx] = payload;
          if (options_.emit_witness) {
            back_[idx] = bp;
            std::copy_n(aux.begin(), aux_width_, aux_.begin() + idx * aux_width_);
          }
        }
        return idx;
      }
    }
    s = (s + 1) & mask;
  }
  const std::size_t idx = size();
  if (idx >= UINT32_MAX - 1) throw std::length_error("state table too large");
  keys_.insert(keys_.end(), k.begin(), k.end());
  payloads_.push_back(payload);
  hashes_.push_back(h);
  if (options_.emit_witness) {
    back_.push_back(bp);
    aux_.insert(aux_.end(), aux.begin(), aux.begin() + aux_width_);
  }
  slots_[s] = static_cast<std::uint32_t>(idx + 1);
  if (2 * size() > slots_.size()) grow();
  return idx;
}

StateTable leaf_table(int parts, int lifetime, const Omega& omega, const DpOptions& options) {
  if (parts < 1 || parts > 255) throw InputError("number of parts must be in 1..255");
  if (lifetime < 1) throw InputError("lifetime must be at least 1");
  if (options.canonicalize && !options.collapse) {
    throw InputError("label canonicalisation requires the collapsed state space");
  }
  StateTable table(parts, lifetime, {}, PayloadOrder(omega), options);
  std::vector<std::uint32_t> key(table.key_width(), 0);
  table.offer(key, {});
  return table;
}

StateTable introduce(const StateTable& child, Vertex v) {
  const auto& cbag = child.bag();
  if (std::binary_search(cbag.begin(), cbag.end(), v)) {
    throw InputError("introduced vertex " + std::to_string(v) + " already in bag");
  }
  std::vector<Vertex> bag = cbag;
  const std::size_t pos = position_in(bag, v);
  bag.insert(bag.begin() + pos, v);

  const Layout CL = layout_of(child);
  const Layout PL{bag.size(), CL.T, CL.c, CL.collapse};
  const bool canonical = child.options().canonicalize;
  StateTable out(CL.c, CL.T, std::move(bag), child.order(), child.options(), CL.T);

  const int T = CL.T;
  std::vector<std::uint8_t> labels(T, 0);
  std::vector<std::uint32_t> key;
  for (std::size_t i = 0; i < child.size(); ++i) {
    auto ck = child.key(i);
    // In canonical mode only labels already in use plus fresh labels taken in
    // order are distinct up to relabelling.
    const std::uint32_t base_used = canonical ? used_labels(ck, CL) : static_cast<std::uint32_t>(CL.c);
    auto emit = [&]() {
      introduce_key(ck, CL, pos, labels, key);
      finish_key(key, PL, canonical);
      out.offer(key, child.payload(i), {static_cast<std::uint32_t>(i), UINT32_MAX}, labels);
    };
    auto visit = [&](auto&& self, int t, std::uint32_t used) -> void {
      if (t == T) {
        emit();
        return;
      }
      const std::uint32_t limit =
          canonical ? std::min<std::uint32_t>(used + 1, CL.c) : static_cast<std::uint32_t>(CL.c);
      for (std::uint32_t p = 0; p < limit; ++p) {
        labels[t] = static_cast<std::uint8_t>(p);
        self(self, t + 1, std::max(used, p + 1));
      }
    };
    visit(visit, 0, base_used);
  }
  return out;
}

StateTable forget(const StateTable& child, Vertex v, const TemporalGraph& g) {
  const auto& cbag = child.bag();
  if (!std::binary_search(cbag.begin(), cbag.end(), v)) {
    throw InputError("forgotten vertex " + std::to_string(v) + " not in bag");
  }
  const ForgetPlan plan = plan_forget(cbag, v, g);
  std::vector<Vertex> bag = cbag;
  bag.erase(bag.begin() + plan.pos);

  const Layout CL = layout_of(child);
  const Layout PL{bag.size(), CL.T, CL.c, CL.collapse};
  const bool canonical = child.options().canonicalize;
  StateTable out(CL.c, CL.T, std::move(bag), child.order(), child.options());

  std::vector<std::uint32_t> key;
  for (std::size_t i = 0; i < child.size(); ++i) {
    LinearPayload inc = forget_key(child.key(i), CL, plan, key);
    finish_key(key, PL, canonical);
    out.offer(key, add(child.payload(i), inc), {static_cast<std::uint32_t>(i), UINT32_MAX});
  }
  return out;
}

namespace {

std::vector<std::uint32_t> sorted_by_assignment(const StateTable& t) {
  std::vector<std::uint32_t> idx(t.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
    auto ka = t.assignment(a), kb = t.assignment(b);
    return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end());
  });
  return idx;
}

int compare_assignment(const StateTable& a, std::size_t i, const StateTable& b, std::size_t j) {
  auto ka = a.assignment(i), kb = b.assignment(j);
  for (std::size_t x = 0; x < ka.size(); ++x) {
    if (ka[x] != kb[x]) return ka[x] < kb[x] ? -1 : 1;
  }
  return 0;
}

}  // namespace

StateTable join(const StateTable& left, const StateTable& right) {
  if (left.bag() != right.bag() || left.parts() != right.parts() || left.lifetime() != right.lifetime()) {
    throw InputError("join children disagree on bag or dimensions");
  }
  const Layout L = layout_of(left);
  const bool canonical = left.options().canonicalize;
  StateTable out(L.c, L.T, left.bag(), left.order(), left.options(), canonical ? L.c : 0);
  // Distinct assignment groups never share a key, so each group is merged in
  // a small table and then appended.
  StateTable group(L.c, L.T, left.bag(), left.order(), left.options(), canonical ? L.c : 0);

  const auto li = sorted_by_assignment(left);
  const auto ri = sorted_by_assignment(right);
  std::vector<std::uint32_t> key;
  std::vector<std::uint8_t> map(L.c);

  auto combine = [&](std::uint32_t a, std::uint32_t b) {
    auto ka = left.key(a), kb = right.key(b);
    const LinearPayload payload = add(left.payload(a), right.payload(b));
    const BackPointer bp{a, b};
    if (!canonical) {
      join_key(ka, kb, L, {}, key);
      group.offer(key, payload, bp);
      return;
    }
    // Both keys share the same assignment labels 0..k-1. Labels k.. that hold
    // forgotten mass are private to each side; enumerate every way of
    // identifying right's private labels with left's or with fresh labels.
    std::uint32_t k = 0;
    for (std::size_t x = 0; x < L.assign_width(); ++x) k = std::max(k, ka[x] + 1);
    const std::uint32_t left_used = used_labels(ka, L);
    const std::uint32_t right_used = used_labels(kb, L);
    for (std::uint32_t p = 0; p < k; ++p) map[p] = static_cast<std::uint8_t>(p);

    auto assign = [&](auto&& self, std::uint32_t r, std::uint32_t next_fresh) -> void {
      if (r == right_used) {
        // Remaining (empty) labels of right go to the untaken targets in order.
        std::vector<bool> target_used(L.c, false);
        for (std::uint32_t p = 0; p < right_used; ++p) target_used[map[p]] = true;
        std::uint32_t free_target = 0;
        for (std::uint32_t p = right_used; p < static_cast<std::uint32_t>(L.c); ++p) {
          while (target_used[free_target]) ++free_target;
          map[p] = static_cast<std::uint8_t>(free_target);
          target_used[free_target] = true;
        }
        join_key(ka, kb, L, map, key);
        finish_key(key, L, true);
        group.offer(key, payload, bp, map);
        return;
      }
      for (std::uint32_t target = k; target < left_used; ++target) {
        bool already = false;
        for (std::uint32_t q = k; q < r; ++q) already = already || map[q] == target;
        if (already) continue;
        map[r] = static_cast<std::uint8_t>(target);
        self(self, r + 1, next_fresh);
      }
      if (next_fresh < static_cast<std::uint32_t>(L.c)) {
        map[r] = static_cast<std::uint8_t>(next_fresh);
        self(self, r + 1, next_fresh + 1);
      }
    };
    assign(assign, k, left_used);
  };

  std::size_t x = 0, y = 0;
  while (x < li.size() && y < ri.size()) {
    int cmp = compare_assignment(left, li[x], right, ri[y]);
    if (cmp < 0) {
      ++x;
    } else if (cmp > 0) {
      ++y;
    } else {
      std::size_t x_end = x, y_end = y;
      while (x_end < li.size() && compare_assignment(left, li[x_end], left, li[x]) == 0) ++x_end;
      while (y_end < ri.size() && compare_assignment(right, ri[y_end], right, ri[y]) == 0) ++y_end;
      group.clear();
      for (std::size_t a = x; a < x_end; ++a) {
        for (std::size_t b = y; b < y_end; ++b) combine(li[a], ri[b]);
      }
      out.append_disjoint(group);
      x = x_end;
      y = y_end;
    }
  }
  return out;
}

RootScore root_score(const StateTable& table, const TemporalGraph& g, const Omega& omega) {
  if (!table.bag().empty()) throw InputError("root score requires an empty bag");
  if (table.empty()) throw InputError("root table has no states");
  const int T = table.lifetime();
  const int c = table.parts();
  if (T != g.lifetime()) throw InputError("table lifetime does not match graph");

  // Fast path: compare scaled integers, scale = lcm(2 m_t) * den(omega).
  i128 scale = 1;
  bool fast = omega.value().get_num().fits_slong_p() && omega.value().get_den().fits_slong_p() &&
              omega.value().get_den() < (1L << 30);
  for (Time t = 1; t <= T && fast; ++t) {
    if (g.edge_count(t) == 0) continue;
    scale = std::lcm(static_cast<long>(scale), static_cast<long>(g.volume(t)));
    if (scale > (i128(1) << 50)) fast = false;
  }

  RootScore best;
  if (fast) {
    const long omega_num = omega.value().get_num().get_si();
    const long omega_den = omega.value().get_den().get_si();
    std::vector<i128> weight(T, 0);
    for (Time t = 1; t <= T; ++t) {
      if (g.edge_count(t) > 0) weight[t - 1] = scale / g.volume(t);
    }
    i128 best_value = 0;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto& pay = table.payload(i);
      auto beta = table.beta(i);
      i128 snap = static_cast<i128>(2 * pay.total_alpha) * scale;
      for (int p = 0; p < c; ++p) {
        for (int t = 0; t < T; ++t) {
          const i128 b = beta[static_cast<std::size_t>(p) * T + t];
          snap -= b * b * weight[t];
        }
      }
      const i128 value = snap * omega_den + static_cast<i128>(omega_num) * pay.gamma * scale;
      if (i == 0 || value > best_value) {
        best_value = value;
        best.entry = i;
      }
    }
  } else {
    Score best_value;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto& pay = table.payload(i);
      auto beta = table.beta(i);
      Score value = 2 * pay.total_alpha;
      for (int p = 0; p < c; ++p) {
        for (int t = 0; t < T; ++t) {
          if (g.edge_count(t + 1) == 0) continue;
          const long b = beta[static_cast<std::size_t>(p) * T + t];
          value -= make_score(b * b, g.volume(t + 1));
        }
      }
      value += omega.value() * pay.gamma;
      if (i == 0 || value > best_value) {
        best_value = value;
        best.entry = i;
      }
    }
  }

  // Exact value of the winning entry.
  const auto& pay = table.payload(best.entry);
  auto beta = table.beta(best.entry);
  Score value = 2 * pay.total_alpha;
  for (int p = 0; p < c; ++p) {
    for (int t = 0; t < T; ++t) {
      if (g.edge_count(t + 1) == 0) continue;
      const long b = beta[static_cast<std::size_t>(p) * T + t];
      value -= make_score(b * b, g.volume(t + 1));
    }
  }
  value += omega.value() * pay.gamma;
  value.canonicalize();
  best.value = value;
  return best;
}

namespace {

// Walks back-pointers from the root, composing the relabellings applied along
// the way so every (v, t) gets a globally consistent label.
TemporalPartition reconstruct(const NiceTreeDecomposition& ntd, const std::vector<std::optional<StateTable>>& tables,
                              const TemporalGraph& g, std::size_t root_entry, int parts) {
  const int n = g.vertex_count();
  const int T = g.lifetime();
  std::vector<int> labels(static_cast<std::size_t>(n) * T, -1);

  struct Frame {
    int node;
    std::size_t entry;
    std::vector<std::uint32_t> sigma;
  };
  const int c = tables[ntd.root()]->parts();
  std::vector<std::uint32_t> identity(c);
  std::iota(identity.begin(), identity.end(), 0);
  std::vector<Frame> stack{{ntd.root(), root_entry, identity}};
  std::vector<std::uint32_t> key;

  auto compose = [](const std::vector<std::uint32_t>& sigma, std::span<const std::uint32_t> rho) {
    std::vector<std::uint32_t> out(rho.size());
    for (std::size_t l = 0; l < rho.size(); ++l) out[l] = sigma[rho[l]];
    return out;
  };

  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    const NiceNode& node = ntd.nodes[f.node];
    const StateTable& table = *tables[f.node];
    const BackPointer bp = table.back_pointer(f.entry);
    const bool canonical = table.options().canonicalize;

    auto rho_of = [&](const Layout& L) {
      if (!canonical) return identity;
      return canonical_perm(key, L);
    };

    switch (node.kind) {
      case NiceKind::Leaf:
        break;
      case NiceKind::Introduce: {
        const StateTable& child = *tables[node.children[0]];
        const Layout CL = layout_of(child);
        auto aux = table.aux(f.entry);
        introduce_key(child.key(bp.first), CL, position_in(table.bag(), node.vertex), aux, key);
        auto rho = rho_of(layout_of(table));
        for (int t = 0; t < T; ++t) {
          labels[static_cast<std::size_t>(node.vertex) * T + t] = static_cast<int>(f.sigma[rho[aux[t]]]);
        }
        stack.push_back({node.children[0], bp.first, compose(f.sigma, rho)});
        break;
      }
      case NiceKind::Forget: {
        const StateTable& child = *tables[node.children[0]];
        const ForgetPlan plan = plan_forget(child.bag(), node.vertex, g);
        forget_key(child.key(bp.first), layout_of(child), plan, key);
        auto rho = rho_of(layout_of(table));
        stack.push_back({node.children[0], bp.first, compose(f.sigma, rho)});
        break;
      }
      case NiceKind::Join: {
        const StateTable& left = *tables[node.children[0]];
        const StateTable& right = *tables[node.children[1]];
        auto aux = table.aux(f.entry);
        const Layout L = layout_of(table);
        join_key(left.key(bp.first), right.key(bp.second), L, aux, key);
        auto rho = rho_of(L);
        auto sigma_left = compose(f.sigma, rho);
        std::vector<std::uint32_t> sigma_right(c);
        for (int l = 0; l < c; ++l) sigma_right[l] = sigma_left[aux.empty() ? l : aux[l]];
        stack.push_back({node.children[0], bp.first, std::move(sigma_left)});
        stack.push_back({node.children[1], bp.second, std::move(sigma_right)});
        break;
      }
    }
  }
  for (int& l : labels) {
    if (l < 0) throw std::logic_error("witness reconstruction left a pair unlabelled");
    ++l;
  }
  return TemporalPartition(n, T, parts, std::move(labels));
}

}  // namespace

ExactResult exact_c_modularity(const TemporalGraph& g, const Omega& omega, int parts, const NiceTreeDecomposition& ntd,
                               const DpOptions& options) {
  if (parts < 1) throw InputError("number of parts must be at least 1");
  if (auto report = validate_nice(ntd, g.underlying()); !report) {
    throw InputError("invalid nice tree decomposition: " + report.message);
  }
  // More labels than (vertex, time) pairs can never be used.
  const int effective = std::min(parts, std::max(1, g.vertex_count() * g.lifetime()));

  std::vector<std::optional<StateTable>> tables(ntd.nodes.size());
  ExactResult result;
  for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
    const NiceNode& node = ntd.nodes[i];
    switch (node.kind) {
      case NiceKind::Leaf:
        tables[i] = leaf_table(effective, g.lifetime(), omega, options);
        break;
      case NiceKind::Introduce:
        tables[i] = introduce(*tables[node.children[0]], node.vertex);
        break;
      case NiceKind::Forget:
        tables[i] = forget(*tables[node.children[0]], node.vertex, g);
        break;
      case NiceKind::Join:
        tables[i] = join(*tables[node.children[0]], *tables[node.children[1]]);
        break;
    }
    result.stats.max_table_size = std::max(result.stats.max_table_size, tables[i]->size());
    result.stats.total_states += tables[i]->size();
    if (!options.emit_witness) {
      for (int child : node.children) tables[child].reset();
    }
  }
  result.stats.nodes = ntd.nodes.size();

  RootScore best = root_score(*tables[ntd.root()], g, omega);
  result.raw = best.value;
  if (options.emit_witness) result.witness = reconstruct(ntd, tables, g, best.entry, parts);
  return result;
}

}  // namespace tmod
