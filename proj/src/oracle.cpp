#include "tmod/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

namespace tmod {

namespace {

using i128 = __int128;

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

long to_long(const mpz_class& z) {
  if (!z.fits_slong_p()) throw InputError("omega too large for the enumeration oracle");
  return z.get_si();
}

// Depth-first enumeration of restricted-growth strings with the objective
// maintained incrementally in integers scaled by lcm(2 m_t) * den(omega).
class Enumerator {
 public:
  Enumerator(const TemporalGraph& g, const Omega& omega, int parts)
      : g_(g), n_(g.vertex_count()), T_(g.lifetime()), parts_(parts) {
    omega_num_ = to_long(omega.value().get_num());
    omega_den_ = to_long(omega.value().get_den());

    scale_ = 1;
    for (Time t = 1; t <= T_; ++t) {
      if (g.edge_count(t) > 0) scale_ = std::lcm(scale_, static_cast<long>(g.volume(t)));
      if (scale_ > (1L << 40)) throw InputError("instance too large for the enumeration oracle");
    }
    weight_.assign(T_ + 1, 0);
    for (Time t = 1; t <= T_; ++t) {
      if (g.edge_count(t) > 0) weight_[t] = scale_ / g.volume(t);
    }

    const int items = n_ * T_;
    earlier_.assign(items, {});
    for (Vertex v = 0; v < n_; ++v) {
      for (const auto& [u, e] : g.neighbours(v)) {
        if (u >= v) continue;
        for (Time t : g.activity(e)) earlier_[position(v, t)].push_back(position(u, t));
      }
    }
    labels_.assign(items, 0);
    best_labels_.assign(items, 0);
    vol_.assign(static_cast<std::size_t>(parts_) * (T_ + 1), 0);
  }

  void run() {
    if (n_ * T_ == 0) {
      best_ = 0;
      found_ = true;
      return;
    }
    descend(0, 0, 0, 0);
  }

  // Best raw value as an exact rational.
  Score best_raw() const {
    mpz_class num = to_mpz(best_);
    Score s(num, mpz_class(scale_) * omega_den_);
    s.canonicalize();
    return s;
  }

  TemporalPartition witness() const {
    std::vector<int> labels(best_labels_.size());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = best_labels_[i] + 1;
    return TemporalPartition(n_, T_, parts_, std::move(labels));
  }

 private:
  int position(Vertex v, Time t) const { return v * T_ + (t - 1); }

  static mpz_class to_mpz(i128 x) {
    bool neg = x < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  }

  // scaled_snapshot = L * sum_t (2 e_t - sum_p vol^2 / 2m_t); loyal = gamma.
  void descend(int pos, int used, long scaled_snapshot, long loyal) {
    const int items = n_ * T_;
    if (pos == items) {
      i128 value = static_cast<i128>(scaled_snapshot) * omega_den_ + static_cast<i128>(omega_num_) * loyal * scale_;
      if (!found_ || value > best_) {
        best_ = value;
        best_labels_ = labels_;
        found_ = true;
      }
      return;
    }
    const Vertex v = pos / T_;
    const Time t = pos % T_ + 1;
    const int max_label = std::min(used, parts_ - 1);
    const long d = g_.degree(v, t);
    for (int p = 0; p <= max_label; ++p) {
      labels_[pos] = p;
      long delta = 0;
      for (int j : earlier_[pos]) {
        if (labels_[j] == p) delta += 2 * scale_;
      }
      long& vol = vol_[static_cast<std::size_t>(p) * (T_ + 1) + t];
      delta -= (2 * vol * d + d * d) * weight_[t];
      long loyal_delta = (t > 1 && labels_[pos - 1] == p) ? 1 : 0;
      vol += d;
      descend(pos + 1, std::max(used, p + 1), scaled_snapshot + delta, loyal + loyal_delta);
      vol -= d;
    }
  }

  const TemporalGraph& g_;
  int n_;
  int T_;
  int parts_;
  long omega_num_ = 0;
  long omega_den_ = 1;
  long scale_ = 1;
  std::vector<long> weight_;
  std::vector<std::vector<int>> earlier_;
  std::vector<int> labels_;
  std::vector<int> best_labels_;
  std::vector<long> vol_;
  i128 best_ = 0;
  bool found_ = false;
};

}  // namespace

std::uint64_t restricted_growth_count(int items, int parts) {
  if (items == 0) return 1;
  // Stirling numbers of the second kind, row by row, capped at `parts` blocks.
  const int cap = std::min(items, parts);
  std::vector<std::uint64_t> row(cap + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= items; ++i) {
    for (int k = std::min(i, cap); k >= 1; --k) {
      row[k] = sat_add(sat_mul(static_cast<std::uint64_t>(k), row[k]), row[k - 1]);
    }
    row[0] = 0;
  }
  std::uint64_t total = 0;
  for (int k = 1; k <= cap; ++k) total = sat_add(total, row[k]);
  return total;
}

OracleResult brute_force_c_modularity(const TemporalGraph& g, const Omega& omega, int parts, std::uint64_t budget) {
  if (parts < 1) throw InputError("number of parts must be at least 1");
  const int items = g.vertex_count() * g.lifetime();
  const std::uint64_t required = restricted_growth_count(items, parts);
  if (required > budget) throw BudgetExceeded(required, budget);

  Enumerator e(g, omega, parts);
  e.run();
  OracleResult r;
  r.best_raw = e.best_raw();
  r.witness = e.witness();
  Score mu = normalizer(g, omega);
  r.best_normalized = sgn(mu) == 0 ? Score(0) : Score(r.best_raw / (2 * mu));
  r.best_normalized.canonicalize();
  return r;
}

OracleResult brute_force_modularity(const TemporalGraph& g, const Omega& omega, std::uint64_t budget) {
  return brute_force_c_modularity(g, omega, std::max(1, g.vertex_count() * g.lifetime()), budget);
}

Score brute_force_static(const Snapshot& graph, std::uint64_t budget) {
  const int n = graph.vertex_count();
  const std::uint64_t required = restricted_growth_count(n, std::max(n, 1));
  if (required > budget) throw BudgetExceeded(required, budget);
  if (graph.edge_count == 0) return 0;

  std::vector<int> labels(n, 0);
  Score best;
  bool found = false;
  auto visit = [&](auto&& self, int pos, int used) -> void {
    if (pos == n) {
      Score q = static_modularity(graph, labels);
      if (!found || q > best) {
        best = q;
        found = true;
      }
      return;
    }
    for (int p = 0; p <= used; ++p) {
      labels[pos] = p;
      self(self, pos + 1, std::max(used, p + 1));
    }
  };
  visit(visit, 0, 0);
  return best;
}

}  // namespace tmod
