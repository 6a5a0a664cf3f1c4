#include "tmod/window_approx.hpp"

#include "tmod/partition_score.hpp"

#include <optional>

namespace tmod {

Score guarantee_factor(int parts, int window) {
  Score f = Score(1) - (make_score(1, parts) + make_score(2, window));
  f.canonicalize();
  return f;
}

ApproxResult windowed_optimum(const TemporalGraph& g, const Omega& omega, int parts, int window,
                              const NiceTreeDecomposition& ntd, const DpOptions& options) {
  if (parts < 1) throw InputError("number of parts must be at least 1");
  if (window < 1) throw InputError("window length must be at least 1");
  if (auto report = validate_nice(ntd, g.underlying()); !report) {
    throw InputError("invalid nice tree decomposition: " + report.message);
  }
  DpOptions window_options = options;
  window_options.emit_witness = false;

  const int T = g.lifetime();
  // base[s][len - 1]: exact c-modularity of [s, s + len - 1].
  std::vector<std::vector<Score>> base(T + 1);
  for (Time s = 1; s <= T; ++s) {
    for (int len = 1; len <= window && s + len - 1 <= T; ++len) {
      TemporalGraph piece = g.restrict(s, s + len - 1);
      base[s].push_back(exact_c_modularity(piece, omega, parts, ntd, window_options).raw);
    }
  }

  // best[s]: optimum over [s, T]; choice[s]: length of the first window.
  std::vector<Score> best(T + 2, 0);
  std::vector<int> choice(T + 2, 0);
  for (Time s = T; s >= 1; --s) {
    bool have = false;
    for (int len = 1; len <= window && s + len - 1 <= T; ++len) {
      Score candidate = base[s][len - 1] + best[s + len];
      if (!have || candidate > best[s]) {
        best[s] = candidate;
        choice[s] = len;
        have = true;
      }
    }
  }

  ApproxResult r;
  r.raw = best[1];
  r.raw.canonicalize();
  r.plan.breakpoints.push_back(0);
  r.plan.total = 0;
  for (Time s = 1; s <= T; s += choice[s]) {
    r.plan.breakpoints.push_back(s + choice[s] - 1);
    r.plan.window_scores.push_back(base[s][choice[s] - 1]);
    r.plan.total += base[s][choice[s] - 1];
  }
  r.plan.total.canonicalize();
  Score mu = normalizer(g, omega);
  r.normalized = sgn(mu) == 0 ? Score(0) : Score(r.raw / (2 * mu));
  r.normalized.canonicalize();
  r.guarantee_factor = guarantee_factor(parts, window);
  return r;
}

ApproxResult approx_temporal_modularity(const TemporalGraph& g, const Omega& omega, int parts, int window,
                                        const DpOptions& options) {
  const StaticGraph underlying = g.underlying();
  const TreeDecomposition td = heuristic_tree_decomposition(underlying);
  NiceTreeDecomposition ntd = make_nice(td, underlying, balanced_root(td));
  return windowed_optimum(g, omega, parts, window, ntd, options);
}

}  // namespace tmod
