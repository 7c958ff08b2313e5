#pragma once
// Perturbation experiment: jitter every label of a base graph independently
// within [-delta, +delta] (on a 1/1024 grid so values stay exact), compute a
// distance report against the original, and record both bounds.  With delta
// below half the smallest label gap the vertex order cannot change, so a
// single relabel witness always exists and the upper bound must stay <= delta.

#include <cstdint>
#include <string>
#include <vector>

#include "reebedit/distance.hpp"
#include "reebedit/graph.hpp"
#include "reebedit/rng.hpp"

namespace reebedit {

struct StabilityRow {
  Rational delta;
  int trial = 0;
  Rational upper;
  Rational lower;
};

inline std::vector<StabilityRow> stability_experiment(const Graph& base, const Rational& delta,
                                                      int trials, std::uint64_t seed,
                                                      SearchParams params = SearchParams{}) {
  require_valid(base, "stability_experiment");
  if (delta < 0) throw std::invalid_argument("stability_experiment: delta must be nonnegative");
  if (trials < 1) throw std::invalid_argument("stability_experiment: need at least one trial");
  if (!(delta < min_label_gap(base) / 2))
    throw std::invalid_argument(
        "stability_experiment: delta must stay below half the smallest label gap");

  std::vector<StabilityRow> rows;
  rows.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng(seed).fork(static_cast<std::uint64_t>(t));
    Graph perturbed = base;
    for (const auto& [v, l] : base.labels()) {
      long k = static_cast<long>(rng.below(2049)) - 1024;  // uniform on [-1024, 1024]
      perturbed.set_label(v, l + delta * Rational(k, 1024));
    }
    DistanceReport rep = distance_report(base, perturbed, params);
    if (!rep.upper) throw internal_error("stability_experiment: report lost its upper bound");
    if (*rep.upper > delta)
      throw internal_error("stability_experiment: upper bound exceeded delta on trial " +
                           std::to_string(t));
    rows.push_back({delta, t, *rep.upper, rep.lower});
  }
  return rows;
}

inline std::string stability_csv(const std::vector<StabilityRow>& rows) {
  std::string out = "delta,trial,upper,lower\n";
  for (const StabilityRow& r : rows) {
    out += render_rational(r.delta);
    out += ',';
    out += std::to_string(r.trial);
    out += ',';
    out += render_rational(r.upper);
    out += ',';
    out += render_rational(r.lower);
    out += '\n';
  }
  return out;
}

}  // namespace reebedit
