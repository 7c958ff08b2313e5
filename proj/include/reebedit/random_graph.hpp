#pragma once
// Deterministic random instances: start from the canonical chain of the
// requested genus with ascending random labels, insert `leaf_pairs` random
// leaf pairs via birth ops, then take a short label walk (nudges and an
// occasional order swap).  The result is always valid, has the requested
// genus, and has p + q = 2 + leaf_pairs degree-1 vertices.

#include <set>
#include <string>

#include "reebedit/graph.hpp"
#include "reebedit/ops.hpp"
#include "reebedit/rng.hpp"

namespace reebedit {

namespace detail {

// Random grid rational strictly inside ]a, b[; exact thirds as fallback.
inline Rational grid_point_between(Rng& rng, const Rational& a, const Rational& b) {
  static const long N = 1000000;
  long k = rng.range(1, N - 1);
  Rational t = a + (b - a) * Rational(k, N);
  if (a < t && t < b) return t;
  return a + (b - a) / 3;
}

}  // namespace detail

inline Graph random_graph(int genus_target, int leaf_pairs, const Rational& lo,
                          const Rational& hi, std::uint64_t seed) {
  if (genus_target < 0 || leaf_pairs < 0 || !(lo < hi))
    throw std::invalid_argument("random_graph: need genus >= 0, leaf_pairs >= 0, lo < hi");
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);

  // ascending distinct grid labels for the chain
  const int n0 = 2 * genus_target + 2;
  static const long N = 1000000;
  std::set<long> ks;
  while (static_cast<int>(ks.size()) < n0) ks.insert(rng.range(0, N));
  std::vector<Rational> labels;
  for (long k : ks) labels.push_back(lo + (hi - lo) * Rational(k, N));

  // chain: min - s1 = j1 - s2 = j2 - ... - max, with doubled rungs
  Graph g;
  std::vector<VertexId> chain;
  for (int i = 0; i < n0; ++i) {
    VertexId id = "c" + std::to_string(i);
    g.add_vertex(id, labels[static_cast<std::size_t>(i)]);
    chain.push_back(id);
  }
  for (int i = 0; i + 1 < n0; ++i) {
    g.add_edge(chain[static_cast<std::size_t>(i)], chain[static_cast<std::size_t>(i) + 1]);
    bool is_rung = i % 2 == 1;  // s_t = j_t segments carry the parallel copy
    if (is_rung) g.add_edge(chain[static_cast<std::size_t>(i)], chain[static_cast<std::size_t>(i) + 1]);
  }

  // random leaf pairs
  for (int b = 0; b < leaf_pairs; ++b) {
    bool placed = false;
    for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
      const Graph::Edge& e = g.edges()[rng.below(g.edge_count())];
      Rational elo = std::min(g.label(e.first), g.label(e.second));
      Rational ehi = std::max(g.label(e.first), g.label(e.second));
      // free sub-intervals of ]elo, ehi[ between existing labels
      std::vector<Rational> cuts{elo};
      for (const auto& [v, l] : g.labels())
        if (elo < l && l < ehi) cuts.push_back(l);
      cuts.push_back(ehi);
      std::sort(cuts.begin(), cuts.end());
      std::size_t piece = rng.below(cuts.size() - 1);
      const Rational &a = cuts[piece], &bnd = cuts[piece + 1];
      Rational t1 = detail::grid_point_between(rng, a, bnd);
      Rational t2 = detail::grid_point_between(rng, a, bnd);
      if (t1 == t2) {
        t1 = a + (bnd - a) / 3;
        t2 = a + (bnd - a) * Rational(2, 3);
      }
      if (t2 < t1) std::swap(t1, t2);
      auto [id1, id2] = fresh_id_pair(g);
      bool leaf_above = rng.coin();
      BirthOp op{e.first, e.second, id1, id2, leaf_above ? t1 : t2, leaf_above ? t2 : t1, id2};
      try {
        g = apply(g, op);
        placed = true;
      } catch (const std::exception&) {
      }
    }
    if (!placed) throw internal_error("random_graph: could not place a leaf pair");
  }

  // label walk
  const int steps = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(
                            2 * genus_target + 2 * leaf_pairs + 4)));
  for (int s = 0; s < steps; ++s) {
    std::vector<VertexId> order = g.vertices_by_label();
    std::size_t i = rng.below(order.size());
    const VertexId& v = order[i];
    if (rng.coin() && i + 1 < order.size() && !g.adjacent(v, order[i + 1])) {
      const VertexId& w = order[i + 1];
      RelabelOp swap{{{v, g.label(w)}, {w, g.label(v)}}};
      try {
        g = apply(g, swap);
      } catch (const std::exception&) {
      }
      continue;
    }
    Rational a = i > 0 ? g.label(order[i - 1]) : g.label(v) - (hi - lo) / 8;
    Rational b = i + 1 < order.size() ? g.label(order[i + 1]) : g.label(v) + (hi - lo) / 8;
    Rational t = detail::grid_point_between(rng, a, b);
    if (t == g.label(v)) continue;
    try {
      g = apply(g, RelabelOp{{{v, t}}});
    } catch (const std::exception&) {
    }
  }

  ValidationReport rep = validate(g);
  if (!rep.ok) throw internal_error("random_graph: generated an invalid graph");
  return g;
}

}  // namespace reebedit
