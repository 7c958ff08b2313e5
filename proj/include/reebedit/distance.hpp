#pragma once
// Certified bounds on the deformation distance between two labeled graphs.
//
// Upper bounds come from explicit witness sequences: the canonical pipeline
// (reduce both graphs, bridge the canonical chains, play the second reduction
// backwards), optionally improved by rewriting runs of deletions into the
// cheap contracted form, by a direct label-bijection relabel when the graphs
// already share their shape, and by a bounded beam search over enumerated
// ops.  The lower bound is the bottleneck distance between the extended
// persistence diagrams, which never exceeds the true distance.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reebedit/bottleneck.hpp"
#include "reebedit/canonical.hpp"
#include "reebedit/graph.hpp"
#include "reebedit/ops.hpp"
#include "reebedit/persistence.hpp"

namespace reebedit {

struct SearchParams {
  int beam_width = 32;
  int max_depth = 12;
  // grid step for enumerated labels; defaults to 1/1000 of the smallest
  // label gap found in either input
  std::optional<Rational> eps_grid;
  std::uint64_t seed = 0;  // recorded in reports; the search itself is deterministic
};

struct UpperBoundResult {
  Rational cost;
  DeformationSequence witness;
  std::string provenance;
};

struct DistanceReport {
  bool lower_infinite = false;
  Rational lower{0};
  std::string lower_provenance;
  std::optional<Rational> upper;
  DeformationSequence witness;
  std::string upper_provenance;
  SearchParams params;
  int genus1 = 0;
  int genus2 = 0;
};

// Replace an all-deletion sequence by a relabel followed by the same
// deletions: every deletion interval is contracted affinely into the band
// [mid - eps, mid + eps] of its outermost enclosing interval.  The relabel
// touches only vertices that die, so the final graph is unchanged, and the
// total cost lands within eps-terms of the single most expensive deletion:
//   max_k c(D_k) - eps  <=  total  <=  max_k c(D_k) + (n-1) * eps.
inline DeformationSequence rewrite_deletions(const Graph& start, const DeformationSequence& deaths,
                                             const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("rewrite_deletions: eps must be positive");
  struct Interval {
    Rational a, b;
    const DeathOp* op;
  };
  std::vector<Interval> iv;
  for (const EditOp& op : deaths) {
    const DeathOp* d = std::get_if<DeathOp>(&op);
    if (!d) throw std::invalid_argument("rewrite_deletions: sequence must contain only death ops");
    Rational la = start.label(d->u1), lb = start.label(d->u2);
    iv.push_back({std::min(la, lb), std::max(la, lb), d});
  }
  replay(start, deaths);  // full precondition check of the input sequence
  if (iv.empty()) return {};

  // the intervals nest or are disjoint; find each one's outermost container
  const std::size_t n = iv.size();
  std::vector<std::size_t> root(n);
  for (std::size_t k = 0; k < n; ++k) {
    root[k] = k;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      bool contains = iv[j].a < iv[k].a && iv[k].b < iv[j].b;
      bool disjoint = iv[j].b < iv[k].a || iv[k].b < iv[j].a;
      bool contained = iv[k].a < iv[j].a && iv[j].b < iv[k].b;
      if (!contains && !disjoint && !contained)
        throw internal_error("rewrite_deletions: deletion intervals are not laminar");
      if (contains && (root[k] == k || iv[j].b - iv[j].a > iv[root[k]].b - iv[root[k]].a))
        root[k] = j;
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    if (root[k] == k && !(eps < (iv[k].b - iv[k].a) / 2))
      throw std::invalid_argument(
          "rewrite_deletions: eps must stay below every maximal interval's half-width");

  RelabelOp contract;
  for (std::size_t k = 0; k < n; ++k) {
    const Interval& r = iv[root[k]];
    Rational mid = (r.a + r.b) / 2, half = (r.b - r.a) / 2;
    auto squeeze = [&](const Rational& x) { return mid + (x - mid) * eps / half; };
    contract.new_labels.emplace(iv[k].op->u1, squeeze(start.label(iv[k].op->u1)));
    contract.new_labels.emplace(iv[k].op->u2, squeeze(start.label(iv[k].op->u2)));
  }

  DeformationSequence out;
  out.push_back(contract);
  out.insert(out.end(), deaths.begin(), deaths.end());
  try {
    replay(start, out);
  } catch (const std::exception& e) {
    throw internal_error(std::string("rewrite_deletions: rewritten sequence failed: ") + e.what());
  }
  return out;
}

namespace detail {

// eps for one deletion run, kept strictly below every interval's half-width
inline Rational run_eps(const Graph& at, const DeformationSequence& run, const Rational& eps_grid) {
  std::optional<Rational> hmin;
  for (const EditOp& op : run) {
    const DeathOp& d = std::get<DeathOp>(op);
    Rational h = abs_diff(at.label(d.u1), at.label(d.u2)) / 2;
    if (!hmin || h < *hmin) hmin = h;
  }
  if (!hmin) throw internal_error("run_eps: empty run");
  Rational half = *hmin / 2;
  return std::min(eps_grid, half);
}

}  // namespace detail

// Witness from the canonical pipeline with both deletion runs and insertion
// runs rewritten into contracted form.  An insertion run is handled through
// its inverse: invert it into deletions, rewrite those, and invert back.
// Rewriting both directions the same way keeps the total cost of the witness
// for (g1, g2) exactly equal to the one for (g2, g1).
inline UpperBoundResult upper_bound_canonical(const Graph& g1, const Graph& g2,
                                              const Rational& eps_grid) {
  DeformationSequence full = connect(g1, g2);
  auto is_death = [](const EditOp& op) { return std::holds_alternative<DeathOp>(op); };
  auto is_birth = [](const EditOp& op) { return std::holds_alternative<BirthOp>(op); };

  DeformationSequence out;
  Graph state = g1;
  std::size_t i = 0;
  while (i < full.size()) {
    if (is_death(full[i])) {
      DeformationSequence run;
      while (i < full.size() && is_death(full[i])) run.push_back(full[i++]);
      DeformationSequence rw = rewrite_deletions(state, run, detail::run_eps(state, run, eps_grid));
      out.insert(out.end(), rw.begin(), rw.end());
      state = replay(state, run);
    } else if (is_birth(full[i])) {
      DeformationSequence run;
      while (i < full.size() && is_birth(full[i])) run.push_back(full[i++]);
      Graph after = replay(state, run);
      DeformationSequence back = invert_sequence(state, run);
      DeformationSequence rw = rewrite_deletions(after, back, detail::run_eps(after, back, eps_grid));
      DeformationSequence fwd = invert_sequence(after, rw);
      out.insert(out.end(), fwd.begin(), fwd.end());
      state = after;
    } else {
      out.push_back(full[i]);
      state = reebedit::apply(state, full[i]);
      ++i;
    }
  }
  if (!are_isomorphic(replay(g1, out), g2))
    throw internal_error("upper_bound_canonical: witness does not reach the target");
  return {total_cost(g1, out), out, "canonical-pipeline"};
}

// When the sorted-by-label bijection is a graph isomorphism, one relabel
// moving the i-th vertex of g1 onto the i-th label of g2 is a full witness.
inline std::optional<UpperBoundResult> probe_bijection(const Graph& g1, const Graph& g2) {
  std::optional<std::map<VertexId, VertexId>> iso = order_preserving_iso(g1, g2);
  if (!iso) return std::nullopt;
  RelabelOp op;
  for (const auto& [v, w] : *iso) op.new_labels.emplace(v, g2.label(w));
  Rational c = cost(g1, op);
  return UpperBoundResult{c, {EditOp(op)}, "label-bijection"};
}

namespace detail {

// Labels in sorted order plus the edge multiset over order positions: equal
// keys mean equal labeled graphs up to vertex renaming.
inline std::string graph_key(const Graph& g) {
  std::vector<VertexId> order = g.vertices_by_label();
  std::map<VertexId, std::size_t> pos;
  std::string key;
  for (std::size_t i = 0; i < order.size(); ++i) {
    pos[order[i]] = i;
    key += render_rational(g.label(order[i]));
    key += ',';
  }
  key += '|';
  std::vector<std::pair<std::size_t, std::size_t>> es;
  for (const Graph::Edge& e : g.edges())
    es.push_back(std::minmax(pos.at(e.first), pos.at(e.second)));
  std::sort(es.begin(), es.end());
  for (const auto& [a, b] : es) key += std::to_string(a) + "-" + std::to_string(b) + ";";
  return key;
}

inline UpperBoundResult beam_improve(const Graph& g1, const Graph& g2, const SearchParams& params,
                                     const Rational& eps, UpperBoundResult best) {
  const Diagram target = extended_diagram(g2);
  std::map<std::string, Rational> h_cache;
  auto h_of = [&](const Graph& g, const std::string& key) -> Rational {
    auto it = h_cache.find(key);
    if (it != h_cache.end()) return it->second;
    BottleneckValue bv = bottleneck(extended_diagram(g), target);
    if (bv.infinite) throw internal_error("beam_improve: genus changed during the search");
    return h_cache.emplace(key, bv.value).first->second;
  };

  if (std::optional<UpperBoundResult> direct = probe_bijection(g1, g2))
    if (direct->cost < best.cost) best = *direct;

  struct Node {
    Rational cost;
    Graph graph;
    DeformationSequence seq;
    std::string key;
  };
  std::vector<Node> frontier;
  frontier.push_back({Rational(0), g1, {}, graph_key(g1)});
  std::map<std::string, Rational> seen{{frontier.front().key, Rational(0)}};

  for (int depth = 0; depth < params.max_depth && !frontier.empty(); ++depth) {
    std::vector<Node> children;
    for (const Node& nd : frontier) {
      if (!(nd.cost + h_of(nd.graph, nd.key) < best.cost)) continue;
      for (const EditOp& op : enumerate_applicable(nd.graph, OpKinds::all(), eps)) {
        Rational c = nd.cost + cost(nd.graph, op);
        if (!(c < best.cost)) continue;
        Graph g = reebedit::apply(nd.graph, op);
        std::string key = graph_key(g);
        auto it = seen.find(key);
        if (it != seen.end() && !(c < it->second)) continue;
        seen[key] = c;
        DeformationSequence s = nd.seq;
        s.push_back(op);
        if (std::optional<std::map<VertexId, VertexId>> iso = order_preserving_iso(g, g2)) {
          RelabelOp fix;
          for (const auto& [v, w] : *iso) fix.new_labels.emplace(v, g2.label(w));
          Rational candidate = c + cost(g, fix);
          if (candidate < best.cost) {
            DeformationSequence w2 = s;
            w2.push_back(fix);
            best = {candidate, std::move(w2), "beam-search"};
          }
        }
        children.push_back({std::move(c), std::move(g), std::move(s), std::move(key)});
      }
    }
    // cheap pre-cut by accumulated cost, then rank by cost + lower bound
    std::sort(children.begin(), children.end(),
              [](const Node& x, const Node& y) { return std::tie(x.cost, x.key) < std::tie(y.cost, y.key); });
    if (children.size() > static_cast<std::size_t>(4 * params.beam_width))
      children.resize(static_cast<std::size_t>(4 * params.beam_width));
    std::stable_sort(children.begin(), children.end(), [&](const Node& x, const Node& y) {
      Rational bx = x.cost + h_of(x.graph, x.key), by = y.cost + h_of(y.graph, y.key);
      return std::tie(bx, x.key) < std::tie(by, y.key);
    });
    while (!children.empty() &&
           !(children.back().cost + h_of(children.back().graph, children.back().key) < best.cost))
      children.pop_back();
    if (children.size() > static_cast<std::size_t>(params.beam_width))
      children.resize(static_cast<std::size_t>(params.beam_width));
    frontier = std::move(children);
  }
  return best;
}

inline void check_params(const SearchParams& p) {
  if (p.beam_width < 1 || p.max_depth < 1)
    throw std::invalid_argument("search parameters must be positive");
  if (p.eps_grid && !(*p.eps_grid > 0))
    throw std::invalid_argument("eps_grid must be positive");
}

inline Rational resolve_eps(const Graph& g1, const Graph& g2, const SearchParams& p) {
  if (p.eps_grid) return *p.eps_grid;
  return std::min(min_label_gap(g1), min_label_gap(g2)) / 1000;
}

}  // namespace detail

// Beam search seeded with the canonical-pipeline witness; never worse than it.
inline UpperBoundResult beam_search_upper(const Graph& g1, const Graph& g2,
                                          const SearchParams& params) {
  detail::check_params(params);
  require_valid(g1, "beam_search_upper");
  require_valid(g2, "beam_search_upper");
  Rational eps = detail::resolve_eps(g1, g2, params);
  UpperBoundResult best = upper_bound_canonical(g1, g2, eps);
  return detail::beam_improve(g1, g2, params, eps, std::move(best));
}

inline DistanceReport distance_report(const Graph& g1, const Graph& g2,
                                      SearchParams params = SearchParams{}) {
  detail::check_params(params);
  require_valid(g1, "distance_report");
  require_valid(g2, "distance_report");
  DistanceReport rep;
  rep.genus1 = genus(g1);
  rep.genus2 = genus(g2);
  BottleneckValue bv = bottleneck(extended_diagram(g1), extended_diagram(g2));
  rep.lower_infinite = bv.infinite;
  rep.lower = bv.value;
  rep.lower_provenance = "bottleneck";

  if (rep.genus1 != rep.genus2) {
    rep.upper_provenance = "unavailable (genus mismatch)";
    rep.params = params;
    return rep;
  }

  Rational eps = detail::resolve_eps(g1, g2, params);
  params.eps_grid = eps;
  rep.params = params;

  UpperBoundResult best = upper_bound_canonical(g1, g2, eps);
  if (std::optional<UpperBoundResult> direct = probe_bijection(g1, g2))
    if (direct->cost < best.cost) best = *direct;
  best = detail::beam_improve(g1, g2, params, eps, std::move(best));

  rep.upper = best.cost;
  rep.witness = std::move(best.witness);
  rep.upper_provenance = std::move(best.provenance);
  if (rep.lower_infinite || rep.lower > *rep.upper)
    throw internal_error("distance_report: lower bound exceeds upper bound");
  return rep;
}

}  // namespace reebedit
