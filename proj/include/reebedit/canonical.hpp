#pragma once
// Reduction to canonical form and the two-graph connecting sequence.
//
// reduce_path brings two minima (or two maxima) to distance two by repeatedly
// acting at the extreme interior vertex of a shortest path: slide it next to
// its higher (resp. lower) path neighbor with single-position relabel hops,
// then remove that neighbor from the path with one saddle swap.  The swap
// rewires the neighbor's far path edge onto the extreme vertex, so the path
// gets strictly shorter; the far edge always points away from the extreme
// vertex, which is what makes the step well defined.  reduce_cycle runs the
// same scheme around an explicit cycle until only a doubled edge remains.
//
// minimalize removes surplus leaves: sweep the labels to find the first spot
// where two components of a sublevel (resp. superlevel) set merge, connect
// the two corresponding extrema with reduce_path, slide the one to die next
// to the shared saddle, and delete the pair with one death op.  canonicalize
// then collapses one non-trivial block of the minimal graph per round into a
// doubled edge, choosing the cycle through the block's lowest vertex.

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "reebedit/graph.hpp"
#include "reebedit/ops.hpp"

namespace reebedit {

struct ReductionOutcome {
  Graph graph;
  DeformationSequence ops;
};

struct CanonicalizationResult {
  Graph canonical_graph;
  DeformationSequence sequence;
  int cycle_rounds = 0;
};

namespace detail {

// --- single-position label hops -------------------------------------------

inline void hop_down_one(Graph& g, DeformationSequence& seq, const VertexId& v) {
  std::vector<VertexId> order = g.vertices_by_label();
  std::size_t i = label_index(order, v);
  if (i == 0) throw internal_error("hop_down_one: vertex already lowest");
  Rational target = i >= 2 ? midpoint(g.label(order[i - 2]), g.label(order[i - 1]))
                           : g.label(order[i - 1]) - 1;
  RelabelOp op{{{v, target}}};
  g = apply(g, op);  // also enforces non-adjacency of the transposed pair
  seq.push_back(op);
}

inline void hop_up_one(Graph& g, DeformationSequence& seq, const VertexId& v) {
  std::vector<VertexId> order = g.vertices_by_label();
  std::size_t i = label_index(order, v);
  if (i + 1 >= order.size()) throw internal_error("hop_up_one: vertex already highest");
  Rational target = i + 2 < order.size()
                        ? midpoint(g.label(order[i + 1]), g.label(order[i + 2]))
                        : g.label(order[i + 1]) + 1;
  RelabelOp op{{{v, target}}};
  g = apply(g, op);
  seq.push_back(op);
}

inline void lower_until_pred(Graph& g, DeformationSequence& seq, const VertexId& v,
                             const VertexId& stop) {
  for (std::size_t guard = 0; guard <= g.vertex_count(); ++guard) {
    std::vector<VertexId> order = g.vertices_by_label();
    std::size_t i = label_index(order, v);
    if (i > 0 && order[i - 1] == stop) return;
    hop_down_one(g, seq, v);
  }
  throw internal_error("lower_until_pred: did not reach \"" + stop + "\"");
}

inline void raise_until_succ(Graph& g, DeformationSequence& seq, const VertexId& v,
                             const VertexId& stop) {
  for (std::size_t guard = 0; guard <= g.vertex_count(); ++guard) {
    std::vector<VertexId> order = g.vertices_by_label();
    std::size_t i = label_index(order, v);
    if (i + 1 < order.size() && order[i + 1] == stop) return;
    hop_up_one(g, seq, v);
  }
  throw internal_error("raise_until_succ: did not reach \"" + stop + "\"");
}

inline void lower_below_label(Graph& g, DeformationSequence& seq, const VertexId& v,
                              const Rational& bound) {
  for (std::size_t guard = 0; guard <= g.vertex_count(); ++guard) {
    if (g.label(v) < bound) return;
    hop_down_one(g, seq, v);
  }
  throw internal_error("lower_below_label: bound not reached");
}

inline void raise_above_label(Graph& g, DeformationSequence& seq, const VertexId& v,
                              const Rational& bound) {
  for (std::size_t guard = 0; guard <= g.vertex_count(); ++guard) {
    if (g.label(v) > bound) return;
    hop_up_one(g, seq, v);
  }
  throw internal_error("raise_above_label: bound not reached");
}

// --- deterministic shortest paths -----------------------------------------

// Shortest path from `from` to `to`; among shortest paths, one minimizing the
// largest interior label (then fixed by sorted-order BFS).  `edge_allowed`
// restricts to a subset of edge indices, `banned` excludes interior vertices.
inline std::vector<VertexId> shortest_path_minmax(const Graph& g, const VertexId& from,
                                                  const VertexId& to,
                                                  const std::vector<char>* edge_allowed,
                                                  const std::set<VertexId>* banned) {
  std::map<VertexId, std::vector<VertexId>> adj;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (edge_allowed && !(*edge_allowed)[i]) continue;
    const Graph::Edge& e = g.edges()[i];
    if (banned && (banned->count(e.first) || banned->count(e.second))) continue;
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  for (auto& [v, nbrs] : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }

  auto bfs = [&](const Rational* cap,
                 std::map<VertexId, VertexId>* pred_out) -> std::optional<int> {
    std::map<VertexId, int> dist;
    std::map<VertexId, VertexId> pred;
    std::queue<VertexId> q;
    dist[from] = 0;
    q.push(from);
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      if (v == to) break;
      for (const VertexId& w : adj[v]) {
        if (dist.count(w)) continue;
        if (cap && w != to && w != from && g.label(w) > *cap) continue;
        dist[w] = dist[v] + 1;
        pred[w] = v;
        q.push(w);
      }
    }
    if (!dist.count(to)) return std::nullopt;
    if (pred_out) *pred_out = pred;
    return dist[to];
  };

  std::optional<int> base = bfs(nullptr, nullptr);
  if (!base) throw internal_error("shortest_path_minmax: endpoints not connected");

  std::vector<Rational> caps;
  for (const auto& [v, l] : g.labels())
    if (v != from && v != to) caps.push_back(l);
  std::sort(caps.begin(), caps.end());

  std::map<VertexId, VertexId> pred;
  bool found = false;
  for (const Rational& cap : caps) {
    std::optional<int> d = bfs(&cap, &pred);
    if (d && *d == *base) {
      found = true;
      break;
    }
  }
  if (!found) bfs(nullptr, &pred);  // distance-1 paths have no interior

  std::vector<VertexId> path{to};
  while (path.back() != from) path.push_back(pred.at(path.back()));
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

// Bring two extrema of the same kind to graph distance two.  Emits only
// relabel hops and K1/K3 swaps.
inline ReductionOutcome reduce_path(const Graph& input, const VertexId& end1,
                                    const VertexId& end2) {
  require_valid(input, "reduce_path");
  if (end1 == end2) throw std::invalid_argument("reduce_path: endpoints coincide");
  VertexClass c1 = classify(input, end1), c2 = classify(input, end2);
  if (c1 != c2 || (c1 != VertexClass::Minimum && c1 != VertexClass::Maximum))
    throw std::invalid_argument("reduce_path: endpoints must be two minima or two maxima");
  const bool minima = c1 == VertexClass::Minimum;

  Graph g = input;
  DeformationSequence seq;
  const std::size_t guard_limit = 64 + 4 * g.vertex_count() * g.vertex_count();
  for (std::size_t guard = 0;; ++guard) {
    if (guard > guard_limit) throw internal_error("reduce_path: no progress");
    std::vector<VertexId> path = detail::shortest_path_minmax(g, end1, end2, nullptr, nullptr);
    if (path.size() <= 3) break;  // at most two edges: a shared neighbor exists

    // extreme interior vertex
    std::size_t xi = 1;
    for (std::size_t i = 2; i + 1 < path.size(); ++i) {
      bool better = minima ? g.label(path[i]) > g.label(path[xi])
                           : g.label(path[i]) < g.label(path[xi]);
      if (better) xi = i;
    }
    const VertexId x = path[xi];
    VertexId left = path[xi - 1], right = path[xi + 1];
    // b: the neighbor on x's side of the swap (higher for minima, lower for maxima)
    bool right_is_b = minima ? g.label(right) > g.label(left) : g.label(right) < g.label(left);
    VertexId b = right_is_b ? right : left;
    VertexId a = right_is_b ? left : right;

    if (g.degree(b) == 1) {
      // b is one of the input extrema; tuck it past a and retry.  Copy the
      // bound: the hops reassign g, which would invalidate a label reference.
      Rational bound = g.label(a);
      if (minima) detail::lower_below_label(g, seq, b, bound);
      else detail::raise_above_label(g, seq, b, bound);
      continue;
    }

    VertexId c = right_is_b ? path[xi + 2] : path[xi - 2];
    if (minima) {
      detail::lower_until_pred(g, seq, x, b);
      if (classify(g, b) == VertexClass::JoiningSaddle) {
        K1Op op{x, b, g.label(b), g.label(x), false, c};
        g = apply(g, op);
        seq.push_back(op);
      } else {
        K3Op op{x, b, g.label(b), g.label(x)};
        g = apply(g, op);
        seq.push_back(op);
      }
    } else {
      detail::raise_until_succ(g, seq, x, b);
      if (classify(g, b) == VertexClass::JoiningSaddle) {
        K3Op op{b, x, g.label(x), g.label(b)};
        g = apply(g, op);
        seq.push_back(op);
      } else {
        K1Op op{x, b, g.label(b), g.label(x), true, c};
        g = apply(g, op);
        seq.push_back(op);
      }
    }
  }
  return {g, seq};
}

// Collapse a simple cycle (given as its vertex sequence) to a doubled edge.
// A two-vertex input stands for a pair of parallel edges and is already done.
inline ReductionOutcome reduce_cycle(const Graph& input, std::vector<VertexId> cycle) {
  require_valid(input, "reduce_cycle");
  if (cycle.size() < 2) throw std::invalid_argument("reduce_cycle: need at least two vertices");
  {
    std::set<VertexId> distinct(cycle.begin(), cycle.end());
    if (distinct.size() != cycle.size())
      throw std::invalid_argument("reduce_cycle: repeated vertex in cycle");
    if (cycle.size() == 2) {
      if (input.edge_multiplicity(cycle[0], cycle[1]) < 2)
        throw std::invalid_argument("reduce_cycle: two vertices must be joined by parallel edges");
    } else {
      for (std::size_t i = 0; i < cycle.size(); ++i)
        if (!input.adjacent(cycle[i], cycle[(i + 1) % cycle.size()]))
          throw std::invalid_argument("reduce_cycle: consecutive vertices not adjacent");
    }
  }

  Graph g = input;
  DeformationSequence seq;
  const std::size_t guard_limit = 64 + 4 * g.vertex_count() * g.vertex_count();
  for (std::size_t guard = 0; cycle.size() > 2; ++guard) {
    if (guard > guard_limit) throw internal_error("reduce_cycle: no progress");
    const std::size_t n = cycle.size();
    std::size_t xi = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (g.label(cycle[i]) > g.label(cycle[xi])) xi = i;
    const VertexId x = cycle[xi];
    const VertexId left = cycle[(xi + n - 1) % n], right = cycle[(xi + 1) % n];
    bool right_is_b = g.label(right) > g.label(left);
    const VertexId b = right_is_b ? right : left;
    const VertexId c = right_is_b ? cycle[(xi + 2) % n] : cycle[(xi + n - 2) % n];

    detail::lower_until_pred(g, seq, x, b);
    if (classify(g, b) == VertexClass::JoiningSaddle) {
      K1Op op{x, b, g.label(b), g.label(x), false, c};
      g = apply(g, op);
      seq.push_back(op);
    } else {
      K3Op op{x, b, g.label(b), g.label(x)};
      g = apply(g, op);
      seq.push_back(op);
    }
    cycle.erase(std::find(cycle.begin(), cycle.end(), b));
  }
  return {g, seq};
}

namespace detail {

// Biconnected blocks as groups of edge indices.  Parallel copies are distinct
// edges, so a doubled pair forms a two-edge block; bridges come out as
// single-edge blocks.
inline std::vector<std::vector<int>> biconnected_blocks(const Graph& g) {
  const auto& edges = g.edges();
  const int m = static_cast<int>(edges.size());
  std::map<VertexId, std::vector<std::pair<VertexId, int>>> inc;
  for (int i = 0; i < m; ++i) {
    inc[edges[i].first].push_back({edges[i].second, i});
    inc[edges[i].second].push_back({edges[i].first, i});
  }
  std::map<VertexId, int> disc, low;
  std::vector<int> stack;
  std::vector<std::vector<int>> blocks;
  int timer = 0;
  std::function<void(const VertexId&, int)> dfs = [&](const VertexId& u, int parent_edge) {
    disc[u] = low[u] = ++timer;
    for (const auto& [w, idx] : inc[u]) {
      if (idx == parent_edge) continue;
      if (!disc.count(w)) {
        stack.push_back(idx);
        dfs(w, idx);
        low[u] = std::min(low[u], low[w]);
        if (low[w] >= disc[u]) {
          std::vector<int> block;
          while (true) {
            int top = stack.back();
            stack.pop_back();
            block.push_back(top);
            if (top == idx) break;
          }
          std::sort(block.begin(), block.end());
          blocks.push_back(block);
        }
      } else if (disc[w] < disc[u]) {
        stack.push_back(idx);
        low[u] = std::min(low[u], disc[w]);
      }
    }
  };
  for (const auto& [v, l] : g.labels())
    if (!disc.count(v)) dfs(v, -1);
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

}  // namespace detail

// Delete leaves until a single minimum and a single maximum remain.  Each
// round pairs the two extrema whose sublevel (resp. superlevel) components
// are first to merge, reduces them to a shared saddle, slides the doomed leaf
// flush against it, and applies one death op.
inline ReductionOutcome minimalize(const Graph& input) {
  require_valid(input, "minimalize");
  Graph g = input;
  DeformationSequence seq;

  auto first_merge_pair = [&](bool ascending) -> std::pair<VertexId, VertexId> {
    // union-find over the sweep, tracking each component's extreme vertex
    std::map<VertexId, VertexId> parent, extreme;
    std::function<VertexId(VertexId)> find = [&](VertexId v) {
      while (parent.at(v) != v) {
        parent[v] = parent.at(parent.at(v));
        v = parent.at(v);
      }
      return v;
    };
    std::vector<VertexId> order = g.vertices_by_label();
    if (!ascending) std::reverse(order.begin(), order.end());
    for (const VertexId& v : order) {
      parent[v] = v;
      extreme[v] = v;
      std::vector<std::pair<Rational, VertexId>> seen;
      for (const VertexId& w : g.neighbors(v)) {
        bool processed = ascending ? g.label(w) < g.label(v) : g.label(w) > g.label(v);
        if (processed) seen.push_back({g.label(w), w});
      }
      std::sort(seen.begin(), seen.end());
      if (!ascending) std::reverse(seen.begin(), seen.end());
      bool attached = false;  // v already united with one earlier component
      for (const auto& [lw, w] : seen) {
        VertexId rw = find(w), rv = find(v);
        if (rw == rv) {
          attached = true;
          continue;
        }
        // two pre-existing components meeting at v: their extremes are the pair
        if (attached) return {extreme.at(rv), extreme.at(rw)};
        bool rv_older = ascending ? g.label(extreme.at(rv)) < g.label(extreme.at(rw))
                                  : g.label(extreme.at(rv)) > g.label(extreme.at(rw));
        parent[rw] = rv;
        if (!rv_older) extreme[rv] = extreme.at(rw);
        attached = true;
      }
    }
    throw internal_error("minimalize: no merge found with several extrema present");
  };

  auto run_side = [&](bool minima_side) {
    for (std::size_t guard = 0; guard <= input.vertex_count(); ++guard) {
      int extrema = count_class(g, minima_side ? VertexClass::Minimum : VertexClass::Maximum);
      if (extrema <= 1) return;
      auto [ea, eb] = first_merge_pair(minima_side);
      ReductionOutcome r = reduce_path(g, ea, eb);
      g = r.graph;
      seq.insert(seq.end(), r.ops.begin(), r.ops.end());
      VertexId w = g.neighbors(ea)[0];
      if (g.neighbors(eb)[0] != w)
        throw internal_error("minimalize: reduced extrema do not share a neighbor");
      bool kill_a = minima_side ? g.label(ea) > g.label(eb) : g.label(ea) < g.label(eb);
      const VertexId kill = kill_a ? ea : eb;
      if (minima_side) detail::raise_until_succ(g, seq, kill, w);
      else detail::lower_until_pred(g, seq, kill, w);
      DeathOp op{w, kill};
      g = apply(g, op);
      seq.push_back(op);
    }
    throw internal_error("minimalize: leaf removal did not converge");
  };
  run_side(true);
  run_side(false);
  return {g, seq};
}

// Full reduction: minimalize, then one cycle collapse per non-trivial block.
inline CanonicalizationResult canonicalize(const Graph& input) {
  ReductionOutcome base = minimalize(input);
  Graph g = base.graph;
  DeformationSequence seq = base.ops;
  int rounds = 0;
  const int guard_limit = 8 + genus(g);
  for (;; ++rounds) {
    if (rounds > guard_limit) throw internal_error("canonicalize: cycle rounds did not converge");
    std::vector<std::vector<int>> blocks = detail::biconnected_blocks(g);
    // candidate: any block that is neither a bridge nor already a doubled pair
    const std::vector<int>* chosen = nullptr;
    VertexId chosen_min;
    for (const std::vector<int>& block : blocks) {
      if (block.size() < 2) continue;
      std::set<VertexId> verts;
      for (int i : block) {
        verts.insert(g.edges()[static_cast<std::size_t>(i)].first);
        verts.insert(g.edges()[static_cast<std::size_t>(i)].second);
      }
      if (block.size() == 2 && verts.size() == 2) continue;  // doubled pair, done
      VertexId vmin = *verts.begin();
      for (const VertexId& v : verts)
        if (g.label(v) < g.label(vmin)) vmin = v;
      if (!chosen || g.label(vmin) < g.label(chosen_min)) {
        chosen = &block;
        chosen_min = vmin;
      }
    }
    if (!chosen) break;

    std::vector<char> allowed(g.edge_count(), 0);
    std::vector<VertexId> at_v;
    for (int i : *chosen) {
      allowed[static_cast<std::size_t>(i)] = 1;
      const Graph::Edge& e = g.edges()[static_cast<std::size_t>(i)];
      if (e.first == chosen_min) at_v.push_back(e.second);
      if (e.second == chosen_min) at_v.push_back(e.first);
    }
    if (at_v.size() != 2 || at_v[0] == at_v[1])
      throw internal_error("canonicalize: block base vertex is not a clean split");
    std::sort(at_v.begin(), at_v.end(), [&](const VertexId& p, const VertexId& q) {
      return g.label(p) < g.label(q);
    });
    std::set<VertexId> banned{chosen_min};
    std::vector<VertexId> path =
        detail::shortest_path_minmax(g, at_v[0], at_v[1], &allowed, &banned);
    std::vector<VertexId> cycle{chosen_min};
    cycle.insert(cycle.end(), path.begin(), path.end());
    ReductionOutcome r = reduce_cycle(g, cycle);
    g = r.graph;
    seq.insert(seq.end(), r.ops.begin(), r.ops.end());
  }
  if (!is_canonical(g)) throw internal_error("canonicalize: result is not canonical");
  return {g, seq, rounds};
}

namespace detail {

// Recast a deformation sequence into another vertex-id universe.  `phi` maps
// ids of the sequence's own start graph; ids introduced by birth ops are
// given fresh names in the target universe on the fly.
inline DeformationSequence transport_sequence(const Graph& start, const DeformationSequence& ops,
                                              std::map<VertexId, VertexId> phi,
                                              const Graph& target_start) {
  Graph src = start, tgt = target_start;
  auto m = [&phi](const VertexId& v) -> VertexId {
    auto it = phi.find(v);
    if (it == phi.end()) throw internal_error("transport_sequence: unmapped id \"" + v + "\"");
    return it->second;
  };
  DeformationSequence out;
  for (const EditOp& op : ops) {
    EditOp mapped = op;
    if (const BirthOp* b = std::get_if<BirthOp>(&op)) {
      auto [f1, f2] = fresh_id_pair(tgt);
      BirthOp nb{m(b->v1), m(b->v2), f1, f2, b->l1, b->l2, b->leaf == b->u1 ? f1 : f2};
      phi[b->u1] = f1;
      phi[b->u2] = f2;
      mapped = nb;
    } else if (const DeathOp* d = std::get_if<DeathOp>(&op)) {
      mapped = DeathOp{m(d->u1), m(d->u2)};
    } else if (const RelabelOp* r = std::get_if<RelabelOp>(&op)) {
      RelabelOp nr;
      for (const auto& [v, l] : r->new_labels) nr.new_labels.emplace(m(v), l);
      mapped = nr;
    } else if (const K1Op* k = std::get_if<K1Op>(&op)) {
      mapped = K1Op{m(k->u1), m(k->u2), k->l1, k->l2, k->up,
                    k->moved ? std::optional<VertexId>(m(*k->moved)) : std::nullopt};
    } else if (const K2Op* k = std::get_if<K2Op>(&op)) {
      mapped = K2Op{m(k->u1), m(k->u2), k->l1, k->l2,
                    k->moved_low ? std::optional<VertexId>(m(*k->moved_low)) : std::nullopt,
                    k->moved_high ? std::optional<VertexId>(m(*k->moved_high)) : std::nullopt};
    } else if (const K3Op* k = std::get_if<K3Op>(&op)) {
      mapped = K3Op{m(k->u1), m(k->u2), k->l1, k->l2};
    }
    src = reebedit::apply(src, op);
    tgt = reebedit::apply(tgt, mapped);
    out.push_back(mapped);
  }
  return out;
}

}  // namespace detail

// A full deformation from g1 to g2 of equal genus: reduce g1 to canonical
// form, bridge the two canonical chains with one order-preserving relabel,
// then play the reduction of g2 backwards (with its ids recast into the
// working universe).
inline DeformationSequence connect(const Graph& g1, const Graph& g2) {
  require_valid(g1, "connect");
  require_valid(g2, "connect");
  int ga = genus(g1), gb = genus(g2);
  if (ga != gb) throw genus_mismatch_error(ga, gb);

  CanonicalizationResult c1 = canonicalize(g1);
  CanonicalizationResult c2 = canonicalize(g2);
  std::vector<VertexId> o1 = c1.canonical_graph.vertices_by_label();
  std::vector<VertexId> o2 = c2.canonical_graph.vertices_by_label();
  if (o1.size() != o2.size()) throw internal_error("connect: canonical sizes differ");

  RelabelOp bridge;
  std::map<VertexId, VertexId> phi;  // c2 universe -> working universe
  for (std::size_t i = 0; i < o1.size(); ++i) {
    bridge.new_labels.emplace(o1[i], c2.canonical_graph.label(o2[i]));
    phi.emplace(o2[i], o1[i]);
  }
  Graph bridged = apply(c1.canonical_graph, bridge);
  if (!are_isomorphic(bridged, c2.canonical_graph))
    throw internal_error("connect: canonical chains do not correspond");

  DeformationSequence seq = c1.sequence;
  seq.push_back(bridge);
  DeformationSequence back = invert_sequence(g2, c2.sequence);
  DeformationSequence transported =
      detail::transport_sequence(c2.canonical_graph, back, phi, bridged);
  seq.insert(seq.end(), transported.begin(), transported.end());
  return seq;
}

}  // namespace reebedit
