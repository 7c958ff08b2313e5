#pragma once
// The six elementary edit operations on labeled graphs: birth/death of a leaf
// pair, order-respecting relabeling (with at most one transposition of two
// label-consecutive, non-adjacent vertices), and the three saddle swaps that
// exchange two label-consecutive degree-3 vertices joined by a single edge.
// Each operation validates its side conditions before rewriting and has an
// exact cost and an exact inverse of equal cost.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "reebedit/errors.hpp"
#include "reebedit/graph.hpp"
#include "reebedit/rational.hpp"

namespace reebedit {

struct BirthOp {
  VertexId v1, v2;  // endpoints of the subdivided edge
  VertexId u1, u2;  // fresh ids
  Rational l1, l2;  // labels for u1, u2
  VertexId leaf;    // which of u1/u2 becomes the degree-1 vertex
};

struct DeathOp {
  VertexId u1;  // degree-3 vertex, removed
  VertexId u2;  // its degree-1 neighbor, removed
};

// Absent keys keep their current label.
struct RelabelOp {
  std::map<VertexId, Rational> new_labels;
};

// Exchanges u1 and u2 in the label order.  `up` chooses the variant acting on
// two splitting saddles (both free slots of u2 above); the other variant acts
// on two joining saddles.  `moved` selects which of u2's two same-side edges
// transfers to u1; may be omitted when both lead to the same vertex.
struct K1Op {
  VertexId u1, u2;
  Rational l1, l2;  // new labels for u1, u2
  bool up = true;
  std::optional<VertexId> moved;
};

// Joining saddle u1 just below splitting saddle u2; after the swap u2 is a
// splitting saddle below the joining saddle u1.  `moved_low` selects the
// below-edge of u1 that transfers to u2, `moved_high` the above-edge of u2
// that transfers to u1.
struct K2Op {
  VertexId u1, u2;
  Rational l1, l2;
  std::optional<VertexId> moved_low, moved_high;
};

// Splitting saddle u2 just below joining saddle u1; the mirror of K2 (and its
// inverse).  Both edge transfers are forced, so there is nothing to select.
struct K3Op {
  VertexId u1, u2;
  Rational l1, l2;
};

using EditOp = std::variant<BirthOp, DeathOp, RelabelOp, K1Op, K2Op, K3Op>;
using DeformationSequence = std::vector<EditOp>;

inline const char* op_type_name(const EditOp& op) {
  struct Visitor {
    const char* operator()(const BirthOp&) { return "B"; }
    const char* operator()(const DeathOp&) { return "D"; }
    const char* operator()(const RelabelOp&) { return "R"; }
    const char* operator()(const K1Op&) { return "K1"; }
    const char* operator()(const K2Op&) { return "K2"; }
    const char* operator()(const K3Op&) { return "K3"; }
  };
  return std::visit(Visitor{}, op);
}

namespace detail {

// No vertex outside `ignore` may carry a label strictly inside ]lo, hi[.
inline void check_interval_empty(const Graph& g, const Rational& lo, const Rational& hi,
                                 const std::set<VertexId>& ignore, const char* what) {
  for (const auto& [v, l] : g.labels()) {
    if (ignore.count(v)) continue;
    if (lo < l && l < hi)
      throw precondition_error("interval-empty",
                               std::string(what) + ": vertex \"" + v + "\" with label " +
                                   render_rational(l) + " lies inside ]" + render_rational(lo) +
                                   ", " + render_rational(hi) + "[");
  }
}

inline void check_labels_fresh(const Graph& g, const Rational& l,
                               const std::set<VertexId>& ignore) {
  for (const auto& [v, lv] : g.labels()) {
    if (ignore.count(v)) continue;
    if (lv == l)
      throw label_collision_error("label " + render_rational(l) + " already used by \"" + v +
                                  "\"");
  }
}

// The two neighbor slots of `v` other than one occurrence of `other`.
inline std::vector<VertexId> free_slots(const Graph& g, const VertexId& v, const VertexId& other) {
  std::vector<VertexId> slots = g.neighbors(v);
  auto it = std::find(slots.begin(), slots.end(), other);
  if (it != slots.end()) slots.erase(it);
  return slots;
}

inline void check_saddle_pair(const Graph& g, const VertexId& u1, const VertexId& u2,
                              const char* op) {
  if (u1 == u2) throw precondition_error("shape", std::string(op) + ": u1 == u2");
  std::size_t mult = g.edge_multiplicity(u1, u2);
  if (mult == 0)
    throw precondition_error("edge-missing",
                             std::string(op) + ": no edge between \"" + u1 + "\" and \"" + u2 +
                                 "\"");
  if (mult != 1)
    throw precondition_error("edge-multiplicity",
                             std::string(op) + ": \"" + u1 + "\" and \"" + u2 +
                                 "\" are joined by parallel edges");
  if (g.degree(u1) != 3 || g.degree(u2) != 3)
    throw precondition_error("degree", std::string(op) + ": both vertices must have degree 3");
  check_interval_empty(g, std::min(g.label(u1), g.label(u2)),
                       std::max(g.label(u1), g.label(u2)), {u1, u2}, op);
}

// Select one of the two candidate slots via an optional explicit choice.
// Returns (selected, other).
inline std::pair<VertexId, VertexId> select_slot(const std::vector<VertexId>& candidates,
                                                 const std::optional<VertexId>& choice,
                                                 const char* op, const char* field) {
  if (candidates.size() != 2) throw internal_error("select_slot: expected two candidates");
  if (choice) {
    if (*choice == candidates[0]) return {candidates[0], candidates[1]};
    if (*choice == candidates[1]) return {candidates[1], candidates[0]};
    throw precondition_error("moved-invalid", std::string(op) + ": " + field + " \"" + *choice +
                                                  "\" is not one of the eligible slots");
  }
  if (candidates[0] == candidates[1]) return {candidates[0], candidates[1]};
  throw precondition_error("ambiguous", std::string(op) + ": " + field +
                                            " must be given (slots \"" + candidates[0] +
                                            "\" and \"" + candidates[1] + "\" both eligible)");
}

struct KContext {
  // The rewrite is always: remove (a1, b1) and (a2, b2); add (a1, b2) and (a2, b1).
  VertexId v1, v2, v3, v4;
};

inline KContext resolve_k1(const Graph& g, const K1Op& op) {
  check_saddle_pair(g, op.u1, op.u2, "K1");
  const Rational &l1 = g.label(op.u1), &l2 = g.label(op.u2);
  if (op.up ? !(l1 < l2) : !(l2 < l1))
    throw precondition_error("side", std::string("K1: u1 must lie ") +
                                         (op.up ? "below" : "above") + " u2 for this variant");
  KContext ctx;
  std::vector<VertexId> s1 = free_slots(g, op.u1, op.u2);
  // u1 keeps one slot on the far side (v1) and one on the same side as u2's
  // slots (v4, strictly beyond u2's label).
  const bool far_is_low = op.up;  // up: v1 below u1, v4 above u2
  VertexId a = s1[0], b = s1[1];
  auto is_far = [&](const VertexId& w) {
    return far_is_low ? g.label(w) < std::min(l1, l2) : g.label(w) > std::max(l1, l2);
  };
  if (is_far(a) && !is_far(b)) {
    ctx.v1 = a;
    ctx.v4 = b;
  } else if (is_far(b) && !is_far(a)) {
    ctx.v1 = b;
    ctx.v4 = a;
  } else {
    throw precondition_error("shape",
                             "K1: u1 needs one slot on the far side and one beyond u2");
  }
  // v4 must lie strictly beyond u2's label on the near side.
  if (op.up ? !(g.label(ctx.v4) > l2) : !(g.label(ctx.v4) < l2))
    throw precondition_error("shape", "K1: u1's near slot must lie beyond u2");

  std::vector<VertexId> s2 = free_slots(g, op.u2, op.u1);
  for (const VertexId& w : s2) {
    bool ok = op.up ? g.label(w) > l2 : g.label(w) < l2;
    if (!ok)
      throw precondition_error("shape",
                               "K1: both free slots of u2 must lie on the near side");
  }
  auto [sel, other] = select_slot(s2, op.moved, "K1", "moved");
  ctx.v2 = sel;
  ctx.v3 = other;
  return ctx;
}

inline KContext resolve_k2(const Graph& g, const K2Op& op) {
  check_saddle_pair(g, op.u1, op.u2, "K2");
  const Rational &l1 = g.label(op.u1), &l2 = g.label(op.u2);
  if (!(l1 < l2)) throw precondition_error("side", "K2: u1 must lie below u2");
  KContext ctx;
  std::vector<VertexId> s1 = free_slots(g, op.u1, op.u2);
  for (const VertexId& w : s1)
    if (!(g.label(w) < l1))
      throw precondition_error("shape", "K2: both free slots of u1 must lie below it");
  std::vector<VertexId> s2 = free_slots(g, op.u2, op.u1);
  for (const VertexId& w : s2)
    if (!(g.label(w) > l2))
      throw precondition_error("shape", "K2: both free slots of u2 must lie above it");
  auto [lo, lo_other] = select_slot(s1, op.moved_low, "K2", "moved_low");
  auto [hi, hi_other] = select_slot(s2, op.moved_high, "K2", "moved_high");
  ctx.v1 = lo;
  ctx.v2 = lo_other;
  ctx.v3 = hi;
  ctx.v4 = hi_other;
  return ctx;
}

inline KContext resolve_k3(const Graph& g, const K3Op& op) {
  check_saddle_pair(g, op.u1, op.u2, "K3");
  const Rational &l1 = g.label(op.u1), &l2 = g.label(op.u2);
  if (!(l2 < l1)) throw precondition_error("side", "K3: u2 must lie below u1");
  KContext ctx;
  std::vector<VertexId> s2 = free_slots(g, op.u2, op.u1);
  if (g.label(s2[0]) < l2 && g.label(s2[1]) > l1) {
    ctx.v1 = s2[0];
    ctx.v4 = s2[1];
  } else if (g.label(s2[1]) < l2 && g.label(s2[0]) > l1) {
    ctx.v1 = s2[1];
    ctx.v4 = s2[0];
  } else {
    throw precondition_error("shape", "K3: u2 needs one slot below it and one above u1");
  }
  std::vector<VertexId> s1 = free_slots(g, op.u1, op.u2);
  if (g.label(s1[0]) < l2 && g.label(s1[1]) > l1) {
    ctx.v2 = s1[0];
    ctx.v3 = s1[1];
  } else if (g.label(s1[1]) < l2 && g.label(s1[0]) > l1) {
    ctx.v2 = s1[1];
    ctx.v3 = s1[0];
  } else {
    throw precondition_error("shape", "K3: u1 needs one slot below u2 and one above it");
  }
  return ctx;
}

// Shared label checks for the swap family.  Every new label must fall inside
// ]window_lo, window_hi[, the pair must come in the required order, the open
// interval between them must contain no retained label, and neither value may
// collide with a retained label.
inline void check_new_labels(const Graph& g, const VertexId& u1, const VertexId& u2,
                             const Rational& new_low, const Rational& new_high,
                             const Rational& window_lo, const Rational& window_hi,
                             const char* op) {
  if (!(new_low < new_high))
    throw precondition_error("post-order",
                             std::string(op) + ": new labels must strictly exchange the order");
  if (!(window_lo < new_low) || !(new_high < window_hi))
    throw precondition_error("label-window",
                             std::string(op) + ": new labels [" + render_rational(new_low) +
                                 ", " + render_rational(new_high) + "] fall outside ]" +
                                 render_rational(window_lo) + ", " + render_rational(window_hi) +
                                 "[");
  check_interval_empty(g, new_low, new_high, {u1, u2}, op);
  check_labels_fresh(g, new_low, {u1, u2});
  check_labels_fresh(g, new_high, {u1, u2});
}

inline Rational max4(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  return std::max(std::max(a, b), std::max(c, d));
}
inline Rational min3(const Rational& a, const Rational& b, const Rational& c) {
  return std::min(a, std::min(b, c));
}
inline Rational max3(const Rational& a, const Rational& b, const Rational& c) {
  return std::max(a, std::max(b, c));
}

}  // namespace detail

inline Graph apply(const Graph& g, const BirthOp& op) {
  if (!g.has_vertex(op.v1)) throw unknown_vertex_error(op.v1);
  if (!g.has_vertex(op.v2)) throw unknown_vertex_error(op.v2);
  if (g.edge_multiplicity(op.v1, op.v2) == 0)
    throw precondition_error("edge-missing",
                             "B: no edge between \"" + op.v1 + "\" and \"" + op.v2 + "\"");
  if (op.u1 == op.u2 || g.has_vertex(op.u1) || g.has_vertex(op.u2))
    throw precondition_error("fresh-id", "B: new ids must be distinct and unused");
  if (op.leaf != op.u1 && op.leaf != op.u2)
    throw precondition_error("leaf-field", "B: leaf must name one of the new ids");
  const Rational lo = std::min(g.label(op.v1), g.label(op.v2));
  const Rational hi = std::max(g.label(op.v1), g.label(op.v2));
  const Rational nl = std::min(op.l1, op.l2), nh = std::max(op.l1, op.l2);
  if (nl == nh) throw label_collision_error("B: the two new labels coincide");
  if (!(lo < nl) || !(nh < hi))
    throw precondition_error("label-window", "B: new labels must lie strictly between the edge endpoints");
  detail::check_interval_empty(g, nl, nh, {}, "B");
  detail::check_labels_fresh(g, op.l1, {});
  detail::check_labels_fresh(g, op.l2, {});

  Graph out = g;
  out.remove_edge_one(op.v1, op.v2);
  out.add_vertex(op.u1, op.l1);
  out.add_vertex(op.u2, op.l2);
  const VertexId& spine = (op.leaf == op.u1) ? op.u2 : op.u1;
  out.add_edge(op.v1, spine);
  out.add_edge(spine, op.v2);
  out.add_edge(spine, op.leaf);
  return out;
}

inline Graph apply(const Graph& g, const DeathOp& op) {
  if (!g.has_vertex(op.u1)) throw unknown_vertex_error(op.u1);
  if (!g.has_vertex(op.u2)) throw unknown_vertex_error(op.u2);
  if (op.u1 == op.u2) throw precondition_error("shape", "D: u1 == u2");
  if (g.edge_multiplicity(op.u1, op.u2) == 0)
    throw precondition_error("edge-missing",
                             "D: no edge between \"" + op.u1 + "\" and \"" + op.u2 + "\"");
  if (g.degree(op.u1) != 3)
    throw precondition_error("degree", "D: \"" + op.u1 + "\" must have degree 3");
  if (g.degree(op.u2) != 1)
    throw precondition_error("degree", "D: \"" + op.u2 + "\" must have degree 1");
  const Rational lo = std::min(g.label(op.u1), g.label(op.u2));
  const Rational hi = std::max(g.label(op.u1), g.label(op.u2));
  detail::check_interval_empty(g, lo, hi, {op.u1, op.u2}, "D");
  std::vector<VertexId> rest = detail::free_slots(g, op.u1, op.u2);
  VertexId below, above;
  if (g.label(rest[0]) < lo && g.label(rest[1]) > hi) {
    below = rest[0];
    above = rest[1];
  } else if (g.label(rest[1]) < lo && g.label(rest[0]) > hi) {
    below = rest[1];
    above = rest[0];
  } else {
    throw precondition_error(
        "shape", "D: u1 needs one remaining slot below and one above the deleted pair");
  }
  Graph out = g;
  out.remove_vertex(op.u2);
  out.remove_vertex(op.u1);
  out.add_edge(below, above);
  return out;
}

inline Graph apply(const Graph& g, const RelabelOp& op) {
  std::map<VertexId, Rational> target = g.labels();
  for (const auto& [v, l] : op.new_labels) {
    auto it = target.find(v);
    if (it == target.end()) throw unknown_vertex_error(v);
    it->second = l;
  }
  std::map<Rational, VertexId> seen;
  for (const auto& [v, l] : target)
    if (!seen.emplace(l, v).second)
      throw label_collision_error("R: label " + render_rational(l) + " assigned to both \"" +
                                  seen.at(l) + "\" and \"" + v + "\"");

  std::vector<VertexId> old_order = g.vertices_by_label();
  std::vector<VertexId> new_order = old_order;
  std::sort(new_order.begin(), new_order.end(),
            [&](const VertexId& a, const VertexId& b) { return target.at(a) < target.at(b); });
  std::vector<std::size_t> diff;
  for (std::size_t i = 0; i < old_order.size(); ++i)
    if (old_order[i] != new_order[i]) diff.push_back(i);
  if (!diff.empty()) {
    bool is_adjacent_swap = diff.size() == 2 && diff[1] == diff[0] + 1 &&
                            old_order[diff[0]] == new_order[diff[1]] &&
                            old_order[diff[1]] == new_order[diff[0]];
    if (!is_adjacent_swap)
      throw precondition_error(
          "order", "R: the new labeling must preserve the vertex order up to one "
                   "transposition of label-consecutive vertices");
    const VertexId &a = old_order[diff[0]], &b = old_order[diff[1]];
    if (g.adjacent(a, b))
      throw precondition_error("order", "R: transposed vertices \"" + a + "\" and \"" + b +
                                            "\" are adjacent in the graph");
  }
  Graph out = g;
  for (const auto& [v, l] : target) out.set_label(v, l);
  return out;
}

inline Graph apply(const Graph& g, const K1Op& op) {
  detail::KContext ctx = detail::resolve_k1(g, op);
  const Rational new_low = std::min(op.l1, op.l2), new_high = std::max(op.l1, op.l2);
  // Post order: the pair exchanges sides, so in the `up` variant u2 ends below
  // u1 and in the `down` variant u1 ends below u2.
  if (op.up ? !(op.l2 < op.l1) : !(op.l1 < op.l2))
    throw precondition_error("post-order", "K1: new labels must exchange the pair");
  Rational window_lo, window_hi;
  if (op.up) {
    window_lo = g.label(ctx.v1);
    window_hi = detail::min3(g.label(ctx.v2), g.label(ctx.v3), g.label(ctx.v4));
  } else {
    window_lo = detail::max3(g.label(ctx.v2), g.label(ctx.v3), g.label(ctx.v4));
    window_hi = g.label(ctx.v1);
  }
  detail::check_new_labels(g, op.u1, op.u2, new_low, new_high, window_lo, window_hi, "K1");

  Graph out = g;
  out.remove_edge_one(ctx.v1, op.u1);
  out.remove_edge_one(op.u2, ctx.v2);
  out.add_edge(ctx.v1, op.u2);
  out.add_edge(op.u1, ctx.v2);
  out.set_label(op.u1, op.l1);
  out.set_label(op.u2, op.l2);
  return out;
}

inline Graph apply(const Graph& g, const K2Op& op) {
  detail::KContext ctx = detail::resolve_k2(g, op);
  if (!(op.l2 < op.l1))
    throw precondition_error("post-order", "K2: u2 must end below u1");
  Rational window_lo = std::max(g.label(ctx.v1), g.label(ctx.v2));
  Rational window_hi = std::min(g.label(ctx.v3), g.label(ctx.v4));
  detail::check_new_labels(g, op.u1, op.u2, op.l2, op.l1, window_lo, window_hi, "K2");

  Graph out = g;
  out.remove_edge_one(ctx.v1, op.u1);
  out.remove_edge_one(op.u2, ctx.v3);
  out.add_edge(ctx.v1, op.u2);
  out.add_edge(op.u1, ctx.v3);
  out.set_label(op.u1, op.l1);
  out.set_label(op.u2, op.l2);
  return out;
}

inline Graph apply(const Graph& g, const K3Op& op) {
  detail::KContext ctx = detail::resolve_k3(g, op);
  if (!(op.l1 < op.l2))
    throw precondition_error("post-order", "K3: u1 must end below u2");
  Rational window_lo = std::max(g.label(ctx.v1), g.label(ctx.v2));
  Rational window_hi = std::min(g.label(ctx.v3), g.label(ctx.v4));
  detail::check_new_labels(g, op.u1, op.u2, op.l1, op.l2, window_lo, window_hi, "K3");

  Graph out = g;
  out.remove_edge_one(ctx.v1, op.u2);
  out.remove_edge_one(op.u1, ctx.v3);
  out.add_edge(ctx.v1, op.u1);
  out.add_edge(op.u2, ctx.v3);
  out.set_label(op.u1, op.l1);
  out.set_label(op.u2, op.l2);
  return out;
}

inline Graph apply(const Graph& g, const EditOp& op) {
  return std::visit([&](const auto& concrete) { return apply(g, concrete); }, op);
}

// Cost of a single operation in context.  Throws if the op is not applicable.
inline Rational cost(const Graph& g, const EditOp& op) {
  reebedit::apply(g, op);  // validate side conditions
  struct Visitor {
    const Graph& g;
    Rational operator()(const BirthOp& b) { return abs_diff(b.l1, b.l2) / 2; }
    Rational operator()(const DeathOp& d) {
      return abs_diff(g.label(d.u1), g.label(d.u2)) / 2;
    }
    Rational operator()(const RelabelOp& r) {
      Rational best(0);
      for (const auto& [v, l] : r.new_labels) best = std::max(best, abs_diff(g.label(v), l));
      return best;
    }
    Rational operator()(const K1Op& k) { return swap_cost(k.u1, k.u2, k.l1, k.l2); }
    Rational operator()(const K2Op& k) { return swap_cost(k.u1, k.u2, k.l1, k.l2); }
    Rational operator()(const K3Op& k) { return swap_cost(k.u1, k.u2, k.l1, k.l2); }
    Rational swap_cost(const VertexId& u1, const VertexId& u2, const Rational& l1,
                       const Rational& l2) {
      return std::max(abs_diff(g.label(u1), l1), abs_diff(g.label(u2), l2));
    }
  };
  return std::visit(Visitor{g}, op);
}

// The inverse operation, of equal cost: applying it to apply(g, op) restores g.
inline EditOp inverse(const Graph& g, const EditOp& op) {
  struct Visitor {
    const Graph& g;
    EditOp operator()(const BirthOp& b) {
      apply(g, b);
      const VertexId& spine = (b.leaf == b.u1) ? b.u2 : b.u1;
      return DeathOp{spine, b.leaf};
    }
    EditOp operator()(const DeathOp& d) {
      apply(g, d);
      std::vector<VertexId> rest = detail::free_slots(g, d.u1, d.u2);
      VertexId below = g.label(rest[0]) < g.label(rest[1]) ? rest[0] : rest[1];
      VertexId above = g.label(rest[0]) < g.label(rest[1]) ? rest[1] : rest[0];
      return BirthOp{below, above, d.u1, d.u2, g.label(d.u1), g.label(d.u2), d.u2};
    }
    EditOp operator()(const RelabelOp& r) {
      apply(g, r);
      RelabelOp back;
      for (const auto& [v, l] : r.new_labels) back.new_labels.emplace(v, g.label(v));
      return back;
    }
    EditOp operator()(const K1Op& k) {
      detail::KContext ctx = detail::resolve_k1(g, k);
      apply(g, k);
      return K1Op{k.u2, k.u1, g.label(k.u2), g.label(k.u1), k.up, ctx.v2};
    }
    EditOp operator()(const K2Op& k) {
      apply(g, k);
      return K3Op{k.u1, k.u2, g.label(k.u1), g.label(k.u2)};
    }
    EditOp operator()(const K3Op& k) {
      detail::KContext ctx = detail::resolve_k3(g, k);
      apply(g, k);
      return K2Op{k.u1, k.u2, g.label(k.u1), g.label(k.u2), ctx.v1, ctx.v3};
    }
  };
  return std::visit(Visitor{g}, op);
}

inline Graph replay(const Graph& start, const DeformationSequence& ops) {
  Graph g = start;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    try {
      g = reebedit::apply(g, ops[i]);
    } catch (const std::exception& e) {
      throw replay_error(i, e.what());
    }
  }
  return g;
}

inline Rational total_cost(const Graph& start, const DeformationSequence& ops) {
  Graph g = start;
  Rational sum(0);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    try {
      sum += cost(g, ops[i]);
      g = reebedit::apply(g, ops[i]);
    } catch (const std::exception& e) {
      throw replay_error(i, e.what());
    }
  }
  return sum;
}

// Reverse a sequence into one that maps replay(start, ops) back to start.
inline DeformationSequence invert_sequence(const Graph& start, const DeformationSequence& ops) {
  DeformationSequence out;
  out.reserve(ops.size());
  Graph g = start;
  for (const EditOp& op : ops) {
    out.push_back(inverse(g, op));
    g = reebedit::apply(g, op);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

struct OpKinds {
  bool birth = true, death = true, relabel = true, k1 = true, k2 = true, k3 = true;
  static OpKinds all() { return OpKinds{}; }
  static OpKinds none() { return OpKinds{false, false, false, false, false, false}; }
};

// Fresh vertex ids "u0", "u1", ... not yet used by the graph.
inline std::pair<VertexId, VertexId> fresh_id_pair(const Graph& g) {
  std::vector<VertexId> out;
  for (int k = 0; out.size() < 2; ++k) {
    VertexId cand = "u" + std::to_string(k);
    if (!g.has_vertex(cand)) out.push_back(cand);
  }
  return {out[0], out[1]};
}

// All operations of the requested kinds that fire on g, in a deterministic
// order: deaths, saddle swaps (by position of the pair in the label order),
// relabels, births.  Swap labels are either the exact value exchange or a
// midpoint pair of width eps; relabel candidates nudge one vertex to eps
// inside an end of its free interval; births insert a midpoint pair of width
// eps.  Every returned op is guaranteed applicable.
inline std::vector<EditOp> enumerate_applicable(const Graph& g, const OpKinds& kinds,
                                                const Rational& eps) {
  std::vector<EditOp> out;
  auto try_push = [&](EditOp op) {
    try {
      reebedit::apply(g, op);
      out.push_back(std::move(op));
    } catch (const std::exception&) {
    }
  };
  std::vector<VertexId> order = g.vertices_by_label();

  if (kinds.death) {
    for (const VertexId& v : order) {
      if (g.degree(v) != 3) continue;
      std::set<VertexId> tried;
      for (const VertexId& w : g.neighbors(v))
        if (g.degree(w) == 1 && tried.insert(w).second) try_push(DeathOp{v, w});
    }
  }

  if (kinds.k1 || kinds.k2 || kinds.k3) {
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      const VertexId &a = order[i], &b = order[i + 1];
      if (g.edge_multiplicity(a, b) != 1) continue;
      if (g.degree(a) != 3 || g.degree(b) != 3) continue;
      VertexClass ca = classify(g, a), cb = classify(g, b);
      const Rational la = g.label(a), lb = g.label(b);
      const Rational mid = midpoint(la, lb);
      const Rational half = eps / 2;
      auto slot_choices = [&](const VertexId& v, const VertexId& other) {
        std::vector<VertexId> slots = detail::free_slots(g, v, other);
        std::sort(slots.begin(), slots.end());
        slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
        return slots;
      };
      bool join_a = ca == VertexClass::JoiningSaddle;
      bool join_b = cb == VertexClass::JoiningSaddle;
      if (join_a && join_b && kinds.k1) {
        for (const VertexId& mv : slot_choices(a, b)) {
          try_push(K1Op{b, a, la, lb, false, mv});
          if (eps > 0) try_push(K1Op{b, a, mid - half, mid + half, false, mv});
        }
      } else if (!join_a && !join_b && kinds.k1) {
        for (const VertexId& mv : slot_choices(b, a)) {
          try_push(K1Op{a, b, lb, la, true, mv});
          if (eps > 0) try_push(K1Op{a, b, mid + half, mid - half, true, mv});
        }
      } else if (join_a && !join_b && kinds.k2) {
        for (const VertexId& mlo : slot_choices(a, b))
          for (const VertexId& mhi : slot_choices(b, a)) {
            try_push(K2Op{a, b, lb, la, mlo, mhi});
            if (eps > 0) try_push(K2Op{a, b, mid + half, mid - half, mlo, mhi});
          }
      } else if (!join_a && join_b && kinds.k3) {
        try_push(K3Op{b, a, la, lb});
        if (eps > 0) try_push(K3Op{b, a, mid - half, mid + half});
      }
    }
  }

  if (kinds.relabel) {
    RelabelOp identity;
    for (const auto& [v, l] : g.labels()) identity.new_labels.emplace(v, l);
    try_push(identity);
    if (eps > 0) {
      for (std::size_t i = 0; i < order.size(); ++i) {
        const VertexId& v = order[i];
        if (i > 0) {
          Rational cand = g.label(order[i - 1]) + eps;
          if (cand != g.label(v)) try_push(RelabelOp{{{v, cand}}});
        }
        if (i + 1 < order.size()) {
          Rational cand = g.label(order[i + 1]) - eps;
          if (cand != g.label(v)) try_push(RelabelOp{{{v, cand}}});
        }
      }
    }
  }

  if (kinds.birth && eps > 0) {
    auto [id1, id2] = fresh_id_pair(g);
    std::set<Graph::Edge> seen;
    for (const Graph::Edge& e : g.edges()) {
      if (!seen.insert(e).second) continue;
      Rational mid = midpoint(g.label(e.first), g.label(e.second));
      Rational half = eps / 2;
      // leaf above (a new local maximum), then leaf below
      try_push(BirthOp{e.first, e.second, id1, id2, mid - half, mid + half, id2});
      try_push(BirthOp{e.first, e.second, id1, id2, mid + half, mid - half, id2});
    }
  }
  return out;
}

}  // namespace reebedit
