#pragma once
// Labeled multigraphs with rational vertex labels, and the structural
// predicates for the class of graphs this library works on: connected
// multigraphs whose vertices have degree 1 or 3 (with edge multiplicity),
// carry pairwise distinct labels, and satisfy an ordering condition at every
// degree-3 vertex (at least one neighbor slot strictly below and one strictly
// above).  Self-loops are excluded.  The container itself is permissive so
// that validate() can report violations instead of refusing to hold them.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "reebedit/errors.hpp"
#include "reebedit/rational.hpp"

namespace reebedit {

using VertexId = std::string;

class Graph {
 public:
  // Unordered edge, stored with endpoints in lexicographic order.
  using Edge = std::pair<VertexId, VertexId>;

  static Edge make_edge(const VertexId& a, const VertexId& b) {
    return a <= b ? Edge{a, b} : Edge{b, a};
  }

  const std::map<VertexId, Rational>& labels() const { return labels_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_vertex(const VertexId& v) const { return labels_.count(v) != 0; }

  const Rational& label(const VertexId& v) const {
    auto it = labels_.find(v);
    if (it == labels_.end()) throw unknown_vertex_error(v);
    return it->second;
  }

  void add_vertex(const VertexId& v, const Rational& l) {
    if (v.empty()) throw parse_error("empty vertex id");
    if (!labels_.emplace(v, l).second) throw parse_error("duplicate vertex id: \"" + v + "\"");
  }

  void set_label(const VertexId& v, const Rational& l) {
    auto it = labels_.find(v);
    if (it == labels_.end()) throw unknown_vertex_error(v);
    it->second = l;
  }

  void add_edge(const VertexId& a, const VertexId& b) {
    if (!has_vertex(a)) throw unknown_vertex_error(a);
    if (!has_vertex(b)) throw unknown_vertex_error(b);
    Edge e = make_edge(a, b);
    edges_.insert(std::upper_bound(edges_.begin(), edges_.end(), e), e);
  }

  // Removes one copy; returns false if the edge is absent.
  bool remove_edge_one(const VertexId& a, const VertexId& b) {
    Edge e = make_edge(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return false;
    edges_.erase(it);
    return true;
  }

  void remove_vertex(const VertexId& v) {
    if (labels_.erase(v) == 0) throw unknown_vertex_error(v);
    edges_.erase(std::remove_if(edges_.begin(), edges_.end(),
                                [&](const Edge& e) { return e.first == v || e.second == v; }),
                 edges_.end());
  }

  std::size_t edge_multiplicity(const VertexId& a, const VertexId& b) const {
    Edge e = make_edge(a, b);
    auto range = std::equal_range(edges_.begin(), edges_.end(), e);
    return static_cast<std::size_t>(range.second - range.first);
  }

  bool adjacent(const VertexId& a, const VertexId& b) const {
    return edge_multiplicity(a, b) != 0;
  }

  // Neighbor slots, one entry per incident edge copy, sorted.
  std::vector<VertexId> neighbors(const VertexId& v) const {
    std::vector<VertexId> out;
    for (const Edge& e : edges_) {
      if (e.first == v) out.push_back(e.second);
      if (e.second == v) out.push_back(e.first);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  int degree(const VertexId& v) const {
    int d = 0;
    for (const Edge& e : edges_) {
      if (e.first == v) ++d;
      if (e.second == v) ++d;  // self-loops count twice
    }
    return d;
  }

  std::vector<VertexId> vertices_by_label() const {
    std::vector<VertexId> out;
    out.reserve(labels_.size());
    for (const auto& [v, l] : labels_) out.push_back(v);
    std::sort(out.begin(), out.end(), [&](const VertexId& a, const VertexId& b) {
      const Rational &la = labels_.at(a), &lb = labels_.at(b);
      return la != lb ? la < lb : a < b;
    });
    return out;
  }

  bool operator==(const Graph& o) const { return labels_ == o.labels_ && edges_ == o.edges_; }

 private:
  std::map<VertexId, Rational> labels_;
  std::vector<Edge> edges_;  // kept sorted
};

enum class VertexClass { Minimum, Maximum, JoiningSaddle, SplittingSaddle };

inline const char* vertex_class_name(VertexClass c) {
  switch (c) {
    case VertexClass::Minimum: return "minimum";
    case VertexClass::Maximum: return "maximum";
    case VertexClass::JoiningSaddle: return "joining-saddle";
    case VertexClass::SplittingSaddle: return "splitting-saddle";
  }
  return "?";
}

// Assumes a structurally valid graph around v (degree 1 or 3, distinct labels).
inline VertexClass classify(const Graph& g, const VertexId& v) {
  const Rational& lv = g.label(v);
  std::vector<VertexId> nbrs = g.neighbors(v);
  if (nbrs.size() == 1) {
    return g.label(nbrs[0]) > lv ? VertexClass::Minimum : VertexClass::Maximum;
  }
  if (nbrs.size() == 3) {
    int above = 0;
    for (const VertexId& w : nbrs)
      if (g.label(w) > lv) ++above;
    return above == 2 ? VertexClass::SplittingSaddle : VertexClass::JoiningSaddle;
  }
  throw std::invalid_argument("classify: vertex \"" + v + "\" has degree " +
                              std::to_string(nbrs.size()));
}

struct Violation {
  std::string rule;     // short tag, e.g. "degree"
  std::string subject;  // offending vertex/edge, possibly empty
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  void add(std::string rule, std::string subject, std::string message) {
    ok = false;
    violations.push_back({std::move(rule), std::move(subject), std::move(message)});
  }
};

inline ValidationReport validate(const Graph& g) {
  ValidationReport report;
  if (g.vertex_count() == 0) {
    report.add("nonempty", "", "graph has no vertices");
    return report;
  }
  if (g.vertex_count() % 2 != 0)
    report.add("even-order", "", "vertex count " + std::to_string(g.vertex_count()) + " is odd");

  for (const Graph::Edge& e : g.edges())
    if (e.first == e.second) report.add("self-loop", e.first, "self-loop at \"" + e.first + "\"");

  std::map<Rational, std::vector<VertexId>> by_label;
  for (const auto& [v, l] : g.labels()) by_label[l].push_back(v);
  for (const auto& [l, vs] : by_label) {
    if (vs.size() > 1) {
      std::string who;
      for (const VertexId& v : vs) who += (who.empty() ? "\"" : ", \"") + v + "\"";
      report.add("duplicate-label", vs[0], "label " + render_rational(l) + " shared by " + who);
    }
  }

  bool labels_distinct = by_label.size() == g.labels().size();
  for (const auto& [v, l] : g.labels()) {
    std::vector<VertexId> nbrs = g.neighbors(v);
    if (nbrs.size() != 1 && nbrs.size() != 3) {
      report.add("degree", v,
                 "vertex \"" + v + "\" has degree " + std::to_string(nbrs.size()) +
                     " (must be 1 or 3)");
      continue;
    }
    if (!labels_distinct) continue;  // ordering checks need distinct labels
    if (nbrs.size() == 3) {
      int above = 0, below = 0;
      for (const VertexId& w : nbrs) {
        if (g.label(w) > l) ++above;
        if (g.label(w) < l) ++below;
      }
      if (above == 0 || below == 0)
        report.add("saddle-ordering", v,
                   "degree-3 vertex \"" + v + "\" needs neighbor slots both below and above");
    }
  }

  // connectivity (isolated vertices already flagged by the degree rule)
  std::set<VertexId> seen;
  std::queue<VertexId> frontier;
  frontier.push(g.labels().begin()->first);
  seen.insert(g.labels().begin()->first);
  std::map<VertexId, std::vector<VertexId>> adj;
  for (const Graph::Edge& e : g.edges()) {
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  while (!frontier.empty()) {
    VertexId v = frontier.front();
    frontier.pop();
    for (const VertexId& w : adj[v])
      if (seen.insert(w).second) frontier.push(w);
  }
  if (seen.size() != g.vertex_count())
    report.add("connected", "",
               "graph has " + std::to_string(g.vertex_count() - seen.size()) +
                   " vertices unreachable from \"" + g.labels().begin()->first + "\"");
  return report;
}

inline void require_valid(const Graph& g, const char* who) {
  ValidationReport r = validate(g);
  if (!r.ok)
    throw std::invalid_argument(std::string(who) + ": invalid graph: " + r.violations[0].rule +
                                " (" + r.violations[0].message + ")");
}

// First Betti number |E| - |V| + 1 of a connected graph; equals the genus of
// the underlying surface for this class of graphs.
inline int genus(const Graph& g) {
  require_valid(g, "genus");
  return static_cast<int>(g.edge_count()) - static_cast<int>(g.vertex_count()) + 1;
}

inline std::vector<VertexId> vertices_of_class(const Graph& g, VertexClass c) {
  std::vector<VertexId> out;
  for (const VertexId& v : g.vertices_by_label())
    if (classify(g, v) == c) out.push_back(v);
  return out;
}

inline int count_class(const Graph& g, VertexClass c) {
  return static_cast<int>(vertices_of_class(g, c).size());
}

// Minimal: a single minimum and a single maximum.
inline bool is_minimal(const Graph& g) {
  require_valid(g, "is_minimal");
  return count_class(g, VertexClass::Minimum) == 1 && count_class(g, VertexClass::Maximum) == 1;
}

// Canonical: minimal and every cycle is a pair of parallel edges, i.e. the
// underlying simple graph is a tree.
inline bool is_canonical(const Graph& g) {
  if (!is_minimal(g)) return false;
  std::set<Graph::Edge> simple(g.edges().begin(), g.edges().end());
  return simple.size() == g.vertex_count() - 1;
}

// Label-respecting isomorphism: within this class the only candidate is the
// bijection matching equal labels, so the check is direct.
inline std::optional<std::map<VertexId, VertexId>> are_isomorphic(const Graph& g1,
                                                                  const Graph& g2) {
  require_valid(g1, "are_isomorphic");
  require_valid(g2, "are_isomorphic");
  if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count())
    return std::nullopt;
  std::map<Rational, VertexId> rev2;
  for (const auto& [v, l] : g2.labels()) rev2.emplace(l, v);
  std::map<VertexId, VertexId> phi;
  for (const auto& [v, l] : g1.labels()) {
    auto it = rev2.find(l);
    if (it == rev2.end()) return std::nullopt;
    phi.emplace(v, it->second);
  }
  std::vector<Graph::Edge> mapped;
  mapped.reserve(g1.edge_count());
  for (const Graph::Edge& e : g1.edges())
    mapped.push_back(Graph::make_edge(phi.at(e.first), phi.at(e.second)));
  std::sort(mapped.begin(), mapped.end());
  if (mapped != g2.edges()) return std::nullopt;
  return phi;
}

// Pairs the i-th lowest vertex of g1 with the i-th lowest of g2 and reports
// the map when it is a graph isomorphism.  Label values are ignored, only
// their order matters; the exact-label variant above is the stricter check.
inline std::optional<std::map<VertexId, VertexId>> order_preserving_iso(const Graph& g1,
                                                                        const Graph& g2) {
  require_valid(g1, "order_preserving_iso");
  require_valid(g2, "order_preserving_iso");
  if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count())
    return std::nullopt;
  std::vector<VertexId> o1 = g1.vertices_by_label();
  std::vector<VertexId> o2 = g2.vertices_by_label();
  std::map<VertexId, VertexId> phi;
  for (std::size_t i = 0; i < o1.size(); ++i) phi.emplace(o1[i], o2[i]);
  std::vector<Graph::Edge> mapped;
  mapped.reserve(g1.edge_count());
  for (const Graph::Edge& e : g1.edges())
    mapped.push_back(Graph::make_edge(phi.at(e.first), phi.at(e.second)));
  std::sort(mapped.begin(), mapped.end());
  if (mapped != g2.edges()) return std::nullopt;
  return phi;
}

// Smallest gap between consecutive labels; zero for fewer than two vertices.
inline Rational min_label_gap(const Graph& g) {
  std::vector<VertexId> order = g.vertices_by_label();
  if (order.size() < 2) return Rational(0);
  Rational best = g.label(order[1]) - g.label(order[0]);
  for (std::size_t i = 2; i < order.size(); ++i)
    best = std::min(best, Rational(g.label(order[i]) - g.label(order[i - 1])));
  return best;
}

namespace detail {

// Index of v in the label-sorted vertex list.
inline std::size_t label_index(const std::vector<VertexId>& order, const VertexId& v) {
  auto it = std::find(order.begin(), order.end(), v);
  if (it == order.end()) throw unknown_vertex_error(v);
  return static_cast<std::size_t>(it - order.begin());
}

}  // namespace detail

}  // namespace reebedit
