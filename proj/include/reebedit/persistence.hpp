#pragma once
// Extended persistence of the label function on a valid graph.  Four parts:
//   ord0      sublevel 0-dim pairs (birth at a minimum, death at a join)
//   rel0      superlevel 0-dim pairs (birth at a maximum, death at a split),
//             written in original coordinates so birth > death
//   ess0      the essential component, (global min, global max)
//   ess1      one (upper, lower) pair per independent cycle: the join label
//             that closes the cycle going up and the split label that opens
//             it coming down.
// Cycles are paired exactly, via a reduction over GF(2): the ascending sweep
// yields a fundamental-cycle basis with closing labels, the descending sweep
// yields one cycle per opening label, and each descending cycle (processed by
// decreasing opening label) is matched to the largest closing label in its
// reduced support.

#include <map>
#include <queue>
#include <set>
#include <vector>

#include "reebedit/graph.hpp"

namespace reebedit {

struct Diagram {
  std::vector<std::pair<Rational, Rational>> ord0;
  std::vector<std::pair<Rational, Rational>> rel0;
  std::pair<Rational, Rational> ess0;
  std::vector<std::pair<Rational, Rational>> ess1;

  bool operator==(const Diagram&) const = default;
};

namespace detail {

struct LabeledUF {
  std::map<VertexId, VertexId> parent;
  std::map<VertexId, Rational> birth;  // meaningful on roots

  void add(const VertexId& v, const Rational& b) {
    parent[v] = v;
    birth[v] = b;
  }
  VertexId find(VertexId v) {
    while (parent.at(v) != v) {
      parent[v] = parent.at(parent.at(v));
      v = parent.at(v);
    }
    return v;
  }
};

// Edge-index path between two vertices using only marked tree edges.
inline std::set<int> tree_path_edges(const Graph& g, const std::vector<char>& tree,
                                     const VertexId& from, const VertexId& to) {
  std::map<VertexId, std::vector<std::pair<VertexId, int>>> adj;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (!tree[i]) continue;
    const Graph::Edge& e = g.edges()[i];
    adj[e.first].push_back({e.second, static_cast<int>(i)});
    adj[e.second].push_back({e.first, static_cast<int>(i)});
  }
  std::map<VertexId, std::pair<VertexId, int>> pred;
  std::queue<VertexId> q;
  q.push(from);
  pred[from] = {from, -1};
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop();
    if (v == to) break;
    for (const auto& [w, idx] : adj[v])
      if (!pred.count(w)) {
        pred[w] = {v, idx};
        q.push(w);
      }
  }
  if (!pred.count(to)) throw internal_error("tree_path_edges: endpoints not tree-connected");
  std::set<int> out;
  for (VertexId v = to; v != from; v = pred.at(v).first) out.insert(pred.at(v).second);
  return out;
}

inline void xor_into(std::set<int>& a, const std::set<int>& b) {
  for (int x : b) {
    auto [it, inserted] = a.insert(x);
    if (!inserted) a.erase(it);
  }
}

}  // namespace detail

inline Diagram extended_diagram(const Graph& g) {
  require_valid(g, "extended_diagram");
  Diagram dgm;
  std::vector<VertexId> order = g.vertices_by_label();
  const auto& edges = g.edges();
  const int m = static_cast<int>(edges.size());
  dgm.ess0 = {g.label(order.front()), g.label(order.back())};

  // ascending sweep
  detail::LabeledUF up;
  std::vector<char> up_tree(m, 0);
  std::vector<std::pair<int, Rational>> up_cycles;  // (edge index, closing label)
  for (const VertexId& v : order) {
    const Rational& lv = g.label(v);
    up.add(v, lv);
    std::vector<std::pair<Rational, int>> incoming;  // (neighbor label, edge index)
    for (int i = 0; i < m; ++i) {
      const VertexId* other = nullptr;
      if (edges[i].first == v) other = &edges[i].second;
      else if (edges[i].second == v) other = &edges[i].first;
      if (other && g.label(*other) < lv) incoming.push_back({g.label(*other), i});
    }
    std::sort(incoming.begin(), incoming.end());
    for (const auto& [lu, i] : incoming) {
      const VertexId& u = edges[i].first == v ? edges[i].second : edges[i].first;
      VertexId ru = up.find(u), rv = up.find(v);
      if (ru == rv) {
        up_cycles.push_back({i, lv});
        continue;
      }
      up_tree[i] = 1;
      Rational younger = std::max(up.birth.at(ru), up.birth.at(rv));
      if (younger < lv) dgm.ord0.push_back({younger, lv});
      up.parent[ru] = rv;
      up.birth[rv] = std::min(up.birth.at(ru), up.birth.at(rv));
    }
  }

  // descending sweep
  detail::LabeledUF down;
  std::vector<char> down_tree(m, 0);
  std::vector<std::pair<int, Rational>> down_cycles;  // (edge index, opening label)
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId& v = *it;
    const Rational& lv = g.label(v);
    down.add(v, lv);
    std::vector<std::pair<Rational, int>> incoming;
    for (int i = 0; i < m; ++i) {
      const VertexId* other = nullptr;
      if (edges[i].first == v) other = &edges[i].second;
      else if (edges[i].second == v) other = &edges[i].first;
      if (other && g.label(*other) > lv) incoming.push_back({g.label(*other), i});
    }
    std::sort(incoming.begin(), incoming.end(),
              [](const auto& a, const auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });
    for (const auto& [lu, i] : incoming) {
      const VertexId& u = edges[i].first == v ? edges[i].second : edges[i].first;
      VertexId ru = down.find(u), rv = down.find(v);
      if (ru == rv) {
        down_cycles.push_back({i, lv});
        continue;
      }
      down_tree[i] = 1;
      Rational younger = std::min(down.birth.at(ru), down.birth.at(rv));
      if (younger > lv) dgm.rel0.push_back({younger, lv});
      down.parent[ru] = rv;
      down.birth[rv] = std::max(down.birth.at(ru), down.birth.at(rv));
    }
  }

  if (up_cycles.size() != down_cycles.size())
    throw internal_error("extended_diagram: cycle count mismatch between sweeps");
  const int rank = static_cast<int>(up_cycles.size());

  if (rank > 0) {
    // Fundamental cycles as GF(2) edge sets.
    std::vector<std::set<int>> zs(rank), ws(rank);
    std::vector<Rational> ds(rank), bs(rank);
    for (int i = 0; i < rank; ++i) {
      const Graph::Edge& e = edges[up_cycles[i].first];
      zs[i] = detail::tree_path_edges(g, up_tree, e.first, e.second);
      zs[i].insert(up_cycles[i].first);
      ds[i] = up_cycles[i].second;
    }
    for (int j = 0; j < rank; ++j) {
      const Graph::Edge& e = edges[down_cycles[j].first];
      ws[j] = detail::tree_path_edges(g, down_tree, e.first, e.second);
      ws[j].insert(down_cycles[j].first);
      bs[j] = down_cycles[j].second;
    }

    // Echelonize the ascending basis, tracking which original cycles combine
    // into each pivot row, then express every descending cycle in that basis.
    std::map<int, std::pair<std::set<int>, std::set<int>>> pivots;  // edge -> (vec, combo)
    for (int i = 0; i < rank; ++i) {
      std::set<int> v = zs[i], c = {i};
      while (!v.empty()) {
        int p = *v.rbegin();
        auto it = pivots.find(p);
        if (it == pivots.end()) {
          pivots.emplace(p, std::make_pair(v, c));
          break;
        }
        detail::xor_into(v, it->second.first);
        detail::xor_into(c, it->second.second);
      }
      if (v.empty()) throw internal_error("extended_diagram: dependent ascending cycles");
    }
    std::vector<std::set<int>> coords(rank);  // W_j as a subset of {Z_i}
    for (int j = 0; j < rank; ++j) {
      std::set<int> v = ws[j], c;
      while (!v.empty()) {
        int p = *v.rbegin();
        auto it = pivots.find(p);
        if (it == pivots.end())
          throw internal_error("extended_diagram: descending cycle outside the ascending span");
        detail::xor_into(v, it->second.first);
        detail::xor_into(c, it->second.second);
      }
      coords[j] = c;
    }

    // Row order: ascending cycles by closing label; columns by decreasing
    // opening label.  Standard left-to-right reduction pairs each column with
    // its lowest surviving row.
    std::vector<int> row_rank(rank);  // z index -> row position
    {
      std::vector<int> by_d(rank);
      for (int i = 0; i < rank; ++i) by_d[i] = i;
      std::sort(by_d.begin(), by_d.end(), [&](int a, int b) { return ds[a] < ds[b]; });
      for (int pos = 0; pos < rank; ++pos) row_rank[by_d[pos]] = pos;
      std::vector<int> col_order(rank);
      for (int j = 0; j < rank; ++j) col_order[j] = j;
      std::sort(col_order.begin(), col_order.end(),
                [&](int a, int b) { return bs[a] > bs[b]; });
      std::map<int, std::set<int>> low_to_col;  // low row -> reduced column
      for (int j : col_order) {
        std::set<int> col;
        for (int zi : coords[j]) col.insert(row_rank[zi]);
        while (!col.empty() && low_to_col.count(*col.rbegin()))
          detail::xor_into(col, low_to_col.at(*col.rbegin()));
        if (col.empty()) throw internal_error("extended_diagram: reduction produced empty column");
        int low = *col.rbegin();
        low_to_col.emplace(low, col);
        dgm.ess1.push_back({ds[by_d[low]], bs[j]});
      }
    }
  }

  std::sort(dgm.ord0.begin(), dgm.ord0.end());
  std::sort(dgm.rel0.begin(), dgm.rel0.end());
  std::sort(dgm.ess1.begin(), dgm.ess1.end());
  return dgm;
}

}  // namespace reebedit
