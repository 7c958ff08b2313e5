#pragma once
// Shared fixtures and helpers for the test suite: hand-built graphs whose
// structure (and in several cases whose exact reduction traces, diagrams, and
// costs) were worked out by hand, plus small builders used across the files.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "reebedit/bottleneck.hpp"
#include "reebedit/graph.hpp"
#include "reebedit/json_io.hpp"
#include "reebedit/ops.hpp"
#include "reebedit/persistence.hpp"
#include "reebedit/random_graph.hpp"
#include "reebedit/rng.hpp"

namespace testsupport {

using reebedit::DeformationSequence;
using reebedit::EditOp;
using reebedit::Graph;
using reebedit::Rational;
using reebedit::VertexId;

inline Rational rat(const std::string& s) { return reebedit::parse_rational(s); }

inline Graph make_graph(const std::vector<std::pair<std::string, std::string>>& vertices,
                        const std::vector<std::pair<std::string, std::string>>& edges) {
  Graph g;
  for (const auto& [id, label] : vertices) g.add_vertex(id, rat(label));
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  return g;
}

// m(0) -- M(1): the smallest valid instance.
inline Graph sphere() { return make_graph({{"m", "0"}, {"M", "1"}}, {{"m", "M"}}); }

// m(0) - s(1) = j(2) - M(3): the genus-1 canonical chain.
inline Graph canonical_torus() {
  return make_graph({{"m", "0"}, {"s", "1"}, {"j", "2"}, {"M", "3"}},
                    {{"m", "s"}, {"s", "j"}, {"s", "j"}, {"j", "M"}});
}

// Genus-1 chain plus one leaf pair: splitting saddle b(3) carries leaf x(4)
// on the top edge.  Death{b, x} takes it straight back to a canonical chain.
inline Graph torus_with_bump() {
  return make_graph(
      {{"m", "0"}, {"s", "1"}, {"j", "2"}, {"b", "3"}, {"x", "4"}, {"M", "5"}},
      {{"m", "s"}, {"s", "j"}, {"s", "j"}, {"j", "b"}, {"b", "x"}, {"b", "M"}});
}

// Joining saddle u1(2) directly below splitting saddle u2(3), each carrying
// two leaves: the shape on which the join/split swap fires.
inline Graph k2_instance() {
  return make_graph({{"m1", "0"}, {"m2", "1"}, {"u1", "2"}, {"u2", "3"}, {"M1", "4"}, {"M2", "5"}},
                    {{"m1", "u1"}, {"m2", "u1"}, {"u1", "u2"}, {"u2", "M1"}, {"u2", "M2"}});
}

// Two splitting saddles u1(1) < u2(2) in a row; u2's free slots are the
// distinct leaves B(4) and C(5), so the swap needs the `moved` selector.
inline Graph k1_up_instance() {
  return make_graph({{"m", "0"}, {"u1", "1"}, {"u2", "2"}, {"A", "3"}, {"B", "4"}, {"C", "5"}},
                    {{"m", "u1"}, {"u1", "u2"}, {"u1", "A"}, {"u2", "B"}, {"u2", "C"}});
}

// Two minima m1(0), m2(1) whose connecting path m1 - j - s - m2 has interior
// saddles j(4) and s(2).  Reducing it costs one hop of j plus one swap.
inline Graph two_minima_instance() {
  return make_graph(
      {{"m1", "0"}, {"m2", "1"}, {"s", "2"}, {"M2", "3"}, {"j", "4"}, {"M1", "5"}},
      {{"m1", "j"}, {"m2", "s"}, {"s", "j"}, {"s", "M2"}, {"j", "M1"}});
}

// Mirror image of the above: two maxima A(5), B(4) joined through sp(1) and
// sj(3), for exercising the descending side of path reduction.
inline Graph two_maxima_instance() {
  return make_graph(
      {{"ma", "0"}, {"sp", "1"}, {"mb", "2"}, {"sj", "3"}, {"B", "4"}, {"A", "5"}},
      {{"A", "sp"}, {"B", "sj"}, {"sj", "sp"}, {"sj", "mb"}, {"sp", "ma"}});
}

// Genus-1 graph whose cycle s(1) - x(2) - j(3) has length three; reducing it
// to a doubled edge costs one hop of j plus one swap.
inline Graph three_cycle_instance() {
  return make_graph(
      {{"m", "0"}, {"s", "1"}, {"x", "2"}, {"L", "5/2"}, {"j", "3"}, {"M", "4"}},
      {{"m", "s"}, {"s", "x"}, {"s", "j"}, {"x", "j"}, {"x", "L"}, {"j", "M"}});
}

// Minimal genus-2 graph that is not canonical: one biconnected block mixes a
// doubled edge v = w with the 4-cycle a - v - w - d.  Canonicalization
// resolves it in a single round of cost 1 + 1.
inline Graph genus2_noncanonical() {
  return make_graph({{"m", "0"}, {"a", "1"}, {"v", "2"}, {"w", "3"}, {"d", "4"}, {"M", "5"}},
                    {{"m", "a"},
                     {"a", "v"},
                     {"v", "w"},
                     {"v", "w"},
                     {"w", "d"},
                     {"a", "d"},
                     {"d", "M"}});
}

// Sphere with three disjoint bumps of width 2 each: minimalization deletes
// them one by one at cost 1 + 1 + 1, while the contracted rewrite of those
// deletions at eps = 1/100 costs exactly 1.02.
inline Graph three_bump_instance() {
  return make_graph({{"m", "0"},
                     {"s1", "1"},
                     {"M1", "3"},
                     {"s2", "4"},
                     {"M2", "6"},
                     {"s3", "7"},
                     {"M3", "9"},
                     {"M", "10"}},
                    {{"m", "s1"},
                     {"s1", "M1"},
                     {"s1", "s2"},
                     {"s2", "M2"},
                     {"s2", "s3"},
                     {"s3", "M3"},
                     {"s3", "M"}});
}

// Two leaf pairs whose deletion intervals nest: [3, 5] sits inside [1, 9].
// The inner pair must die first; the outer deletion then costs 4.
inline Graph nested_deaths_instance() {
  return make_graph(
      {{"m", "0"}, {"a", "1"}, {"s", "3"}, {"x5", "5"}, {"x9", "9"}, {"M", "10"}},
      {{"m", "a"}, {"a", "M"}, {"a", "s"}, {"s", "x5"}, {"s", "x9"}});
}

// Genus-2 pair differing only in the labels of the top doubled edge: the
// persistence cycle pairs force a lower bound of 1/2, and the order-preserving
// relabel witness realizes exactly 1/2, so both bounds are tight.
inline Graph tight_pair_f() {
  return make_graph(
      {{"m", "0"}, {"s1", "1"}, {"j1", "3/2"}, {"s2", "2"}, {"j2", "5/2"}, {"M", "4"}},
      {{"m", "s1"}, {"s1", "j1"}, {"s1", "j1"}, {"j1", "s2"}, {"s2", "j2"}, {"s2", "j2"}, {"j2", "M"}});
}
inline Graph tight_pair_g() {
  return make_graph(
      {{"m", "0"}, {"s1", "1"}, {"j1", "3/2"}, {"s2", "5/2"}, {"j2", "3"}, {"M", "4"}},
      {{"m", "s1"}, {"s1", "j1"}, {"s1", "j1"}, {"j1", "s2"}, {"s2", "j2"}, {"s2", "j2"}, {"j2", "M"}});
}

// Non-isomorphic pair with identical extended diagrams: three minima feed two
// joins in a different order, but every merge happens at the same labels.
// Distance bounds must come out strictly separated: lower 0, upper positive.
inline Graph equal_diagram_f() {
  return make_graph({{"v0", "0"},
                     {"v1", "1"},
                     {"v2", "2"},
                     {"v3", "3"},
                     {"v4", "4"},
                     {"v5", "5"},
                     {"v6", "6"},
                     {"v7", "7"}},
                    {{"v0", "v3"},
                     {"v2", "v3"},
                     {"v3", "v4"},
                     {"v1", "v4"},
                     {"v4", "v5"},
                     {"v5", "v6"},
                     {"v5", "v7"}});
}
inline Graph equal_diagram_g() {
  return make_graph({{"v0", "0"},
                     {"v1", "1"},
                     {"v2", "2"},
                     {"v3", "3"},
                     {"v4", "4"},
                     {"v5", "5"},
                     {"v6", "6"},
                     {"v7", "7"}},
                    {{"v1", "v3"},
                     {"v2", "v3"},
                     {"v3", "v4"},
                     {"v0", "v4"},
                     {"v4", "v5"},
                     {"v5", "v6"},
                     {"v5", "v7"}});
}

// Genus-2 graph whose two independent cycles interleave: the doubled edge
// s2 = j1 closes at 3 over 2, the outer cycle closes at 4 over 1.  A naive
// sorted pairing of closing and opening labels would report (3,1), (4,2)
// instead, so this pins down the exact cycle pairing.
inline Graph crossing_cycles_instance() {
  return make_graph(
      {{"m", "0"}, {"s1", "1"}, {"s2", "2"}, {"j1", "3"}, {"j2", "4"}, {"M", "5"}},
      {{"m", "s1"}, {"s1", "j2"}, {"s1", "s2"}, {"s2", "j1"}, {"s2", "j1"}, {"j1", "j2"}, {"j2", "M"}});
}

// Copy of g with every label shifted by t.
inline Graph shifted(const Graph& g, const Rational& t) {
  Graph out = g;
  for (const auto& [v, l] : g.labels()) out.set_label(v, l + t);
  return out;
}

// "R,K3,D" style fingerprint of a sequence.
inline std::string ops_signature(const DeformationSequence& seq) {
  std::string out;
  for (const EditOp& op : seq) {
    if (!out.empty()) out += ',';
    out += reebedit::op_type_name(op);
  }
  return out;
}

// Ops carry no operator==; byte-identical JSON is the equality used in tests.
inline std::string op_dump(const EditOp& op) { return reebedit::op_to_json(op).dump(); }

inline bool same_op(const EditOp& a, const EditOp& b) { return op_dump(a) == op_dump(b); }

inline bool same_sequence(const DeformationSequence& a, const DeformationSequence& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_op(a[i], b[i])) return false;
  return true;
}

// Deterministic mixed pool of valid random instances.
inline std::vector<Graph> random_pool(int count, int max_genus, int max_leaf_pairs,
                                      std::uint64_t seed0) {
  std::vector<Graph> out;
  for (int i = 0; static_cast<int>(out.size()) < count; ++i) {
    int genus = i % (max_genus + 1);
    int lp = (i / (max_genus + 1)) % (max_leaf_pairs + 1);
    out.push_back(reebedit::random_graph(genus, lp, Rational(0), Rational(10),
                                         seed0 + static_cast<std::uint64_t>(i)));
  }
  return out;
}

// A graph plus an all-deletion sequence that replays on it, built by running
// random births forward and inverting them.  Later births may subdivide the
// leaf edge of an earlier pair, so the deletion intervals genuinely nest.
struct DeathWorkload {
  Graph start;
  DeformationSequence deaths;
};

inline DeathWorkload random_death_workload(int genus, int births, std::uint64_t seed) {
  using reebedit::BirthOp;
  reebedit::Rng rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  Graph base = reebedit::random_graph(genus, 0, Rational(0), Rational(10), seed);
  DeformationSequence grow;
  Graph g = base;
  for (int b = 0; b < births; ++b) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      const Graph::Edge& e = g.edges()[rng.below(g.edge_count())];
      Rational elo = std::min(g.label(e.first), g.label(e.second));
      Rational ehi = std::max(g.label(e.first), g.label(e.second));
      std::vector<Rational> cuts{elo};
      for (const auto& [v, l] : g.labels())
        if (elo < l && l < ehi) cuts.push_back(l);
      cuts.push_back(ehi);
      std::sort(cuts.begin(), cuts.end());
      std::size_t piece = rng.below(cuts.size() - 1);
      const Rational &a = cuts[piece], &c = cuts[piece + 1];
      Rational t1 = a + (c - a) * Rational(1 + static_cast<long>(rng.below(511)), 1024);
      Rational t2 = a + (c - a) * Rational(513 + static_cast<long>(rng.below(510)), 1024);
      auto [id1, id2] = reebedit::fresh_id_pair(g);
      bool leaf_above = rng.coin();
      BirthOp op{e.first, e.second, id1, id2, leaf_above ? t1 : t2, leaf_above ? t2 : t1, id2};
      try {
        g = reebedit::apply(g, op);
        grow.push_back(op);
        break;
      } catch (const std::exception&) {
      }
    }
  }
  if (grow.empty()) throw std::runtime_error("random_death_workload: no birth could be placed");
  return {g, reebedit::invert_sequence(base, grow)};
}

// Random but structurally sane diagram on a quarter-integer grid; part sizes
// stay within the exhaustive matcher's limit.
inline reebedit::Diagram random_diagram(reebedit::Rng& rng) {
  auto val = [&](long lo, long hi) { return Rational(rng.range(lo, hi), 4); };
  reebedit::Diagram d;
  Rational base = val(0, 20);
  d.ess0 = {base, base + Rational(rng.range(1, 40), 4)};
  std::size_t n_ord = rng.below(4), n_rel = rng.below(4), n_ess1 = rng.below(4);
  for (std::size_t i = 0; i < n_ord; ++i) {
    Rational b = val(0, 40);
    d.ord0.push_back({b, b + Rational(rng.range(1, 16), 4)});
  }
  for (std::size_t i = 0; i < n_rel; ++i) {
    Rational death = val(0, 40);
    d.rel0.push_back({death + Rational(rng.range(1, 16), 4), death});
  }
  for (std::size_t i = 0; i < n_ess1; ++i) {
    Rational low = val(0, 40);
    d.ess1.push_back({low + Rational(rng.range(1, 16), 4), low});
  }
  std::sort(d.ord0.begin(), d.ord0.end());
  std::sort(d.rel0.begin(), d.rel0.end());
  std::sort(d.ess1.begin(), d.ess1.end());
  return d;
}

// Recompute the value a reported matching realizes and check that it covers
// every point of both diagrams exactly once.  Throws on malformed matchings.
inline Rational matching_value(const reebedit::Diagram& d1, const reebedit::Diagram& d2,
                               const std::vector<reebedit::MatchEntry>& matching) {
  using Part = std::vector<std::pair<Rational, Rational>>;
  auto part_of = [](const reebedit::Diagram& d, const std::string& name) -> Part {
    if (name == "ord0") return d.ord0;
    if (name == "rel_ord0_neg") return d.rel0;
    if (name == "ess0") return {d.ess0};
    if (name == "ess1") return d.ess1;
    throw std::runtime_error("matching_value: unknown part \"" + name + "\"");
  };
  std::map<std::string, std::set<int>> used_left, used_right;
  Rational worst(0);
  for (const reebedit::MatchEntry& e : matching) {
    Part p1 = part_of(d1, e.part), p2 = part_of(d2, e.part);
    Rational c(0);
    if (e.left >= 0 && !used_left[e.part].insert(e.left).second)
      throw std::runtime_error("matching_value: left point matched twice");
    if (e.right >= 0 && !used_right[e.part].insert(e.right).second)
      throw std::runtime_error("matching_value: right point matched twice");
    if (e.left >= 0 && e.right >= 0) {
      const auto& a = p1.at(static_cast<std::size_t>(e.left));
      const auto& b = p2.at(static_cast<std::size_t>(e.right));
      c = std::max(reebedit::abs_diff(a.first, b.first), reebedit::abs_diff(a.second, b.second));
    } else if (e.left >= 0) {
      const auto& a = p1.at(static_cast<std::size_t>(e.left));
      c = reebedit::abs_diff(a.first, a.second) / 2;
    } else if (e.right >= 0) {
      const auto& b = p2.at(static_cast<std::size_t>(e.right));
      c = reebedit::abs_diff(b.first, b.second) / 2;
    } else {
      throw std::runtime_error("matching_value: entry matches nothing");
    }
    if (c > worst) worst = c;
  }
  for (const char* name : {"ord0", "rel_ord0_neg", "ess0", "ess1"}) {
    if (used_left[name].size() != part_of(d1, name).size())
      throw std::runtime_error(std::string("matching_value: uncovered point on the left in ") + name);
    if (used_right[name].size() != part_of(d2, name).size())
      throw std::runtime_error(std::string("matching_value: uncovered point on the right in ") + name);
  }
  return worst;
}

}  // namespace testsupport
