// Acceptance gate for the full toolchain.  Each criterion prints exactly one
// line, "C<n> <name>: PASS" or "C<n> <name>: FAIL (reason)", and the process
// exit code is the number of failed criteria.  All randomness is seeded, so a
// run is reproducible byte for byte.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "oracle_persistence.hpp"
#include "reebedit/bottleneck.hpp"
#include "reebedit/canonical.hpp"
#include "reebedit/distance.hpp"
#include "reebedit/graph.hpp"
#include "reebedit/ops.hpp"
#include "reebedit/persistence.hpp"
#include "reebedit/random_graph.hpp"
#include "reebedit/rng.hpp"
#include "reebedit/stability.hpp"
#include "support.hpp"

using namespace testsupport;
using reebedit::Rational;
using reebedit::SearchParams;

namespace {

int failures = 0;

void expect(bool ok, const std::string& msg) {
  if (!ok) throw std::runtime_error(msg);
}

template <typename Fn>
void run(int n, const char* name, Fn body) {
  try {
    body();
    std::cout << "C" << n << " " << name << ": PASS\n";
  } catch (const std::exception& e) {
    ++failures;
    std::cout << "C" << n << " " << name << ": FAIL (" << e.what() << ")\n";
  }
}

// Every enumerated operation must apply cleanly, preserve validity and genus,
// and undo exactly (same graph, same cost) via its computed inverse.
void operation_soundness() {
  std::vector<Graph> pool = random_pool(48, 3, 3, 11);
  pool.push_back(k2_instance());
  pool.push_back(k1_up_instance());
  pool.push_back(three_cycle_instance());
  pool.push_back(two_minima_instance());
  pool.push_back(torus_with_bump());
  pool.push_back(genus2_noncanonical());
  pool.push_back(crossing_cycles_instance());
  pool.push_back(reebedit::apply(
      k2_instance(),
      reebedit::EditOp(reebedit::K2Op{"u1", "u2", rat("3"), rat("2"), "m1", "M1"})));

  std::map<std::string, int> seen;
  int total = 0;
  for (const Graph& g : pool) {
    Rational eps = reebedit::min_label_gap(g) / 4;
    std::vector<reebedit::EditOp> ops = reebedit::enumerate_applicable(g, reebedit::OpKinds::all(), eps);
    int used = 0;
    for (const reebedit::EditOp& op : ops) {
      if (used >= 40) break;
      ++used;
      ++total;
      ++seen[reebedit::op_type_name(op)];
      Graph h = reebedit::apply(g, op);
      expect(reebedit::validate(h).ok, "applying an enumerated op broke validity");
      expect(reebedit::genus(h) == reebedit::genus(g), "an op changed the genus");
      reebedit::EditOp inv = reebedit::inverse(g, op);
      expect(reebedit::apply(h, inv) == g, "inverse did not restore the start graph");
      expect(reebedit::cost(g, op) == reebedit::cost(h, inv), "inverse cost differs");
    }
  }
  expect(total >= 1000, "only " + std::to_string(total) + " op checks ran");
  for (const char* t : {"B", "D", "R", "K1", "K2", "K3"})
    expect(seen[t] >= 1, std::string("no coverage for op type ") + t);
}

// Canonicalization always lands on the canonical form: one minimum, one
// maximum, 2g+2 vertices, every cycle a doubled edge, replayable sequence.
void canonical_form() {
  int checked = 0;
  for (int genus = 0; genus <= 4; ++genus) {
    for (int lp = 0; lp <= 6; ++lp) {
      for (int s = 0; s < 6; ++s) {
        Graph g = reebedit::random_graph(genus, lp, Rational(0), Rational(10),
                                         500 + 100 * genus + 10 * lp + s);
        reebedit::CanonicalizationResult res = reebedit::canonicalize(g);
        expect(reebedit::is_canonical(res.canonical_graph), "result is not canonical");
        expect(reebedit::count_class(res.canonical_graph, reebedit::VertexClass::Minimum) == 1,
               "canonical form has more than one minimum");
        expect(reebedit::count_class(res.canonical_graph, reebedit::VertexClass::Maximum) == 1,
               "canonical form has more than one maximum");
        expect(res.canonical_graph.vertex_count() == static_cast<std::size_t>(2 * genus + 2),
               "canonical form has the wrong vertex count");
        expect(res.cycle_rounds <= genus, "cycle reduction took too many rounds");
        expect(reebedit::replay(g, res.sequence) == res.canonical_graph,
               "reduction sequence does not replay to the canonical graph");
        ++checked;
      }
    }
  }
  expect(checked >= 200, "only " + std::to_string(checked) + " graphs checked");
}

// Any two graphs of equal genus are joined by a replayable sequence.
void connectivity() {
  int done = 0;
  for (int i = 0; i < 100; ++i) {
    int genus = i % 4;
    Graph g1 = reebedit::random_graph(genus, i % 3, Rational(0), Rational(10), 7000 + 2 * i);
    Graph g2 = reebedit::random_graph(genus, (i + 1) % 3, Rational(0), Rational(10), 7001 + 2 * i);
    reebedit::DeformationSequence seq = reebedit::connect(g1, g2);
    expect(reebedit::are_isomorphic(reebedit::replay(g1, seq), g2).has_value(),
           "connect sequence does not reach the target");
    ++done;
  }
  expect(done >= 100, "not enough pairs");
}

// A batch of deletions rewritten with contraction radius eps costs at most
// max single deletion + (n-1)*eps, and never less than max - eps.
void deletion_rewrite_bound() {
  int done = 0;
  for (int i = 0; i < 100; ++i) {
    DeathWorkload w = random_death_workload(i % 3, 2 + i % 4, 8000 + i);
    Rational max_single(0), min_half;
    bool first = true;
    for (const auto& op : w.deaths) {
      const auto& d = std::get<reebedit::DeathOp>(op);
      Rational half = reebedit::abs_diff(w.start.label(d.u1), w.start.label(d.u2)) / 2;
      if (half > max_single) max_single = half;
      if (first || half < min_half) min_half = half;
      first = false;
    }
    Rational eps = min_half / 2;
    reebedit::DeformationSequence rw = reebedit::rewrite_deletions(w.start, w.deaths, eps);
    Rational total = reebedit::total_cost(w.start, rw);
    Rational n(static_cast<long>(w.deaths.size()));
    expect(max_single - eps <= total, "rewritten cost fell below the lower envelope");
    expect(total <= max_single + (n - 1) * eps, "rewritten cost exceeds the bound");
    expect(reebedit::replay(w.start, rw) == reebedit::replay(w.start, w.deaths),
           "rewritten sequence reaches a different graph");
    ++done;
  }
  expect(done >= 100, "not enough workloads");

  // pinned instance: three unit bumps collapse for 1.02 instead of 3
  Graph tb = three_bump_instance();
  reebedit::DeformationSequence deaths = reebedit::minimalize(tb).ops;
  expect(reebedit::total_cost(tb, deaths) == Rational(3), "naive cost changed");
  reebedit::DeformationSequence rw = reebedit::rewrite_deletions(tb, deaths, rat("1/100"));
  expect(reebedit::total_cost(tb, rw) == rat("51/50"), "rewritten cost changed");
}

// Perturbing labels by at most delta keeps the computed upper bound <= delta.
void stability() {
  int rows_total = 0;
  for (int genus = 0; genus <= 3; ++genus) {
    Graph g = reebedit::random_graph(genus, 1, Rational(0), Rational(10), 77 + genus);
    Rational delta = reebedit::min_label_gap(g) / 100;
    std::vector<reebedit::StabilityRow> rows = reebedit::stability_experiment(
        g, delta, 25, 99, SearchParams{.beam_width = 2, .max_depth = 2});
    expect(rows.size() == 25, "wrong number of rows");
    for (const reebedit::StabilityRow& r : rows) {
      expect(r.upper <= delta, "upper bound escaped the perturbation radius");
      expect(r.lower <= r.upper, "lower bound above upper bound");
    }
    rows_total += static_cast<int>(rows.size());
  }
  expect(rows_total == 100, "expected 100 rows in total");
}

// The fast bottleneck solver agrees with brute-force matching enumeration,
// and graph diagrams agree with an independent boundary-matrix reduction.
void bottleneck_correctness() {
  reebedit::Rng rng(2024);
  int pairs = 0;
  for (int i = 0; i < 500; ++i) {
    reebedit::Diagram d1 = random_diagram(rng);
    reebedit::Diagram d2 = random_diagram(rng);
    reebedit::BottleneckValue fast = reebedit::bottleneck(d1, d2);
    reebedit::BottleneckValue slow = reebedit::bottleneck_oracle(d1, d2);
    expect(fast.infinite == slow.infinite, "finiteness disagrees with the oracle");
    if (!fast.infinite) {
      expect(fast.value == slow.value, "value disagrees with the oracle");
      expect(matching_value(d1, d2, fast.matching) == fast.value,
             "matching does not certify the reported value");
    }
    ++pairs;
  }
  expect(pairs >= 500, "not enough diagram pairs");

  int graphs = 0;
  const int caps[5] = {4, 3, 2, 1, 0};
  for (int genus = 0; genus <= 4; ++genus) {
    for (int lp = 0; lp <= caps[genus]; ++lp) {
      for (int s = 0; s < 7; ++s) {
        Graph g = reebedit::random_graph(genus, lp, Rational(0), Rational(10),
                                         3000 + 100 * genus + 10 * lp + s);
        expect(reebedit::extended_diagram(g) == diagram_by_matrix(g),
               "diagram disagrees with the matrix oracle");
        ++graphs;
      }
    }
  }
  expect(graphs >= 100, "only " + std::to_string(graphs) + " graphs checked");
}

// Reports keep lower <= upper everywhere; the pinned genus-2 pair is certified
// exactly at 1/2; the equal-diagram pair shows the lower bound is not tight.
void sandwich_and_tightness() {
  reebedit::DistanceReport tight = reebedit::distance_report(tight_pair_f(), tight_pair_g());
  expect(!tight.lower_infinite && tight.upper.has_value(), "tight pair lost a bound");
  expect(tight.lower == rat("1/2"), "tight pair lower bound moved");
  expect(*tight.upper == rat("1/2"), "tight pair upper bound moved");

  reebedit::DistanceReport gap = reebedit::distance_report(
      equal_diagram_f(), equal_diagram_g(), SearchParams{.beam_width = 2, .max_depth = 2});
  expect(gap.lower == Rational(0), "equal diagrams must give a zero lower bound");
  expect(gap.upper.has_value() && *gap.upper > 0, "distinct graphs need a positive upper bound");
  expect(!reebedit::are_isomorphic(equal_diagram_f(), equal_diagram_g()).has_value(),
         "the equal-diagram pair became isomorphic");

  for (int i = 0; i < 20; ++i) {
    int genus = i % 3;
    Graph g1 = reebedit::random_graph(genus, i % 2, Rational(0), Rational(10), 8100 + 2 * i);
    Graph g2 = reebedit::random_graph(genus, (i / 2) % 2, Rational(0), Rational(10), 8101 + 2 * i);
    reebedit::DistanceReport rep =
        reebedit::distance_report(g1, g2, SearchParams{.beam_width = 2, .max_depth = 2});
    expect(!rep.lower_infinite && rep.upper.has_value(), "same-genus pair lost a bound");
    expect(rep.lower <= *rep.upper, "lower bound exceeds upper bound");
    expect(reebedit::are_isomorphic(reebedit::replay(g1, rep.witness), g2).has_value(),
           "witness does not reach the target");
  }
}

// Distance of a graph to itself is zero, and the constructive upper bound is
// symmetric in its arguments.
void pseudo_metric_axioms() {
  for (const Graph& g : {sphere(), canonical_torus(), torus_with_bump(), k2_instance(),
                         three_cycle_instance(), genus2_noncanonical(), tight_pair_f(),
                         equal_diagram_g()}) {
    reebedit::DistanceReport rep = reebedit::distance_report(g, g);
    expect(!rep.lower_infinite && rep.lower == 0, "self distance lower bound is not zero");
    expect(rep.upper.has_value() && *rep.upper == 0, "self distance upper bound is not zero");
  }
  for (int i = 0; i < 15; ++i) {
    int genus = i % 4;
    Graph g1 = reebedit::random_graph(genus, i % 3, Rational(0), Rational(10), 8200 + 2 * i);
    Graph g2 = reebedit::random_graph(genus, (i + 2) % 3, Rational(0), Rational(10), 8201 + 2 * i);
    Rational eps =
        std::min(reebedit::min_label_gap(g1), reebedit::min_label_gap(g2)) / 1000;
    reebedit::UpperBoundResult u12 = reebedit::upper_bound_canonical(g1, g2, eps);
    reebedit::UpperBoundResult u21 = reebedit::upper_bound_canonical(g2, g1, eps);
    expect(u12.cost == u21.cost, "constructive bound is not symmetric");
  }
}

}  // namespace

int main() {
  run(2, "operation-soundness", operation_soundness);
  run(3, "canonical-form", canonical_form);
  run(4, "connectivity", connectivity);
  run(5, "deletion-rewrite-bound", deletion_rewrite_bound);
  run(6, "stability", stability);
  run(7, "bottleneck-correctness", bottleneck_correctness);
  run(8, "sandwich-and-tightness", sandwich_and_tightness);
  run(9, "pseudo-metric-axioms", pseudo_metric_axioms);
  return failures;
}
