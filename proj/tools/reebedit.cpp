// Command-line front end: validate/inspect graph files, generate random
// instances, canonicalize, connect two graphs, compute distance reports,
// persistence diagrams, bottleneck distances, and run the perturbation
// stability experiment.
//
// Exit codes: 0 success, 1 domain error (bad file, invalid graph, genus
// mismatch), 2 usage error.  All output is byte-deterministic for fixed
// inputs and seeds.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "reebedit/canonical.hpp"
#include "reebedit/distance.hpp"
#include "reebedit/graph.hpp"
#include "reebedit/json_io.hpp"
#include "reebedit/random_graph.hpp"
#include "reebedit/stability.hpp"

namespace {

using reebedit::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw reebedit::parse_error("cannot open \"" + path + "\"");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw reebedit::parse_error("\"" + path + "\": " + e.what());
  }
}

reebedit::Graph load_graph(const std::string& path) {
  return reebedit::graph_from_json(load_json(path));
}

reebedit::Graph load_valid_graph(const std::string& path) {
  reebedit::Graph g = load_graph(path);
  reebedit::require_valid(g, ("\"" + path + "\"").c_str());
  return g;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw reebedit::parse_error("cannot write \"" + path + "\"");
  out << content;
}

struct Output {
  bool pretty = false;
  void emit(const json& j) const { std::cout << (pretty ? j.dump(2) : j.dump()) << "\n"; }
  std::string render(const json& j) const { return (pretty ? j.dump(2) : j.dump()) + "\n"; }
};

json validation_to_json(const reebedit::Graph& g, const reebedit::ValidationReport& rep) {
  json issues = json::array();
  for (const reebedit::Violation& v : rep.violations)
    issues.push_back(json{{"rule", v.rule}, {"subject", v.subject}, {"message", v.message}});
  json out{{"ok", rep.ok},
           {"vertices", g.vertex_count()},
           {"edges", g.edge_count()},
           {"violations", issues}};
  if (rep.ok) {
    out["genus"] = reebedit::genus(g);
    out["minima"] = reebedit::count_class(g, reebedit::VertexClass::Minimum);
    out["maxima"] = reebedit::count_class(g, reebedit::VertexClass::Maximum);
  }
  return out;
}

json params_to_json(const reebedit::SearchParams& p) {
  return json{{"beam_width", p.beam_width},
              {"max_depth", p.max_depth},
              {"eps_grid", p.eps_grid ? json(reebedit::render_rational(*p.eps_grid)) : json()},
              {"seed", p.seed}};
}

struct ParamFlags {
  int beam = 32;
  int depth = 12;
  std::string eps;
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--beam", beam, "beam width for the search")->check(CLI::PositiveNumber);
    cmd->add_option("--depth", depth, "maximum search depth")->check(CLI::PositiveNumber);
    cmd->add_option("--eps", eps,
                    "label grid step (rational); default min label gap / 1000");
    cmd->add_option("--seed", seed, "search seed (recorded in the report)");
  }
  reebedit::SearchParams resolve() const {
    reebedit::SearchParams p;
    p.beam_width = beam;
    p.max_depth = depth;
    if (!eps.empty()) p.eps_grid = reebedit::parse_rational(eps);
    p.seed = seed;
    return p;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edit calculus on labeled level graphs of closed orientable surfaces"};
  app.require_subcommand(1);
  Output out;
  app.add_flag("--pretty", out.pretty, "indent JSON output");

  std::string file_a, file_b, out_file, seq_out, witness_out;

  CLI::App* validate = app.add_subcommand("validate", "check a graph file against all rules");
  validate->add_option("file", file_a, "graph JSON file")->required();

  CLI::App* info = app.add_subcommand("info", "summary of a valid graph");
  info->add_option("file", file_a, "graph JSON file")->required();

  CLI::App* gen = app.add_subcommand("gen", "generate a random valid graph");
  int gen_genus = 0, gen_leaf_pairs = 0;
  std::string gen_lo = "0", gen_hi = "1";
  std::uint64_t gen_seed = 0;
  gen->add_option("--genus", gen_genus, "genus of the generated graph")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--leaf-pairs", gen_leaf_pairs, "extra leaf pairs to grow")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--lo", gen_lo, "lower end of the label range (rational)");
  gen->add_option("--hi", gen_hi, "upper end of the label range (rational)");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("-o,--out", out_file, "write the graph here instead of stdout");

  CLI::App* canon = app.add_subcommand("canon", "canonicalize a graph");
  canon->add_option("file", file_a, "graph JSON file")->required();
  canon->add_option("--seq-out", seq_out, "write the replayable reduction sequence here");

  CLI::App* connect = app.add_subcommand("connect", "deformation sequence between two graphs");
  connect->add_option("g1", file_a, "source graph JSON file")->required();
  connect->add_option("g2", file_b, "target graph JSON file")->required();
  connect->add_option("-o,--out", out_file, "write the sequence here instead of stdout");

  CLI::App* dist = app.add_subcommand("dist", "certified distance bounds for two graphs");
  dist->add_option("g1", file_a, "first graph JSON file")->required();
  dist->add_option("g2", file_b, "second graph JSON file")->required();
  ParamFlags dist_params;
  dist_params.attach(dist);
  dist->add_option("--witness-out", witness_out, "write the witness sequence here");

  CLI::App* pd = app.add_subcommand("pd", "extended persistence diagram of a graph");
  pd->add_option("file", file_a, "graph JSON file")->required();

  CLI::App* bn = app.add_subcommand("bottleneck", "bottleneck distance of two diagram files");
  bn->add_option("d1", file_a, "first diagram JSON file")->required();
  bn->add_option("d2", file_b, "second diagram JSON file")->required();

  CLI::App* stab = app.add_subcommand("stability-exp", "perturbation experiment (CSV output)");
  stab->add_option("file", file_a, "base graph JSON file")->required();
  std::string stab_delta;
  int stab_trials = 100;
  std::uint64_t stab_seed = 0;
  ParamFlags stab_params;
  stab_params.beam = 2;
  stab_params.depth = 2;
  stab->add_option("--delta", stab_delta, "perturbation radius (rational)")->required();
  stab->add_option("--trials", stab_trials, "number of trials")->check(CLI::PositiveNumber);
  stab->add_option("--seed", stab_seed, "experiment seed");
  stab->add_option("--beam", stab_params.beam, "beam width for each report")
      ->check(CLI::PositiveNumber);
  stab->add_option("--depth", stab_params.depth, "search depth for each report")
      ->check(CLI::PositiveNumber);
  stab->add_option("--eps", stab_params.eps, "label grid step for each report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*validate) {
      reebedit::Graph g = load_graph(file_a);
      reebedit::ValidationReport rep = reebedit::validate(g);
      out.emit(validation_to_json(g, rep));
      if (!rep.ok) {
        std::cerr << "invalid graph: " << rep.violations.front().message << "\n";
        return 1;
      }
    } else if (*info) {
      reebedit::Graph g = load_valid_graph(file_a);
      std::vector<reebedit::VertexId> order = g.vertices_by_label();
      out.emit(json{{"vertices", g.vertex_count()},
                    {"edges", g.edge_count()},
                    {"genus", reebedit::genus(g)},
                    {"minima", reebedit::count_class(g, reebedit::VertexClass::Minimum)},
                    {"maxima", reebedit::count_class(g, reebedit::VertexClass::Maximum)},
                    {"minimal", reebedit::is_minimal(g)},
                    {"canonical", reebedit::is_canonical(g)},
                    {"min_label", reebedit::render_rational(g.label(order.front()))},
                    {"max_label", reebedit::render_rational(g.label(order.back()))},
                    {"min_gap", reebedit::render_rational(reebedit::min_label_gap(g))}});
    } else if (*gen) {
      reebedit::Graph g =
          reebedit::random_graph(gen_genus, gen_leaf_pairs, reebedit::parse_rational(gen_lo),
                                 reebedit::parse_rational(gen_hi), gen_seed);
      json j = reebedit::graph_to_json(g);
      if (out_file.empty()) out.emit(j);
      else write_file(out_file, out.render(j));
    } else if (*canon) {
      reebedit::Graph g = load_valid_graph(file_a);
      reebedit::CanonicalizationResult res = reebedit::canonicalize(g);
      if (!seq_out.empty())
        write_file(seq_out, out.render(reebedit::sequence_to_json(g, res.sequence)));
      out.emit(json{{"canonical", reebedit::graph_to_json(res.canonical_graph)},
                    {"cycle_rounds", res.cycle_rounds},
                    {"ops", res.sequence.size()},
                    {"total_cost",
                     reebedit::render_rational(reebedit::total_cost(g, res.sequence))}});
    } else if (*connect) {
      reebedit::Graph g1 = load_valid_graph(file_a);
      reebedit::Graph g2 = load_valid_graph(file_b);
      reebedit::DeformationSequence seq = reebedit::connect(g1, g2);
      json j = reebedit::sequence_to_json(g1, seq);
      if (out_file.empty()) out.emit(j);
      else write_file(out_file, out.render(j));
    } else if (*dist) {
      reebedit::Graph g1 = load_valid_graph(file_a);
      reebedit::Graph g2 = load_valid_graph(file_b);
      reebedit::DistanceReport rep =
          reebedit::distance_report(g1, g2, dist_params.resolve());
      json j{{"lower", rep.lower_infinite ? std::string("inf")
                                          : reebedit::render_rational(rep.lower)},
             {"lower_provenance", rep.lower_provenance},
             {"upper", rep.upper ? json(reebedit::render_rational(*rep.upper)) : json()},
             {"upper_provenance", rep.upper_provenance},
             {"genus", json::array({rep.genus1, rep.genus2})},
             {"params", params_to_json(rep.params)},
             {"witness", json()}};
      if (!witness_out.empty() && rep.upper) {
        write_file(witness_out, out.render(reebedit::sequence_to_json(g1, rep.witness)));
        j["witness"] = witness_out;
      }
      out.emit(j);
    } else if (*pd) {
      reebedit::Graph g = load_valid_graph(file_a);
      out.emit(reebedit::diagram_to_json(reebedit::extended_diagram(g)));
    } else if (*bn) {
      reebedit::Diagram d1 = reebedit::diagram_from_json(load_json(file_a));
      reebedit::Diagram d2 = reebedit::diagram_from_json(load_json(file_b));
      reebedit::BottleneckValue bv = reebedit::bottleneck(d1, d2);
      json matching = json::array();
      for (const reebedit::MatchEntry& m : bv.matching)
        matching.push_back(json{{"part", m.part},
                                {"left", m.left < 0 ? json() : json(m.left)},
                                {"right", m.right < 0 ? json() : json(m.right)}});
      out.emit(json{{"infinite", bv.infinite},
                    {"value", bv.infinite ? std::string("inf")
                                          : reebedit::render_rational(bv.value)},
                    {"matching", matching}});
    } else if (*stab) {
      reebedit::Graph g = load_valid_graph(file_a);
      std::vector<reebedit::StabilityRow> rows =
          reebedit::stability_experiment(g, reebedit::parse_rational(stab_delta), stab_trials,
                                         stab_seed, stab_params.resolve());
      std::cout << reebedit::stability_csv(rows);
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
