#pragma once
// JSON wire formats.  Labels travel as strings (decimal when the denominator
// is 2^a*5^b, "p/q" otherwise) so round trips are exact.  Object keys come out
// sorted (nlohmann's default map), so serialization is byte-deterministic.

#include <json.hpp>

#include "reebedit/graph.hpp"
#include "reebedit/ops.hpp"
#include "reebedit/persistence.hpp"

namespace reebedit {

using json = nlohmann::json;

inline json graph_to_json(const Graph& g) {
  json vertices = json::array();
  for (const auto& [v, l] : g.labels())
    vertices.push_back(json{{"id", v}, {"label", render_rational(l)}});
  json edges = json::array();
  for (const Graph::Edge& e : g.edges()) edges.push_back(json::array({e.first, e.second}));
  return json{{"vertices", vertices}, {"edges", edges}};
}

inline Graph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw parse_error("graph: expected an object with \"vertices\" and \"edges\"");
  if (!j.at("vertices").is_array() || !j.at("edges").is_array())
    throw parse_error("graph: \"vertices\" and \"edges\" must be arrays");
  Graph g;
  std::map<Rational, VertexId> seen_labels;
  for (const json& jv : j.at("vertices")) {
    if (!jv.is_object() || !jv.contains("id") || !jv.contains("label") ||
        !jv.at("id").is_string() || !jv.at("label").is_string())
      throw parse_error("graph: each vertex needs string \"id\" and \"label\"");
    VertexId id = jv.at("id").get<std::string>();
    Rational label;
    try {
      label = parse_rational(jv.at("label").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw parse_error(std::string("graph: vertex \"") + id + "\": " + e.what());
    }
    auto [it, fresh] = seen_labels.emplace(label, id);
    if (!fresh)
      throw parse_error("graph: label " + render_rational(label) + " used by both \"" +
                        it->second + "\" and \"" + id + "\"");
    g.add_vertex(id, label);
  }
  for (const json& je : j.at("edges")) {
    if (!je.is_array() || je.size() != 2 || !je[0].is_string() || !je[1].is_string())
      throw parse_error("graph: each edge must be a two-element array of vertex ids");
    VertexId a = je[0].get<std::string>(), b = je[1].get<std::string>();
    try {
      g.add_edge(a, b);
    } catch (const unknown_vertex_error& e) {
      throw parse_error(std::string("graph: edge endpoint: ") + e.what());
    }
  }
  return g;
}

inline json op_to_json(const EditOp& op) {
  struct Visitor {
    json operator()(const BirthOp& b) {
      return json{{"type", "B"},
                  {"edge", json::array({b.v1, b.v2})},
                  {"new_ids", json::array({b.u1, b.u2})},
                  {"new_labels", json::array({render_rational(b.l1), render_rational(b.l2)})},
                  {"leaf", b.leaf}};
    }
    json operator()(const DeathOp& d) {
      return json{{"type", "D"}, {"u1", d.u1}, {"u2", d.u2}};
    }
    json operator()(const RelabelOp& r) {
      json labels = json::object();
      for (const auto& [v, l] : r.new_labels) labels[v] = render_rational(l);
      return json{{"type", "R"}, {"new_labels", labels}};
    }
    json operator()(const K1Op& k) {
      json out{{"type", "K1"},
               {"u1", k.u1},
               {"u2", k.u2},
               {"new_labels", json::array({render_rational(k.l1), render_rational(k.l2)})},
               {"orientation", k.up ? "up" : "down"}};
      if (k.moved) out["moved"] = *k.moved;
      return out;
    }
    json operator()(const K2Op& k) {
      json out{{"type", "K2"},
               {"u1", k.u1},
               {"u2", k.u2},
               {"new_labels", json::array({render_rational(k.l1), render_rational(k.l2)})}};
      if (k.moved_low) out["moved_low"] = *k.moved_low;
      if (k.moved_high) out["moved_high"] = *k.moved_high;
      return out;
    }
    json operator()(const K3Op& k) {
      return json{{"type", "K3"},
                  {"u1", k.u1},
                  {"u2", k.u2},
                  {"new_labels", json::array({render_rational(k.l1), render_rational(k.l2)})}};
    }
  };
  return std::visit(Visitor{}, op);
}

namespace detail {

inline std::string json_string_field(const json& j, const char* field, const char* ctx) {
  if (!j.contains(field) || !j.at(field).is_string())
    throw parse_error(std::string(ctx) + ": missing string field \"" + field + "\"");
  return j.at(field).get<std::string>();
}

inline std::pair<Rational, Rational> json_label_pair(const json& j, const char* ctx) {
  if (!j.contains("new_labels") || !j.at("new_labels").is_array() ||
      j.at("new_labels").size() != 2)
    throw parse_error(std::string(ctx) + ": \"new_labels\" must be a two-element array");
  try {
    return {parse_rational(j.at("new_labels")[0].get<std::string>()),
            parse_rational(j.at("new_labels")[1].get<std::string>())};
  } catch (const std::exception& e) {
    throw parse_error(std::string(ctx) + ": " + e.what());
  }
}

}  // namespace detail

inline EditOp op_from_json(const json& j) {
  if (!j.is_object()) throw parse_error("op: expected an object");
  std::string type = detail::json_string_field(j, "type", "op");
  if (type == "B") {
    if (!j.contains("edge") || !j.at("edge").is_array() || j.at("edge").size() != 2 ||
        !j.contains("new_ids") || !j.at("new_ids").is_array() || j.at("new_ids").size() != 2)
      throw parse_error("B: need \"edge\" and \"new_ids\" as two-element arrays");
    auto [l1, l2] = detail::json_label_pair(j, "B");
    return BirthOp{j.at("edge")[0].get<std::string>(), j.at("edge")[1].get<std::string>(),
                   j.at("new_ids")[0].get<std::string>(), j.at("new_ids")[1].get<std::string>(),
                   l1, l2, detail::json_string_field(j, "leaf", "B")};
  }
  if (type == "D")
    return DeathOp{detail::json_string_field(j, "u1", "D"),
                   detail::json_string_field(j, "u2", "D")};
  if (type == "R") {
    if (!j.contains("new_labels") || !j.at("new_labels").is_object())
      throw parse_error("R: \"new_labels\" must be an object");
    RelabelOp op;
    for (const auto& [v, l] : j.at("new_labels").items()) {
      if (!l.is_string()) throw parse_error("R: labels must be strings");
      try {
        op.new_labels.emplace(v, parse_rational(l.get<std::string>()));
      } catch (const std::exception& e) {
        throw parse_error(std::string("R: ") + e.what());
      }
    }
    return op;
  }
  if (type == "K1") {
    auto [l1, l2] = detail::json_label_pair(j, "K1");
    std::string orient = detail::json_string_field(j, "orientation", "K1");
    if (orient != "up" && orient != "down")
      throw parse_error("K1: orientation must be \"up\" or \"down\"");
    K1Op op{detail::json_string_field(j, "u1", "K1"), detail::json_string_field(j, "u2", "K1"),
            l1, l2, orient == "up", std::nullopt};
    if (j.contains("moved")) op.moved = detail::json_string_field(j, "moved", "K1");
    return op;
  }
  if (type == "K2") {
    auto [l1, l2] = detail::json_label_pair(j, "K2");
    K2Op op{detail::json_string_field(j, "u1", "K2"), detail::json_string_field(j, "u2", "K2"),
            l1, l2, std::nullopt, std::nullopt};
    if (j.contains("moved_low")) op.moved_low = detail::json_string_field(j, "moved_low", "K2");
    if (j.contains("moved_high"))
      op.moved_high = detail::json_string_field(j, "moved_high", "K2");
    return op;
  }
  if (type == "K3") {
    auto [l1, l2] = detail::json_label_pair(j, "K3");
    return K3Op{detail::json_string_field(j, "u1", "K3"),
                detail::json_string_field(j, "u2", "K3"), l1, l2};
  }
  throw parse_error("op: unknown type \"" + type + "\"");
}

inline json sequence_to_json(const Graph& start, const DeformationSequence& ops) {
  json jops = json::array();
  for (const EditOp& op : ops) jops.push_back(op_to_json(op));
  return json{{"start_graph", graph_to_json(start)}, {"ops", jops}};
}

inline std::pair<Graph, DeformationSequence> sequence_from_json(const json& j) {
  if (!j.is_object() || !j.contains("start_graph") || !j.contains("ops") ||
      !j.at("ops").is_array())
    throw parse_error("sequence: expected an object with \"start_graph\" and \"ops\"");
  Graph start = graph_from_json(j.at("start_graph"));
  DeformationSequence ops;
  for (const json& jop : j.at("ops")) ops.push_back(op_from_json(jop));
  return {start, ops};
}

inline json diagram_to_json(const Diagram& d) {
  auto pairs = [](const std::vector<std::pair<Rational, Rational>>& v) {
    json out = json::array();
    for (const auto& [a, b] : v)
      out.push_back(json::array({render_rational(a), render_rational(b)}));
    return out;
  };
  return json{{"ord0", pairs(d.ord0)},
              {"rel_ord0_neg", pairs(d.rel0)},
              {"ess0", json::array({render_rational(d.ess0.first), render_rational(d.ess0.second)})},
              {"ess1", pairs(d.ess1)}};
}

inline Diagram diagram_from_json(const json& j) {
  auto pairs = [](const json& arr, const char* name) {
    if (!arr.is_array()) throw parse_error(std::string("diagram: \"") + name + "\" must be an array");
    std::vector<std::pair<Rational, Rational>> out;
    for (const json& p : arr) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
        throw parse_error(std::string("diagram: each point in \"") + name +
                          "\" must be a two-element array of label strings");
      out.push_back({parse_rational(p[0].get<std::string>()),
                     parse_rational(p[1].get<std::string>())});
    }
    return out;
  };
  if (!j.is_object() || !j.contains("ord0") || !j.contains("rel_ord0_neg") ||
      !j.contains("ess0") || !j.contains("ess1"))
    throw parse_error("diagram: expected ord0, rel_ord0_neg, ess0, ess1");
  Diagram d;
  d.ord0 = pairs(j.at("ord0"), "ord0");
  d.rel0 = pairs(j.at("rel_ord0_neg"), "rel_ord0_neg");
  d.ess1 = pairs(j.at("ess1"), "ess1");
  const json& e0 = j.at("ess0");
  if (!e0.is_array() || e0.size() != 2 || !e0[0].is_string() || !e0[1].is_string())
    throw parse_error("diagram: \"ess0\" must be a two-element array of label strings");
  d.ess0 = {parse_rational(e0[0].get<std::string>()), parse_rational(e0[1].get<std::string>())};
  return d;
}

}  // namespace reebedit
