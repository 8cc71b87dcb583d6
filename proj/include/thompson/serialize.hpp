#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "thompson/closed_diagram.hpp"
#include "thompson/error.hpp"
#include "thompson/port_graph.hpp"
#include "thompson/strand_diagram.hpp"

namespace thompson {

namespace detail {

inline nlohmann::json endpoint_json(const Endpoint& p, const std::vector<VertexId>& vmap) {
  switch (p.kind) {
    case Endpoint::Kind::Source: return {{"source", p.index}};
    case Endpoint::Kind::Sink: return {{"sink", p.index}};
    case Endpoint::Kind::Vertex: break;
  }
  return {{"vertex", vmap[p.index]}, {"port", p.port}};
}

// Live vertices get dense ids in storage order.
inline std::vector<VertexId> dense_ids(const PortGraph& g) {
  std::vector<VertexId> vmap(g.vertices.size(), kNone);
  VertexId next = 0;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (g.vertices[v].alive) vmap[v] = next++;
  }
  return vmap;
}

inline nlohmann::json graph_json(const PortGraph& g, const std::vector<VertexId>& vmap) {
  nlohmann::json out;
  out["vertices"] = nlohmann::json::array();
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (!g.vertices[v].alive) continue;
    out["vertices"].push_back(
        {{"id", vmap[v]}, {"kind", g.vertices[v].kind == VertexKind::Split ? "split" : "merge"}});
  }
  out["edges"] = nlohmann::json::array();
  return out;
}

inline Endpoint endpoint_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.size() == 0) throw Error(ErrorCode::ParseError, "endpoint must be an object");
  if (j.contains("source")) return Endpoint::source(j.at("source").get<std::int32_t>());
  if (j.contains("sink")) return Endpoint::sink(j.at("sink").get<std::int32_t>());
  if (j.contains("vertex")) {
    const int port = j.value("port", 0);
    if (port < 0 || port > 1) throw Error(ErrorCode::ParseError, "port must be 0 or 1");
    return Endpoint::at(j.at("vertex").get<VertexId>(), port);
  }
  throw Error(ErrorCode::ParseError, "endpoint needs source, sink or vertex");
}

inline std::string dot_node(const Endpoint& p, const std::vector<VertexId>& vmap) {
  switch (p.kind) {
    case Endpoint::Kind::Source: return "s" + std::to_string(p.index);
    case Endpoint::Kind::Sink: return "t" + std::to_string(p.index);
    case Endpoint::Kind::Vertex: break;
  }
  return "v" + std::to_string(vmap[p.index]);
}

}  // namespace detail

inline nlohmann::json to_json(const StrandDiagram& d) {
  const auto vmap = detail::dense_ids(d);
  nlohmann::json out = detail::graph_json(d, vmap);
  out["m"] = d.m();
  out["n"] = d.n();
  for (const Edge& e : d.edges) {
    if (!e.alive) continue;
    out["edges"].push_back({{"from", detail::endpoint_json(e.from, vmap)}, {"to", detail::endpoint_json(e.to, vmap)}});
  }
  return out;
}

/// Per-edge weights depend on the surface: crossingWeight always,
/// longitudeWeight on the torus, c on abstract (V) closures.
inline nlohmann::json to_json(const ClosedDiagram& g) {
  const auto vmap = detail::dense_ids(g);
  nlohmann::json out = detail::graph_json(g, vmap);
  out["surface"] = std::string(to_string(g.surface));
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    if (!e.alive) continue;
    nlohmann::json j{{"from", detail::endpoint_json(e.from, vmap)},
                     {"to", detail::endpoint_json(e.to, vmap)},
                     {"crossingWeight", e.w.c}};
    if (g.surface == Surface::Torus) j["longitudeWeight"] = e.w.lon;
    if (g.surface == Surface::Abstract) j["c"] = e.w.c;
    out["edges"].push_back(std::move(j));
  }
  out["freeLoops"] = g.free_loops.size();
  out["freeLoopWeights"] = nlohmann::json::array();
  for (const FreeLoop& l : g.free_loops) {
    nlohmann::json j{{"crossingWeight", l.w.c}};
    if (g.surface == Surface::Torus) j["longitudeWeight"] = l.w.lon;
    out["freeLoopWeights"].push_back(std::move(j));
  }
  return out;
}

/// Inverse of to_json(StrandDiagram). Weights are not part of the format.
inline StrandDiagram strand_diagram_from_json(const nlohmann::json& j) {
  StrandDiagram d;
  try {
    const auto& vs = j.at("vertices");
    std::vector<VertexKind> kinds(vs.size(), VertexKind::Split);
    std::vector<char> seen(vs.size(), 0);
    for (const auto& v : vs) {
      const auto id = v.at("id").get<std::int64_t>();
      if (id < 0 || id >= static_cast<std::int64_t>(vs.size()) || seen[id]) {
        throw Error(ErrorCode::ParseError, "vertex ids must be 0..n-1 without repeats");
      }
      seen[id] = 1;
      const auto kind = v.at("kind").get<std::string>();
      if (kind != "split" && kind != "merge") throw Error(ErrorCode::ParseError, "unknown vertex kind " + kind);
      kinds[id] = kind == "split" ? VertexKind::Split : VertexKind::Merge;
    }
    for (VertexKind k : kinds) d.add_vertex(k);
    const auto m = j.at("m").get<std::int32_t>();
    const auto n = j.at("n").get<std::int32_t>();
    d.sources.assign(m, kNone);
    d.sinks.assign(n, kNone);
    for (const auto& e : j.at("edges")) {
      const Endpoint from = detail::endpoint_from_json(e.at("from"));
      const Endpoint to = detail::endpoint_from_json(e.at("to"));
      for (const Endpoint& p : {from, to}) {
        const auto limit = p.is_vertex() ? static_cast<std::int32_t>(kinds.size())
                                         : (p.kind == Endpoint::Kind::Source ? m : n);
        if (p.index < 0 || p.index >= limit) throw Error(ErrorCode::ParseError, "endpoint index out of range");
      }
      d.add_edge(from, to);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (auto err = validate(d)) throw *err;
  return d;
}

inline StrandDiagram strand_diagram_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return strand_diagram_from_json(j);
}

/// Graphviz source. Splits are triangles, merges inverted triangles; closed
/// diagrams label each edge with its weight.
inline std::string to_dot(const PortGraph& g, bool weights) {
  const auto vmap = detail::dense_ids(g);
  std::ostringstream os;
  os << "digraph strands {\n  rankdir=TB;\n";
  for (std::size_t i = 0; i < g.sources.size(); ++i) os << "  s" << i << " [shape=point];\n";
  for (std::size_t i = 0; i < g.sinks.size(); ++i) os << "  t" << i << " [shape=point];\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (!g.vertices[v].alive) continue;
    os << "  v" << vmap[v] << " [shape=" << (g.vertices[v].kind == VertexKind::Split ? "triangle" : "invtriangle")
       << ", label=\"" << vmap[v] << "\"];\n";
  }
  for (const Edge& e : g.edges) {
    if (!e.alive) continue;
    os << "  " << detail::dot_node(e.from, vmap) << " -> " << detail::dot_node(e.to, vmap);
    std::vector<std::string> attrs;
    if (e.from.is_vertex()) attrs.push_back("taillabel=\"" + std::to_string(e.from.port) + "\"");
    if (e.to.is_vertex()) attrs.push_back("headlabel=\"" + std::to_string(e.to.port) + "\"");
    if (weights && (e.w.c != 0 || e.w.lon != 0)) {
      attrs.push_back("label=\"" + std::to_string(e.w.c) + (e.w.lon != 0 ? "," + std::to_string(e.w.lon) : "") + "\"");
    }
    if (!attrs.empty()) {
      os << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) os << (i ? ", " : "") << attrs[i];
      os << "]";
    }
    os << ";\n";
  }
  for (std::size_t i = 0; i < g.free_loops.size(); ++i) {
    const Weight& w = g.free_loops[i].w;
    os << "  loop" << i << " [shape=circle, label=\"" << w.c << (w.lon != 0 ? "," + std::to_string(w.lon) : "")
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string to_dot(const StrandDiagram& d) { return to_dot(d, false); }
inline std::string to_dot(const ClosedDiagram& g) { return to_dot(g, true); }

}  // namespace thompson
