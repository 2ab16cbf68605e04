#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "glc/prosys.hpp"

namespace glc {

using json = nlohmann::json;

// ---------------------------------------------------------------- JSON

inline json graph_to_json(const MultiGraph& g) {
  json vs = json::array(), es = json::array();
  for (const auto& v : g.vertices()) vs.push_back(v.str());
  for (const auto& e : g.edges()) es.push_back({{"id", e.id.str()}, {"ends", {e.u.str(), e.v.str()}}});
  return {{"vertices", vs}, {"edges", es}};
}

inline json system_to_json(const InverseSystem& sys) {
  json levels = json::array(), bonds = json::array();
  for (const auto& g : sys.levels) levels.push_back(graph_to_json(g));
  for (const auto& b : sys.bonds) {
    json vm = json::object(), em = json::object();
    for (const auto& [v, w] : b.vertex_map) vm[v.str()] = w.str();
    for (const auto& [e, im] : b.edge_map) {
      if (auto x = std::get_if<EdgeId>(&im)) em[e.str()] = x->str();
      else em[e.str()] = {{"vertex", std::get<VertexId>(im).str()}};
    }
    bonds.push_back({{"vertex_map", vm}, {"edge_map", em}});
  }
  return {{"levels", levels}, {"bonds", bonds}};
}

namespace detail {

[[noreturn]] inline void bad_shape(const std::string& where, const std::string& what) {
  throw error(errc::parse_error, where + ": " + what);
}

inline const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad_shape(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad_shape(where, std::string("missing \"") + key + "\"");
  return *it;
}

inline std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) bad_shape(where, "expected a string");
  return j.get<std::string>();
}

}  // namespace detail

inline MultiGraph graph_from_json(const json& j, const std::string& where = "graph") {
  const auto& vs = detail::member(j, "vertices", where);
  const auto& es = detail::member(j, "edges", where);
  if (!vs.is_array()) detail::bad_shape(where + "/vertices", "expected an array");
  if (!es.is_array()) detail::bad_shape(where + "/edges", "expected an array");
  std::vector<VertexId> vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) vertices.emplace_back(detail::text(vs[i], where + "/vertices/" + std::to_string(i)));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string at = where + "/edges/" + std::to_string(i);
    const auto& ends = detail::member(es[i], "ends", at);
    if (!ends.is_array() || ends.size() != 2) detail::bad_shape(at + "/ends", "expected two vertex ids");
    edges.push_back({detail::text(detail::member(es[i], "id", at), at + "/id"), detail::text(ends[0], at + "/ends/0"),
                     detail::text(ends[1], at + "/ends/1")});
  }
  try {
    return MultiGraph(std::move(vertices), std::move(edges));
  } catch (const error& e) {
    detail::bad_shape(where, e.what());
  }
}

inline InverseSystem system_from_json(const json& j) {
  InverseSystem sys;
  const auto& levels = detail::member(j, "levels", "");
  const auto& bonds = detail::member(j, "bonds", "");
  if (!levels.is_array() || levels.empty()) detail::bad_shape("/levels", "expected a non-empty array");
  if (!bonds.is_array()) detail::bad_shape("/bonds", "expected an array");
  for (std::size_t n = 0; n < levels.size(); ++n) sys.levels.push_back(graph_from_json(levels[n], "/levels/" + std::to_string(n)));
  for (std::size_t n = 0; n < bonds.size(); ++n) {
    const std::string at = "/bonds/" + std::to_string(n);
    BondingMap b;
    const auto& vm = detail::member(bonds[n], "vertex_map", at);
    const auto& em = detail::member(bonds[n], "edge_map", at);
    if (!vm.is_object()) detail::bad_shape(at + "/vertex_map", "expected an object");
    if (!em.is_object()) detail::bad_shape(at + "/edge_map", "expected an object");
    for (const auto& [k, v] : vm.items()) b.vertex_map[k] = detail::text(v, at + "/vertex_map/" + k);
    for (const auto& [k, v] : em.items()) {
      if (v.is_string()) b.edge_map[k] = EdgeId(v.get<std::string>());
      else b.edge_map[k] = VertexId(detail::text(detail::member(v, "vertex", at + "/edge_map/" + k), at + "/edge_map/" + k + "/vertex"));
    }
    sys.bonds.push_back(std::move(b));
  }
  return sys;
}

// Parses text into JSON, reporting syntax errors by line and column.
inline json parse_json(const std::string& text, const std::string& source = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw error(errc::parse_error, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Level sizes plus an FNV-1a hash of the canonical JSON.
inline json digest(const InverseSystem& sys) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : system_to_json(sys).dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  json levels = json::array();
  for (const auto& g : sys.levels) levels.push_back({{"vertices", g.vertex_count()}, {"edges", g.edge_count()}});
  return {{"depth", sys.depth()}, {"levels", levels}, {"fnv1a", hex}};
}

// ---------------------------------------------------------------- DOT

struct DotStyle {
  std::map<VertexId, std::string> vertex_color;
  std::map<EdgeId, std::string> edge_color;
};

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// One undirected graph; parallel edges and loops are written one line each.
inline std::string to_dot(const MultiGraph& g, const std::string& name, const DotStyle& style = {}) {
  std::ostringstream os;
  os << "graph " << dot_quote(name) << " {\n";
  for (const auto& v : g.vertices()) {
    os << "  " << dot_quote(v.str());
    if (auto it = style.vertex_color.find(v); it != style.vertex_color.end()) os << " [color=" << it->second << "]";
    os << ";\n";
  }
  for (const auto& e : g.edges()) {
    os << "  " << dot_quote(e.u.str()) << " -- " << dot_quote(e.v.str()) << " [label=" << dot_quote(e.id.str());
    if (auto it = style.edge_color.find(e.id); it != style.edge_color.end()) os << ", color=" << it->second;
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string system_to_dot(const InverseSystem& sys) {
  std::string out;
  for (std::size_t n = 0; n < sys.levels.size(); ++n) out += to_dot(sys.levels[n], "level" + std::to_string(n));
  return out;
}

}  // namespace glc
