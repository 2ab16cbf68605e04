#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "glc/flow.hpp"
#include "glc/prosys.hpp"

namespace glc {

// A connected subgraph given by its vertices and edges.
struct Subgraph {
  VertexSet vertices;
  std::vector<EdgeId> edges;

  friend bool operator==(const Subgraph&, const Subgraph&) = default;
};

struct MengerLevel {
  std::size_t level = 0;
  std::size_t flow = 0;
  std::vector<Subgraph> tuple;  // k edge-disjoint connected subgraphs meeting A and B
  bool valid = true;
  std::string detail;
};

struct MengerWitness {
  std::size_t k = 0;
  std::size_t achieving_level = 0;  // least probed level whose flow equals k
  std::vector<MengerLevel> levels;  // from the finer of the two cylinder levels to the probe depth
  bool projection_valid = true;
  VertexSet cut_side;               // a minimum cut side at the achieving level
};

inline bool subgraph_connected(const MultiGraph& g, const Subgraph& s) {
  if (s.vertices.empty()) return false;
  std::map<VertexId, VertexId> parent;
  for (const auto& v : s.vertices) parent[v] = v;
  auto find = [&](VertexId x) {
    while (parent.at(x) != x) x = parent.at(x) = parent.at(parent.at(x));
    return x;
  };
  for (const auto& id : s.edges) {
    const auto& e = g.edge(id);
    if (!parent.count(e.u) || !parent.count(e.v)) return false;
    parent[find(e.u)] = find(e.v);
  }
  auto root = find(*s.vertices.begin());
  return std::all_of(s.vertices.begin(), s.vertices.end(), [&](const VertexId& v) { return find(v) == root; });
}

// Image of a subgraph one level up: contracted edges disappear into their vertex.
inline Subgraph project_subgraph(const BondingMap& f, const Subgraph& s) {
  Subgraph out;
  for (const auto& v : s.vertices) out.vertices.insert(f.image(v));
  for (const auto& e : s.edges)
    if (auto im = std::get_if<EdgeId>(&f.image(e))) out.edges.push_back(*im);
  return out;
}

// Checks a tuple against the fibres of A and B at one level.
inline std::string check_tuple(const MultiGraph& g, const std::vector<Subgraph>& tuple, const VertexSet& a,
                               const VertexSet& b) {
  std::map<EdgeId, std::size_t> used;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const auto& s = tuple[i];
    if (!subgraph_connected(g, s)) return "member " + std::to_string(i) + " is not connected";
    auto meets = [&](const VertexSet& x) {
      return std::any_of(s.vertices.begin(), s.vertices.end(), [&](const VertexId& v) { return x.count(v) > 0; });
    };
    if (!meets(a) || !meets(b)) return "member " + std::to_string(i) + " misses A or B";
    for (const auto& e : s.edges)
      if (auto [it, fresh] = used.emplace(e, i); !fresh && it->second != i)
        return "edge '" + e.str() + "' is shared by members " + std::to_string(it->second) + " and " + std::to_string(i);
  }
  return {};
}

inline MengerWitness menger(const InverseSystem& sys, const CylinderSet& a, const CylinderSet& b, std::size_t depth) {
  require_valid(sys);
  if (depth > sys.depth()) throw error(errc::not_found, "menger deeper than the system");
  const std::size_t from = std::max(a.level, b.level);
  if (from > depth) throw error(errc::invalid_input, "cylinders lie below the probe depth");
  for (const auto* c : {&a, &b}) {
    if (c->cells.empty()) throw error(errc::invalid_input, "empty cylinder");
    for (const auto& v : c->cells) (void)sys.level(c->level).vertex_index(v);
  }
  {
    auto fa = fiber(sys, from, a), fb = fiber(sys, from, b);
    for (const auto& v : fa)
      if (fb.count(v)) throw error(errc::invalid_separation, "cylinders share cell '" + v.str() + "' at level " + std::to_string(from));
  }

  MengerWitness w;
  std::vector<FlowResult> flows;
  for (std::size_t n = from; n <= depth; ++n) {
    flows.push_back(max_edge_disjoint_paths(sys.level(n), fiber(sys, n, a), fiber(sys, n, b)));
    MengerLevel l;
    l.level = n;
    l.flow = flows.back().k;
    w.levels.push_back(std::move(l));
  }
  w.k = std::min_element(w.levels.begin(), w.levels.end(), [](const auto& x, const auto& y) { return x.flow < y.flow; })->flow;
  for (std::size_t i = 0; i < w.levels.size(); ++i)
    if (w.levels[i].flow == w.k) {
      w.achieving_level = w.levels[i].level;
      w.cut_side = flows[i].source_side;
      break;
    }

  // Deepest paths, taken k at a time, then projected level by level.
  std::vector<Subgraph> tuple;
  for (std::size_t i = 0; i < w.k; ++i) {
    const auto& p = flows.back().paths[i];
    tuple.push_back({VertexSet(p.vertices.begin(), p.vertices.end()), p.edges});
  }
  for (std::size_t i = w.levels.size(); i-- > 0;) {
    auto& l = w.levels[i];
    if (i + 1 < w.levels.size())
      for (auto& s : tuple) s = project_subgraph(sys.bond(l.level), s);
    l.tuple = tuple;
    l.detail = check_tuple(sys.level(l.level), tuple, fiber(sys, l.level, a), fiber(sys, l.level, b));
    l.valid = l.detail.empty();
    w.projection_valid = w.projection_valid && l.valid;
  }
  return w;
}

}  // namespace glc
