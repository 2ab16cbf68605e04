#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "glc/circuit.hpp"
#include "glc/multigraph.hpp"

namespace glc {

// Image of an upper edge: a lower edge, or the lower vertex it collapses to.
using EdgeImage = std::variant<EdgeId, VertexId>;

inline bool contracted(const EdgeImage& im) { return std::holds_alternative<VertexId>(im); }

// Quotient map from level n+1 to level n.
struct BondingMap {
  std::map<VertexId, VertexId> vertex_map;
  std::map<EdgeId, EdgeImage> edge_map;

  const VertexId& image(const VertexId& v) const {
    auto it = vertex_map.find(v);
    if (it == vertex_map.end()) throw error(errc::not_found, "vertex '" + v.str() + "' has no image");
    return it->second;
  }
  const EdgeImage& image(const EdgeId& e) const {
    auto it = edge_map.find(e);
    if (it == edge_map.end()) throw error(errc::not_found, "edge '" + e.str() + "' has no image");
    return it->second;
  }

  static BondingMap identity(const MultiGraph& g) {
    BondingMap b;
    for (const auto& v : g.vertices()) b.vertex_map.emplace(v, v);
    for (const auto& e : g.edges()) b.edge_map.emplace(e.id, e.id);
    return b;
  }

  friend bool operator==(const BondingMap&, const BondingMap&) = default;
};

struct InverseSystem {
  std::vector<MultiGraph> levels;
  std::vector<BondingMap> bonds;  // bonds[n] maps level n+1 onto level n

  std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
  const MultiGraph& level(std::size_t n) const {
    if (n >= levels.size()) throw error(errc::not_found, "no level " + std::to_string(n));
    return levels[n];
  }
  const BondingMap& bond(std::size_t n) const {
    if (n >= bonds.size()) throw error(errc::not_found, "no bond below level " + std::to_string(n + 1));
    return bonds[n];
  }

  friend bool operator==(const InverseSystem&, const InverseSystem&) = default;
};

struct VertexThread {
  std::vector<VertexId> vertices;  // v_0 ... v_d

  std::size_t depth() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  const VertexId& at(std::size_t n) const { return vertices.at(n); }
  friend auto operator<=>(const VertexThread&, const VertexThread&) = default;
  friend bool operator==(const VertexThread&, const VertexThread&) = default;
};

struct CylinderSet {
  std::size_t level = 0;
  VertexSet cells;
  friend bool operator==(const CylinderSet&, const CylinderSet&) = default;
};

struct CircuitChain {
  std::vector<Circuit> circuits;  // C_0 ... C_d
};

// ---------------------------------------------------------------- validation

struct Check {
  std::string name;
  std::optional<std::size_t> bond;   // index n of the bond from level n+1 to n
  std::optional<std::size_t> level;
  bool ok = true;
  std::string detail;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Check> checks;
  std::optional<Check> first_violation;
  std::vector<std::string> warnings;
};

namespace detail {

inline void record(ValidationReport& r, Check c) {
  if (!c.ok && r.valid) {
    r.valid = false;
    r.first_violation = c;
  }
  r.checks.push_back(std::move(c));
}

inline std::string show(const EdgeImage& im) {
  if (auto e = std::get_if<EdgeId>(&im)) return "edge '" + e->str() + "'";
  return "vertex '" + std::get<VertexId>(im).str() + "'";
}

}  // namespace detail

inline ValidationReport validate(const InverseSystem& sys, bool require_connected = true) {
  ValidationReport rep;
  if (sys.levels.empty()) {
    detail::record(rep, {"nonempty", std::nullopt, std::nullopt, false, "system has no levels"});
    return rep;
  }
  if (sys.bonds.size() + 1 != sys.levels.size()) {
    detail::record(rep, {"bond_count", std::nullopt, std::nullopt, false,
                         std::to_string(sys.levels.size()) + " levels but " +
                             std::to_string(sys.bonds.size()) + " bonds"});
    return rep;
  }
  for (std::size_t n = 0; n < sys.levels.size(); ++n) {
    const auto& g = sys.levels[n];
    if (require_connected) {
      bool ok = is_connected(g);
      detail::record(rep, {"connected", std::nullopt, n, ok, ok ? "" : "level graph is not connected"});
    }
    for (const auto& e : g.edges())
      if (e.is_loop())
        rep.warnings.push_back("level " + std::to_string(n) + ": loop '" + e.id.str() + "' at '" +
                               e.u.str() + "'");
  }
  for (std::size_t n = 0; n < sys.bonds.size(); ++n) {
    const auto& up = sys.levels[n + 1];
    const auto& low = sys.levels[n];
    const auto& f = sys.bonds[n];

    // Simpliciality: total maps into the lower level, with no stray keys.
    std::string bad;
    for (const auto& v : up.vertices()) {
      auto it = f.vertex_map.find(v);
      if (it == f.vertex_map.end()) { bad = "vertex '" + v.str() + "' has no image"; break; }
      if (!low.has_vertex(it->second)) { bad = "vertex '" + v.str() + "' maps to unknown '" + it->second.str() + "'"; break; }
    }
    if (bad.empty())
      for (const auto& e : up.edges()) {
        auto it = f.edge_map.find(e.id);
        if (it == f.edge_map.end()) { bad = "edge '" + e.id.str() + "' has no image"; break; }
        bool known = std::visit([&](const auto& x) {
          if constexpr (std::is_same_v<std::decay_t<decltype(x)>, EdgeId>) return low.has_edge(x);
          else return low.has_vertex(x);
        }, it->second);
        if (!known) { bad = "edge '" + e.id.str() + "' maps to unknown " + detail::show(it->second); break; }
      }
    if (bad.empty() && f.vertex_map.size() != up.vertex_count()) bad = "vertex_map has keys outside the upper level";
    if (bad.empty() && f.edge_map.size() != up.edge_count()) bad = "edge_map has keys outside the upper level";
    const bool simplicial = bad.empty();
    detail::record(rep, {"simplicial", n, std::nullopt, simplicial, bad});
    if (!simplicial) continue;

    // Surjectivity on vertices.
    std::vector<char> hit(low.vertex_count(), 0);
    for (const auto& [v, w] : f.vertex_map) hit[low.vertex_index(w)] = 1;
    bad.clear();
    for (std::size_t i = 0; i < low.vertex_count(); ++i)
      if (!hit[i]) { bad = "lower vertex '" + low.vertex_at(i).str() + "' has no preimage"; break; }
    detail::record(rep, {"surjective", n, std::nullopt, bad.empty(), bad});

    // Each lower edge has exactly one edge-valued preimage.
    std::vector<std::size_t> pre(low.edge_count(), 0);
    for (const auto& [e, im] : f.edge_map)
      if (auto le = std::get_if<EdgeId>(&im)) pre[low.edge_index(*le)] += 1;
    bad.clear();
    for (std::size_t i = 0; i < low.edge_count(); ++i)
      if (pre[i] != 1) {
        bad = "lower edge '" + low.edge_at(i).id.str() + "' has " + std::to_string(pre[i]) + " edge preimages";
        break;
      }
    detail::record(rep, {"unique_edge_preimage", n, std::nullopt, bad.empty(), bad});

    // Endpoint compatibility.
    bad.clear();
    for (const auto& e : up.edges()) {
      const auto& im = f.edge_map.at(e.id);
      const auto& a = f.vertex_map.at(e.u);
      const auto& b = f.vertex_map.at(e.v);
      if (auto le = std::get_if<EdgeId>(&im)) {
        const auto& l = low.edge(*le);
        bool ok = (a == l.u && b == l.v) || (a == l.v && b == l.u);
        if (!ok) { bad = "edge '" + e.id.str() + "' ends map to {" + a.str() + "," + b.str() + "} not the ends of '" + le->str() + "'"; break; }
      } else {
        const auto& x = std::get<VertexId>(im);
        if (a != x || b != x) { bad = "edge '" + e.id.str() + "' contracted to '" + x.str() + "' but its ends map to {" + a.str() + "," + b.str() + "}"; break; }
      }
    }
    const bool compatible = bad.empty();
    detail::record(rep, {"endpoint_compatible", n, std::nullopt, compatible, bad});

    // Monotone: fibre plus contracted edges is connected.
    bad.clear();
    if (compatible) {
      std::map<VertexId, std::vector<VertexId>> fib;
      for (const auto& [v, w] : f.vertex_map) fib[w].push_back(v);
      std::map<VertexId, std::vector<Edge>> inner;
      for (const auto& e : up.edges())
        if (auto x = std::get_if<VertexId>(&f.edge_map.at(e.id))) inner[*x].push_back(e);
      for (const auto& [w, vs] : fib) {
        MultiGraph piece(vs, inner[w]);
        if (!is_connected(piece)) { bad = "fibre of '" + w.str() + "' is disconnected"; break; }
      }
    } else {
      bad = "not evaluated: endpoint compatibility failed";
    }
    detail::record(rep, {"monotone", n, std::nullopt, bad.empty(), bad});

    for (const auto& [e, im] : f.edge_map)
      if (auto le = std::get_if<EdgeId>(&im); le && *le != e)
        rep.warnings.push_back("bond " + std::to_string(n) + ": edge '" + e.str() + "' renamed to '" + le->str() + "'");
  }
  return rep;
}

inline void require_valid(const InverseSystem& sys) {
  auto rep = validate(sys);
  if (!rep.valid)
    throw error(errc::invalid_system, rep.first_violation ? rep.first_violation->name + ": " + rep.first_violation->detail
                                                          : "invalid system");
}

// ---------------------------------------------------------------- maps

inline BondingMap compose(const InverseSystem& sys, std::size_t m, std::size_t n) {
  if (n > m || m > sys.depth()) throw error(errc::not_found, "compose needs n <= m <= depth");
  BondingMap out = BondingMap::identity(sys.level(m));
  for (std::size_t k = m; k > n; --k) {
    const auto& f = sys.bond(k - 1);
    for (auto& [v, w] : out.vertex_map) w = f.image(w);
    for (auto& [e, im] : out.edge_map) {
      if (auto le = std::get_if<EdgeId>(&im)) {
        im = f.image(*le);
      } else {
        im = f.image(std::get<VertexId>(im));
      }
    }
  }
  return out;
}

inline VertexId project_vertex(const InverseSystem& sys, std::size_t from, std::size_t to, VertexId v) {
  for (std::size_t k = from; k > to; --k) v = sys.bond(k - 1).image(v);
  return v;
}

inline VertexSet fiber(const InverseSystem& sys, std::size_t m, const CylinderSet& c) {
  if (c.level > m || m > sys.depth()) throw error(errc::not_found, "fiber needs c.level <= m <= depth");
  if (c.level == m) return c.cells;
  VertexSet cur = c.cells;
  for (std::size_t k = c.level; k < m; ++k) {
    VertexSet next;
    for (const auto& [v, w] : sys.bond(k).vertex_map)
      if (cur.count(w)) next.insert(v);
    cur = std::move(next);
  }
  return cur;
}

inline Cut cylinder_cut(const InverseSystem& sys, const CylinderSet& c) {
  return cut(sys.level(c.level), c.cells);
}

// ---------------------------------------------------------------- threads

inline void check_thread(const InverseSystem& sys, const VertexThread& t, std::size_t depth) {
  if (depth > sys.depth()) throw error(errc::invalid_thread, "depth beyond the system");
  if (t.vertices.size() < depth + 1) throw error(errc::invalid_thread, "thread shorter than the requested depth");
  for (std::size_t n = 0; n <= depth; ++n)
    if (!sys.level(n).has_vertex(t.vertices[n]))
      throw error(errc::invalid_thread, "level " + std::to_string(n) + " has no vertex '" + t.vertices[n].str() + "'");
  for (std::size_t n = 0; n < depth; ++n)
    if (sys.bond(n).image(t.vertices[n + 1]) != t.vertices[n])
      throw error(errc::invalid_thread, "thread breaks at bond " + std::to_string(n));
}

// Thread through vertex v at `level`, projected to level 0.
inline VertexThread thread_through(const InverseSystem& sys, std::size_t level, const VertexId& v) {
  VertexThread t;
  t.vertices.resize(level + 1);
  t.vertices[level] = v;
  for (std::size_t k = level; k > 0; --k) t.vertices[k - 1] = sys.bond(k - 1).image(t.vertices[k]);
  return t;
}

// Lexicographically least compatible thread through the whole depth.
inline VertexThread canonical_root_thread(const InverseSystem& sys) {
  VertexThread t;
  t.vertices.push_back(sys.level(0).vertex_at(0));
  for (std::size_t n = 0; n < sys.depth(); ++n) {
    std::optional<VertexId> best;
    for (const auto& [v, w] : sys.bond(n).vertex_map)
      if (w == t.vertices.back() && (!best || v < *best)) best = v;
    t.vertices.push_back(*best);
  }
  return t;
}

// One thread per deepest-level vertex, in id order.
inline std::vector<VertexThread> deepest_threads(const InverseSystem& sys) {
  std::vector<VertexThread> out;
  for (const auto& v : sys.level(sys.depth()).vertices()) out.push_back(thread_through(sys, sys.depth(), v));
  return out;
}

// ---------------------------------------------------------------- circuits

inline Circuit project_circuit(const BondingMap& f, const Circuit& c) {
  Circuit out;
  out.root = f.image(c.root);
  out.vertices.push_back(out.root);
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const auto& im = f.image(c.edges[i]);
    if (auto le = std::get_if<EdgeId>(&im)) {
      out.edges.push_back(*le);
      out.vertices.push_back(f.image(c.vertices[i + 1]));
    }
  }
  return out;
}

// ---------------------------------------------------------------- reports

struct LevelOddSet {
  std::size_t level = 0;
  std::vector<VertexId> odd;
  std::vector<std::size_t> degrees;  // parallel to `odd`
};

inline std::vector<LevelOddSet> level_degree_report(const InverseSystem& sys) {
  std::vector<LevelOddSet> out;
  for (std::size_t n = 0; n < sys.levels.size(); ++n) {
    LevelOddSet s{n, {}, {}};
    const auto& g = sys.levels[n];
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
      if (g.degree_at(i) % 2 == 1) {
        s.odd.push_back(g.vertex_at(i));
        s.degrees.push_back(g.degree_at(i));
      }
    out.push_back(std::move(s));
  }
  return out;
}

inline bool all_levels_even(const InverseSystem& sys) {
  for (const auto& s : level_degree_report(sys))
    if (!s.odd.empty()) return false;
  return true;
}

// Repeatedly replaces a degree-2 vertex outside `keep` and its two distinct
// incident edges by one edge carrying the smaller of the two ids.
inline MultiGraph suppress_degree2(const MultiGraph& g, const VertexSet& keep) {
  for (const auto& v : keep) (void)g.vertex_index(v);
  VertexSet verts = all_vertices(g);
  std::map<EdgeId, std::pair<VertexId, VertexId>> edges;
  for (const auto& e : g.edges()) edges[e.id] = {e.u, e.v};
  for (;;) {
    std::optional<VertexId> pick;
    std::vector<EdgeId> inc;
    for (const auto& v : verts) {
      if (keep.count(v)) continue;
      std::vector<EdgeId> here;
      std::size_t deg = 0;
      for (const auto& [id, ends] : edges) {
        if (ends.first == v) ++deg;
        if (ends.second == v) ++deg;
        if (ends.first == v || ends.second == v) here.push_back(id);
      }
      if (deg == 2 && here.size() == 2) {
        pick = v;
        inc = here;
        break;
      }
    }
    if (!pick) break;
    auto far = [&](const EdgeId& id) {
      const auto& [a, b] = edges[id];
      return a == *pick ? b : a;
    };
    VertexId x = far(inc[0]), y = far(inc[1]);
    edges.erase(inc[1]);
    edges[inc[0]] = {x, y};
    verts.erase(*pick);
  }
  std::vector<Edge> out;
  for (const auto& [id, ends] : edges) out.push_back({id, ends.first, ends.second});
  return MultiGraph({verts.begin(), verts.end()}, std::move(out));
}

inline InverseSystem truncate(const InverseSystem& sys, std::size_t depth) {
  if (depth > sys.depth()) throw error(errc::not_found, "truncation deeper than the system");
  InverseSystem out;
  out.levels.assign(sys.levels.begin(), sys.levels.begin() + static_cast<std::ptrdiff_t>(depth + 1));
  out.bonds.assign(sys.bonds.begin(), sys.bonds.begin() + static_cast<std::ptrdiff_t>(depth));
  return out;
}

}  // namespace glc
