#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glc/prosys.hpp"

namespace glc {

// ---------------------------------------------------------------- ⊛ operator

enum class VertexRole { original, midpoint };
enum class EdgeRole { half, line, connector };

inline std::string_view to_string(VertexRole t) { return t == VertexRole::original ? "original" : "midpoint"; }
inline std::string_view to_string(EdgeRole t) {
  switch (t) {
    case EdgeRole::half: return "half";
    case EdgeRole::line: return "line";
    case EdgeRole::connector: return "connector";
  }
  return "unknown";
}

struct RoledGraph {
  MultiGraph graph;
  std::map<VertexId, VertexRole> vertex_roles;
  std::map<EdgeId, EdgeRole> edge_roles;
};

namespace detail {

inline void reject_loops(const MultiGraph& g, const std::string& where) {
  for (const auto& e : g.edges())
    if (e.is_loop()) throw error(errc::subdivide_first, "loop '" + e.id.str() + "' " + where + "; subdivide loops first");
}

// Pairs of items sharing a key, each pair once, in sorted order.
inline std::vector<std::pair<std::string, std::string>> sharing_pairs(const std::map<VertexId, std::vector<std::string>>& at) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [v, items] : at) {
    auto sorted = items;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      for (std::size_t j = i + 1; j < sorted.size(); ++j) out.emplace_back(sorted[i], sorted[j]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

// Subdivides every edge at a midpoint "m:<edge>" and joins midpoints of
// edges sharing an end by one line edge "l:<e>|<f>".
inline RoledGraph star_operator(const MultiGraph& g) {
  detail::reject_loops(g, "in the input graph");
  RoledGraph out;
  std::vector<VertexId> vs(g.vertices().begin(), g.vertices().end());
  std::vector<Edge> es;
  std::map<VertexId, std::vector<std::string>> at;
  for (const auto& v : g.vertices()) out.vertex_roles[v] = VertexRole::original;
  for (const auto& e : g.edges()) {
    VertexId m("m:" + e.id.str());
    vs.push_back(m);
    out.vertex_roles[m] = VertexRole::midpoint;
    es.push_back({e.id.str() + ":0", e.u, m});
    es.push_back({e.id.str() + ":1", m, e.v});
    at[e.u].push_back(e.id.str());
    at[e.v].push_back(e.id.str());
  }
  for (const auto& [a, b] : detail::sharing_pairs(at)) es.push_back({"l:" + a + "|" + b, "m:" + a, "m:" + b});
  for (const auto& e : es) out.edge_roles[e.id] = e.id.str().starts_with("l:") ? EdgeRole::line : EdgeRole::half;
  out.graph = MultiGraph(std::move(vs), std::move(es));
  return out;
}

// ---------------------------------------------------------------- construction

struct FEdgeInfo {
  EdgeRole kind = EdgeRole::line;  // line: away from the level graph; connector: along one of its edges
  std::size_t added = 0;
  std::optional<EdgeId> carrier;  // the level edge holding a connector
};

// F_n together with how it sits on G_n inside H_n.
struct EmbeddingStep {
  std::size_t level = 0;
  MultiGraph f;
  std::map<EdgeId, std::vector<VertexId>> positions;  // F vertices along each level edge, from its u end
  std::map<VertexId, std::size_t> vertex_added;
  std::map<EdgeId, FEdgeInfo> edge_info;
  std::map<VertexId, VertexSet> blocks;  // L_v for each v one level up; empty on the first step
};

struct EmbeddingTrace {
  std::size_t first_level = 0;  // the first level with an edge
  std::vector<EmbeddingStep> steps;
  std::vector<Check> checks;

  const EmbeddingStep& at(std::size_t level) const {
    if (level < first_level || level - first_level >= steps.size())
      throw error(errc::not_found, "no embedding step at level " + std::to_string(level));
    return steps[level - first_level];
  }
};

namespace detail {

inline std::string lvl(std::size_t n) { return std::to_string(n); }

inline EmbeddingStep first_step(const MultiGraph& g, std::size_t level) {
  EmbeddingStep s;
  s.level = level;
  std::vector<VertexId> vs;
  std::vector<Edge> es;
  std::map<VertexId, std::vector<std::string>> at;
  for (const auto& e : g.edges()) {
    VertexId m("m" + lvl(level) + ":" + e.id.str());
    vs.push_back(m);
    s.positions[e.id] = {m};
    s.vertex_added[m] = level;
    at[e.u].push_back(m.str());
    at[e.v].push_back(m.str());
  }
  for (const auto& [a, b] : sharing_pairs(at)) {
    EdgeId id("l" + lvl(level) + ":" + a + "|" + b);
    es.push_back({id, a, b});
    s.edge_info[id] = {EdgeRole::line, level, std::nullopt};
  }
  s.f = MultiGraph(std::move(vs), std::move(es));
  return s;
}

inline EmbeddingStep next_step(const InverseSystem& sys, const EmbeddingStep& prev) {
  const std::size_t n = prev.level, m = n + 1;
  const auto& fine = sys.level(m);
  const auto& bond = sys.bond(n);
  const std::string tag = lvl(m);
  EmbeddingStep s;
  s.level = m;
  std::vector<VertexId> vs(prev.f.vertices().begin(), prev.f.vertices().end());
  std::vector<Edge> es(prev.f.edges().begin(), prev.f.edges().end());
  s.vertex_added = prev.vertex_added;
  s.edge_info = prev.edge_info;

  // The pulled-back copy keeps its names; its connectors move to the unique
  // persistent preimage of their carrier.
  std::map<EdgeId, EdgeId> preimage;
  for (const auto& e : fine.edges())
    if (auto im = std::get_if<EdgeId>(&bond.image(e.id))) {
      if (!preimage.emplace(*im, e.id).second)
        throw error(errc::construction_invariant_violated, "edge '" + im->str() + "' has two persistent preimages");
    }
  for (auto& [id, info] : s.edge_info)
    if (info.carrier) info.carrier = preimage.at(*info.carrier);

  std::map<VertexId, std::vector<std::string>> k_at;  // K-edges at each fine vertex
  std::map<std::string, VertexId> k_owner;            // K-edge -> v at level n
  auto add_mid = [&](const std::string& name, const VertexId& end) {
    VertexId mid(name);
    vs.push_back(mid);
    s.vertex_added[mid] = m;
    k_at[end].push_back(name);
    k_owner[name] = bond.image(end);
    s.blocks[bond.image(end)].insert(mid);
    return mid;
  };
  for (const auto& e : fine.edges()) {
    const auto& im = bond.image(e.id);
    if (auto v = std::get_if<VertexId>(&im)) {
      VertexId mid("m" + tag + ":" + e.id.str());
      vs.push_back(mid);
      s.vertex_added[mid] = m;
      k_at[e.u].push_back(mid.str());
      k_at[e.v].push_back(mid.str());
      s.blocks[*v].insert(mid);
      s.positions[e.id] = {mid};
      continue;
    }
    const auto& old = prev.positions.at(std::get<EdgeId>(im));
    const auto& coarse = sys.level(n).edge(std::get<EdgeId>(im));
    std::vector<VertexId> path(old.begin(), old.end());
    if (bond.image(e.u) != coarse.u) std::reverse(path.begin(), path.end());
    auto s0 = add_mid("m" + tag + ":" + e.id.str() + ":0", e.u);
    auto s1 = add_mid("m" + tag + ":" + e.id.str() + ":1", e.v);
    EdgeId c0("c" + tag + ":" + e.id.str() + ":0"), c1("c" + tag + ":" + e.id.str() + ":1");
    es.push_back({c0, s0, path.front()});
    es.push_back({c1, path.back(), s1});
    s.edge_info[c0] = {EdgeRole::connector, m, e.id};
    s.edge_info[c1] = {EdgeRole::connector, m, e.id};
    path.insert(path.begin(), s0);
    path.push_back(s1);
    s.positions[e.id] = std::move(path);
  }
  for (const auto& [a, b] : sharing_pairs(k_at)) {
    EdgeId id("l" + tag + ":" + a + "|" + b);
    es.push_back({id, a, b});
    s.edge_info[id] = {EdgeRole::line, m, std::nullopt};
  }
  s.f = MultiGraph(std::move(vs), std::move(es));
  return s;
}

inline Check check(std::string name, std::size_t level, bool ok, std::string detail = {}) {
  return {std::move(name), std::nullopt, level, ok, ok ? std::string{} : std::move(detail)};
}

inline VertexSet vertex_set(const MultiGraph& g) { return all_vertices(g); }

}  // namespace detail

// Per-step checks on F and the commuting square on dummy vertices.
inline std::vector<Check> check_embedding(const InverseSystem& sys, const EmbeddingTrace& t) {
  std::vector<Check> out;
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const auto& s = t.steps[k];
    const auto& g = sys.level(s.level);
    const std::size_t n = s.level;
    out.push_back(detail::check("f.connected", n, is_connected(s.f), "F is not connected"));

    // (a) no level vertex in F; (b) each F vertex on exactly one level edge.
    std::string bad;
    for (const auto& v : s.f.vertices())
      if (g.has_vertex(v)) bad = v.str();
    out.push_back(detail::check("f.avoids_level_vertices", n, bad.empty(), "level vertex '" + bad + "' lies in F"));
    std::map<VertexId, std::size_t> seen;
    for (const auto& [e, ps] : s.positions)
      for (const auto& p : ps) ++seen[p];
    bad.clear();
    for (const auto& v : s.f.vertices())
      if (seen[v] != 1) bad = v.str();
    if (s.positions.size() != g.edge_count()) bad = "<positions>";
    out.push_back(detail::check("f.points_on_level_edges", n, bad.empty(), "F vertex '" + bad + "' is not on exactly one edge"));

    // (c) connectors join neighbours on their carrier; line edges avoid the level graph.
    bad.clear();
    for (const auto& e : s.f.edges()) {
      const auto& info = s.edge_info.at(e.id);
      if (info.kind == EdgeRole::line) {
        if (info.carrier) bad = e.id.str();
        continue;
      }
      if (!info.carrier || !s.positions.count(*info.carrier)) {
        bad = e.id.str();
        continue;
      }
      const auto& ps = s.positions.at(*info.carrier);
      bool adjacent = false;
      for (std::size_t i = 0; i + 1 < ps.size(); ++i)
        adjacent = adjacent || (ps[i] == e.u && ps[i + 1] == e.v) || (ps[i] == e.v && ps[i + 1] == e.u);
      if (!adjacent) bad = e.id.str();
    }
    out.push_back(detail::check("f.edges_along_or_away", n, bad.empty(), "F edge '" + bad + "' is neither along nor away from an edge"));

    // (d) each level edge meets F in a path whose ends are new at this step.
    bad.clear();
    for (const auto& e : g.edges()) {
      auto it = s.positions.find(e.id);
      if (it == s.positions.end() || it->second.empty()) {
        bad = e.id.str();
        continue;
      }
      const auto& ps = it->second;
      std::size_t along = 0;
      for (const auto& fe : s.f.edges()) {
        const auto& info = s.edge_info.at(fe.id);
        if (info.carrier && *info.carrier == e.id) ++along;
      }
      if (along != ps.size() - 1) bad = e.id.str();
      if (k > 0 && (s.vertex_added.at(ps.front()) != n || s.vertex_added.at(ps.back()) != n)) bad = e.id.str();
    }
    out.push_back(detail::check("f.fresh_paths", n, bad.empty(), "edge '" + bad + "' does not meet F in a fresh path"));

    if (k == 0) continue;
    // F_{n-1} sits inside F_n, and nothing new touches F_{n-2}.
    const auto& p = t.steps[k - 1];
    bad.clear();
    for (const auto& v : p.f.vertices())
      if (!s.f.has_vertex(v)) bad = v.str();
    for (const auto& e : p.f.edges())
      if (!s.f.has_edge(e.id) || s.f.edge(e.id).u != e.u || s.f.edge(e.id).v != e.v) bad = e.id.str();
    out.push_back(detail::check("f.contains_previous", n, bad.empty(), "'" + bad + "' of the previous F is missing"));
    if (k >= 2) {
      const auto& pp = t.steps[k - 2];
      bad.clear();
      for (const auto& e : s.f.edges()) {
        bool u_new = !p.f.has_vertex(e.u), v_new = !p.f.has_vertex(e.v);
        if ((u_new && pp.f.has_vertex(e.v)) || (v_new && pp.f.has_vertex(e.u))) bad = e.id.str();
      }
      out.push_back(detail::check("f.separated_from_older", n, bad.empty(), "edge '" + bad + "' joins a new vertex to F two steps back"));
    }

    // Commuting square at level n-1: the block of v in F_n lies in the component of
    // F_n minus F_{n-2} that holds the block of f(v). Needs k >= 2.
    if (k < 2) continue;
    const auto& older = t.steps[k - 2];
    std::vector<char> keep(s.f.vertex_count(), 0);
    for (std::size_t i = 0; i < s.f.vertex_count(); ++i) keep[i] = !older.f.has_vertex(s.f.vertex_at(i));
    std::vector<std::size_t> comp_of(s.f.vertex_count(), SIZE_MAX);
    auto comps = components(s.f, keep);
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (auto i : comps[c]) comp_of[i] = c;
    bad.clear();
    for (const auto& [v, block] : s.blocks) {
      auto c = comp_of[s.f.vertex_index(*block.begin())];
      std::vector<VertexId> hits;
      for (const auto& [w, wb] : p.blocks)
        if (std::any_of(wb.begin(), wb.end(), [&](const VertexId& x) { return comp_of[s.f.vertex_index(x)] == c; }))
          hits.push_back(w);
      if (hits.size() != 1 || hits.front() != sys.bond(n - 2).image(v)) bad = v.str();
    }
    out.push_back(detail::check("dummies.commute", n - 1, bad.empty(), "dummy of '" + bad + "' does not follow the bond"));
  }
  return out;
}

inline EmbeddingTrace build_embedding(const InverseSystem& sys, std::size_t depth) {
  require_valid(sys);
  if (depth > sys.depth()) throw error(errc::not_found, "embedding deeper than the system");
  EmbeddingTrace t;
  while (t.first_level <= depth && sys.level(t.first_level).edge_count() == 0) ++t.first_level;
  if (t.first_level > depth) throw error(errc::invalid_input, "no level up to the depth has an edge");
  for (std::size_t n = t.first_level; n <= depth; ++n) detail::reject_loops(sys.level(n), "at level " + std::to_string(n));
  t.steps.push_back(detail::first_step(sys.level(t.first_level), t.first_level));
  for (std::size_t n = t.first_level; n < depth; ++n) t.steps.push_back(detail::next_step(sys, t.steps.back()));
  t.checks = check_embedding(sys, t);
  for (const auto& c : t.checks)
    if (!c.ok)
      throw error(errc::construction_invariant_violated,
                  c.name + " fails at level " + std::to_string(*c.level) + ": " + c.detail);
  return t;
}

// H_n = F_n ∪ G_n: level edges cut into halves at the F vertices on them.
inline RoledGraph ambient(const InverseSystem& sys, const EmbeddingTrace& t, std::size_t level) {
  const auto& s = t.at(level);
  const auto& g = sys.level(level);
  RoledGraph out;
  std::vector<VertexId> vs(g.vertices().begin(), g.vertices().end());
  for (const auto& v : g.vertices()) out.vertex_roles[v] = VertexRole::original;
  for (const auto& v : s.f.vertices()) {
    vs.push_back(v);
    out.vertex_roles[v] = VertexRole::midpoint;
  }
  std::vector<Edge> es(s.f.edges().begin(), s.f.edges().end());
  for (const auto& e : s.f.edges()) out.edge_roles[e.id] = s.edge_info.at(e.id).kind;
  for (const auto& e : g.edges()) {
    const auto& ps = s.positions.at(e.id);
    es.push_back({"h:" + e.id.str() + ":0", e.u, ps.front()});
    es.push_back({"h:" + e.id.str() + ":1", ps.back(), e.v});
    out.edge_roles["h:" + e.id.str() + ":0"] = EdgeRole::half;
    out.edge_roles["h:" + e.id.str() + ":1"] = EdgeRole::half;
  }
  out.graph = MultiGraph(std::move(vs), std::move(es));
  return out;
}

// ---------------------------------------------------------------- truncations

inline VertexId dummy(const VertexId& v) { return VertexId("*" + v.str()); }

struct Truncations {
  std::size_t first_level = 0;
  InverseSystem system;           // L^n for n = first_level .. first_level + depth()
  std::vector<MultiGraph> trees;  // T_n inside L^n
  std::vector<Check> checks;
};

// L^n = F_{n+1} with each block L_v contracted to the dummy *v.
inline Truncations freudenthal_truncations(const InverseSystem& sys, const EmbeddingTrace& t) {
  Truncations out;
  out.first_level = t.first_level;
  if (t.steps.size() < 2) throw error(errc::invalid_input, "truncations need two embedding steps");
  std::vector<std::map<VertexId, VertexId>> image;  // F_{n+1} vertex -> L^n vertex
  for (std::size_t k = 0; k + 1 < t.steps.size(); ++k) {
    const auto& s = t.steps[k];
    const auto& next = t.steps[k + 1];
    std::vector<VertexSet> partition;
    std::vector<VertexId> names;
    VertexSet covered;
    for (const auto& [v, block] : next.blocks) {
      partition.push_back(block);
      names.push_back(dummy(v));
      covered.insert(block.begin(), block.end());
    }
    for (const auto& v : next.f.vertices())
      if (!covered.count(v)) {
        partition.push_back({v});
        names.push_back(v);
      }
    auto c = contract(next.f, partition, names);
    image.push_back(c.vertex_image);
    const auto& g = sys.level(s.level);
    const auto& l = c.graph;
    out.system.levels.push_back(l);

    // Dummies correspond to level vertices, with the level degree.
    std::string bad;
    for (const auto& v : g.vertices())
      if (!l.has_vertex(dummy(v)) || degree(l, dummy(v)) != degree(g, v)) bad = v.str();
    if (next.blocks.size() != g.vertex_count()) bad = "<count>";
    out.checks.push_back(detail::check("truncation.dummies", s.level, bad.empty(), "dummy of '" + bad + "' is missing or has the wrong degree"));

    // L^n is H_n with each level vertex v renamed *v.
    {
      auto h = ambient(sys, t, s.level);
      auto phi = [&](const VertexId& v) { return g.has_vertex(v) ? dummy(v) : v; };
      auto pairs = [](const MultiGraph& x, auto&& rename) {
        std::vector<std::pair<VertexId, VertexId>> out;
        for (const auto& e : x.edges()) {
          VertexId a = rename(e.u), b = rename(e.v);
          out.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(out.begin(), out.end());
        return out;
      };
      bool same = h.graph.vertex_count() == l.vertex_count() &&
                  pairs(h.graph, phi) == pairs(l, [](const VertexId& v) { return v; });
      out.checks.push_back(detail::check("truncation.matches_ambient", s.level, same, "truncation differs from the ambient complex"));
    }

    // T_n: dummies, F_n, the connectors of the next step; each level edge
    // becomes the path *u, p_1, ..., p_r, *v.
    std::vector<VertexId> tv;
    for (const auto& v : g.vertices()) tv.push_back(dummy(v));
    for (const auto& v : s.f.vertices()) tv.push_back(v);
    std::vector<Edge> te;
    bad.clear();
    for (const auto& e : g.edges()) {
      std::vector<VertexId> path{dummy(e.u)};
      for (const auto& p : s.positions.at(e.id)) path.push_back(p);
      path.push_back(dummy(e.v));
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        std::optional<EdgeId> found;
        for (const auto& le : l.edges())
          if ((le.u == path[i] && le.v == path[i + 1]) || (le.u == path[i + 1] && le.v == path[i])) {
            bool on_edge = false;
            if (i == 0 || i + 2 == path.size()) {
              const auto& info = next.edge_info.at(le.id);
              on_edge = info.carrier && sys.bond(s.level).image(*info.carrier) == EdgeImage(e.id);
            } else {
              on_edge = s.edge_info.at(le.id).carrier == e.id;
            }
            if (on_edge && std::none_of(te.begin(), te.end(), [&](const Edge& x) { return x.id == le.id; })) {
              found = le.id;
              break;
            }
          }
        if (!found) {
          bad = e.id.str();
          break;
        }
        te.push_back({*found, path[i], path[i + 1]});
      }
    }
    out.trees.push_back(MultiGraph(std::move(tv), std::move(te)));
    out.checks.push_back(detail::check("truncation.tree_subdivides", s.level, bad.empty(), "edge '" + bad + "' has no independent path"));
  }
  // Bonds: F_{n+1} vertices of F_n stay put, the rest fall into their dummy;
  // a dummy *v goes wherever its block's vertices do one level up.
  for (std::size_t k = 0; k + 1 < out.system.levels.size(); ++k) {
    const auto& fine = out.system.levels[k + 1];
    const auto& coarse = out.system.levels[k];
    const auto& from_f = t.steps[k + 1].f;  // F_{n+1}, whose vertices make up L^n
    BondingMap b;
    for (const auto& v : fine.vertices()) {
      if (from_f.has_vertex(v)) {
        b.vertex_map[v] = image[k].at(v);
        continue;
      }
      // Dummy *u: the stub vertices of L_u attach to F_{n+1} through connectors.
      const auto& block = t.steps[k + 2].blocks.at(VertexId(v.str().substr(1)));
      std::optional<VertexId> target;
      for (const auto& e : t.steps[k + 2].f.edges()) {
        const VertexId* inside = block.count(e.u) ? &e.u : block.count(e.v) ? &e.v : nullptr;
        const VertexId& other = inside == &e.u ? e.v : e.u;
        if (inside && !block.count(other) && from_f.has_vertex(other) && !t.steps[k].f.has_vertex(other)) {
          target = image[k].at(other);
          break;
        }
      }
      if (!target) throw error(errc::construction_invariant_violated, "dummy '" + v.str() + "' has no image");
      b.vertex_map[v] = *target;
    }
    for (const auto& e : fine.edges()) {
      auto a = b.vertex_map.at(e.u), c = b.vertex_map.at(e.v);
      if (a == c) b.edge_map[e.id] = a;
      else if (coarse.has_edge(e.id)) b.edge_map[e.id] = e.id;
      else throw error(errc::construction_invariant_violated, "edge '" + e.id.str() + "' of a truncation has no image");
    }
    out.system.bonds.push_back(std::move(b));

    // The commuting square, read off the truncation bonds.
    std::string bad;
    const std::size_t n = t.steps[k + 1].level;
    for (const auto& v : sys.level(n).vertices())
      if (out.system.bonds.back().image(dummy(v)) != dummy(sys.bond(n - 1).image(v))) bad = v.str();
    out.checks.push_back(detail::check("truncation.bonds_commute", n, bad.empty(), "dummy of '" + bad + "' does not commute"));
  }
  auto report = validate(out.system);
  out.checks.push_back(detail::check("truncation.valid", out.first_level, report.valid,
                                     report.first_violation ? report.first_violation->name + ": " + report.first_violation->detail
                                                            : std::string{}));
  return out;
}

}  // namespace glc
