#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "glc/error.hpp"
#include "glc/ids.hpp"

namespace glc {

struct Edge {
  EdgeId id;
  VertexId u;
  VertexId v;

  bool is_loop() const { return u == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Finite multigraph with parallel edges and loops. Immutable once built.
// Vertices and edges are kept sorted by id; every algorithm walks them in
// that order, which is what makes outputs reproducible.
class MultiGraph {
 public:
  MultiGraph() = default;

  MultiGraph(std::vector<VertexId> vertices, std::vector<Edge> edges)
      : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
      throw error(errc::invalid_input, "duplicate vertex id");
    for (auto& e : edges_)
      if (e.v < e.u) std::swap(e.u, e.v);
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < edges_.size(); ++i)
      if (edges_[i].id == edges_[i - 1].id)
        throw error(errc::invalid_input, "duplicate edge id '" + edges_[i].id.str() + "'");
    ends_.reserve(edges_.size());
    incident_.assign(vertices_.size(), {});
    degree_.assign(vertices_.size(), 0);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      auto a = find_vertex(edges_[i].u);
      auto b = find_vertex(edges_[i].v);
      if (!a || !b)
        throw error(errc::not_found, "edge '" + edges_[i].id.str() + "' has an undeclared endpoint");
      ends_.emplace_back(*a, *b);
      incident_[*a].push_back(i);
      if (*b != *a) incident_[*b].push_back(i);
      degree_[*a] += 1;
      degree_[*b] += 1;
    }
  }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const VertexId> vertices() const noexcept { return vertices_; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::optional<std::size_t> find_vertex(const VertexId& v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }
  std::size_t vertex_index(const VertexId& v) const {
    auto i = find_vertex(v);
    if (!i) throw error(errc::not_found, "unknown vertex '" + v.str() + "'");
    return *i;
  }
  bool has_vertex(const VertexId& v) const { return find_vertex(v).has_value(); }

  std::optional<std::size_t> find_edge(const EdgeId& e) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e,
                               [](const Edge& a, const EdgeId& id) { return a.id < id; });
    if (it == edges_.end() || it->id != e) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }
  std::size_t edge_index(const EdgeId& e) const {
    auto i = find_edge(e);
    if (!i) throw error(errc::not_found, "unknown edge '" + e.str() + "'");
    return *i;
  }
  bool has_edge(const EdgeId& e) const { return find_edge(e).has_value(); }
  const Edge& edge(const EdgeId& e) const { return edges_[edge_index(e)]; }

  // Dense-index views used by the algorithms.
  const VertexId& vertex_at(std::size_t i) const { return vertices_[i]; }
  const Edge& edge_at(std::size_t i) const { return edges_[i]; }
  std::pair<std::size_t, std::size_t> ends(std::size_t edge) const { return ends_[edge]; }
  std::size_t other_end(std::size_t edge, std::size_t from) const {
    auto [a, b] = ends_[edge];
    return a == from ? b : a;
  }
  // Incident edge indices in increasing id order; a loop is listed once.
  std::span<const std::size_t> incident(std::size_t vertex) const { return incident_[vertex]; }
  std::size_t degree_at(std::size_t vertex) const { return degree_[vertex]; }

  friend bool operator==(const MultiGraph& a, const MultiGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::pair<std::size_t, std::size_t>> ends_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::size_t> degree_;
};

struct Cut {
  VertexSet side;
  std::vector<EdgeId> boundary;  // sorted by id

  std::size_t size() const { return boundary.size(); }
  bool odd() const { return boundary.size() % 2 == 1; }
};

inline std::size_t degree(const MultiGraph& g, const VertexId& v) {
  return g.degree_at(g.vertex_index(v));
}

// Membership mask over dense vertex indices; throws NotFound on unknown ids.
inline std::vector<char> membership(const MultiGraph& g, const VertexSet& s) {
  std::vector<char> in(g.vertex_count(), 0);
  for (const auto& v : s) in[g.vertex_index(v)] = 1;
  return in;
}

inline Cut cut(const MultiGraph& g, const VertexSet& s) {
  auto in = membership(g, s);
  Cut c;
  c.side = s;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    auto [a, b] = g.ends(i);
    if (in[a] != in[b]) c.boundary.push_back(g.edge_at(i).id);
  }
  return c;
}

inline std::size_t cut_size(const MultiGraph& g, const std::vector<char>& in) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    auto [a, b] = g.ends(i);
    if (in[a] != in[b]) ++n;
  }
  return n;
}

// Connected components of the subgraph induced on `in` (all vertices when
// `in` is empty). Components are returned in order of their least vertex.
inline std::vector<std::vector<std::size_t>> components(const MultiGraph& g,
                                                        const std::vector<char>& in = {}) {
  const std::size_t n = g.vertex_count();
  auto member = [&](std::size_t v) { return in.empty() || in[v]; };
  std::vector<char> seen(n, 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s] || !member(s)) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      std::size_t x = comp[head];
      for (auto e : g.incident(x)) {
        std::size_t y = g.other_end(e, x);
        if (!seen[y] && member(y)) {
          seen[y] = 1;
          comp.push_back(y);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

inline bool is_connected(const MultiGraph& g) {
  return g.vertex_count() > 0 && components(g).size() == 1;
}

inline bool induced_connected(const MultiGraph& g, const std::vector<char>& in) {
  std::size_t members = static_cast<std::size_t>(std::count(in.begin(), in.end(), 1));
  if (members == 0) return false;
  return components(g, in).size() == 1;
}

inline std::vector<VertexId> odd_vertices(const MultiGraph& g) {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    if (g.degree_at(i) % 2 == 1) out.push_back(g.vertex_at(i));
  return out;
}

// Provenance of an edge under contract(): kept as a cross edge, or dropped
// inside the cell with the given index.
struct EdgeFate {
  bool kept = true;
  std::size_t cell = 0;
  friend bool operator==(const EdgeFate&, const EdgeFate&) = default;
};

struct Contraction {
  MultiGraph graph;
  std::vector<VertexId> cell_names;
  std::map<VertexId, VertexId> vertex_image;
  std::map<EdgeId, EdgeFate> provenance;
};

// Quotient by a partition. Each cell becomes one vertex named by `names[i]`,
// or by the least id in the cell when no names are given.
inline Contraction contract(const MultiGraph& g, const std::vector<VertexSet>& partition,
                            const std::vector<VertexId>& names = {}) {
  if (!names.empty() && names.size() != partition.size())
    throw error(errc::invalid_partition, "name count does not match cell count");
  std::vector<std::size_t> cell_of(g.vertex_count(), partition.size());
  Contraction out;
  for (std::size_t c = 0; c < partition.size(); ++c) {
    if (partition[c].empty()) throw error(errc::invalid_partition, "empty cell");
    for (const auto& v : partition[c]) {
      auto i = g.find_vertex(v);
      if (!i) throw error(errc::invalid_partition, "cell mentions unknown vertex '" + v.str() + "'");
      if (cell_of[*i] != partition.size())
        throw error(errc::invalid_partition, "vertex '" + v.str() + "' lies in two cells");
      cell_of[*i] = c;
    }
    out.cell_names.push_back(names.empty() ? *partition[c].begin() : names[c]);
  }
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    if (cell_of[i] == partition.size())
      throw error(errc::invalid_partition, "vertex '" + g.vertex_at(i).str() + "' is not covered");
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    out.vertex_image[g.vertex_at(i)] = out.cell_names[cell_of[i]];
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    auto [a, b] = g.ends(i);
    const auto& e = g.edge_at(i);
    if (cell_of[a] != cell_of[b]) {
      kept.push_back({e.id, out.cell_names[cell_of[a]], out.cell_names[cell_of[b]]});
      out.provenance[e.id] = {true, 0};
    } else {
      out.provenance[e.id] = {false, cell_of[a]};
    }
  }
  out.graph = MultiGraph(out.cell_names, std::move(kept));
  return out;
}

inline bool boundary_submodularity(const MultiGraph& g, const VertexSet& y, const VertexSet& z) {
  auto in_y = membership(g, y);
  auto in_z = membership(g, z);
  const std::size_t n = g.vertex_count();
  std::vector<char> meet(n), join(n), y_minus(n), z_minus(n);
  for (std::size_t i = 0; i < n; ++i) {
    meet[i] = in_y[i] && in_z[i];
    join[i] = in_y[i] || in_z[i];
    y_minus[i] = in_y[i] && !in_z[i];
    z_minus[i] = in_z[i] && !in_y[i];
  }
  std::size_t lhs = cut_size(g, in_y) + cut_size(g, in_z);
  std::size_t rhs = std::max(cut_size(g, meet) + cut_size(g, join),
                             cut_size(g, y_minus) + cut_size(g, z_minus));
  return lhs >= rhs;
}

// Induced subgraph on a vertex subset, keeping edges with both ends inside.
inline MultiGraph induced_subgraph(const MultiGraph& g, const VertexSet& s) {
  auto in = membership(g, s);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    auto [a, b] = g.ends(i);
    if (in[a] && in[b]) edges.push_back(g.edge_at(i));
  }
  return MultiGraph({s.begin(), s.end()}, std::move(edges));
}

inline VertexSet to_set(const MultiGraph& g, const std::vector<std::size_t>& idx) {
  VertexSet s;
  for (auto i : idx) s.insert(g.vertex_at(i));
  return s;
}

inline VertexSet all_vertices(const MultiGraph& g) {
  return {g.vertices().begin(), g.vertices().end()};
}

}  // namespace glc
