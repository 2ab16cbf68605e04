#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "glc/multigraph.hpp"

namespace glc {

// Rooted, oriented closed trail v0 e0 v1 ... e_{k-1} v0. Two circuits are
// equal when their roots and edge sequences agree as written.
struct Circuit {
  VertexId root;
  std::vector<VertexId> vertices;  // k+1 entries, first == last == root
  std::vector<EdgeId> edges;       // k entries

  std::size_t length() const { return edges.size(); }

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.root == b.root && a.edges == b.edges;
  }
  friend bool operator<(const Circuit& a, const Circuit& b) {
    if (a.edges != b.edges) return a.edges < b.edges;
    return a.root < b.root;
  }
};

// Open or closed walk given by its vertex and edge sequences.
struct Trail {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  friend bool operator==(const Trail&, const Trail&) = default;
};

// Builds the vertex sequence of a closed walk from its root and edges.
// Throws InvalidInput when consecutive edges are not incident or the walk
// does not return to the root.
inline Circuit make_circuit(const MultiGraph& g, const VertexId& root, std::vector<EdgeId> edges) {
  Circuit c{root, {root}, std::move(edges)};
  std::size_t cur = g.vertex_index(root);
  for (const auto& id : c.edges) {
    auto e = g.edge_index(id);
    auto [a, b] = g.ends(e);
    if (cur != a && cur != b)
      throw error(errc::invalid_input, "edge '" + id.str() + "' does not continue the walk");
    cur = (cur == a) ? b : a;
    c.vertices.push_back(g.vertex_at(cur));
  }
  if (g.vertex_at(cur) != root) throw error(errc::invalid_input, "walk does not close at its root");
  return c;
}

inline bool is_closed_trail(const MultiGraph& g, const Circuit& c) {
  if (c.vertices.size() != c.edges.size() + 1) return false;
  if (c.vertices.front() != c.root || c.vertices.back() != c.root) return false;
  std::vector<char> used(g.edge_count(), 0);
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    auto e = g.find_edge(c.edges[i]);
    if (!e || used[*e]) return false;
    used[*e] = 1;
    const auto& ed = g.edge_at(*e);
    bool fwd = ed.u == c.vertices[i] && ed.v == c.vertices[i + 1];
    bool bwd = ed.v == c.vertices[i] && ed.u == c.vertices[i + 1];
    if (!fwd && !bwd) return false;
  }
  return g.has_vertex(c.root);
}

inline bool is_euler_circuit(const MultiGraph& g, const Circuit& c) {
  return c.edges.size() == g.edge_count() && is_closed_trail(g, c);
}

// True when all degrees are even and the edges lie in one component that
// contains `root` (or there are no edges at all).
inline bool admits_euler_circuit(const MultiGraph& g, std::size_t root) {
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    if (g.degree_at(i) % 2 == 1) return false;
  if (g.edge_count() == 0) return true;
  if (g.degree_at(root) == 0) return false;
  for (const auto& comp : components(g)) {
    bool has_root = std::binary_search(comp.begin(), comp.end(), root);
    if (has_root) continue;
    for (auto v : comp)
      if (g.degree_at(v) > 0) return false;
  }
  return true;
}

// Hierholzer's algorithm; incident edges are taken in increasing id order.
inline std::optional<Circuit> euler_circuit(const MultiGraph& g, const VertexId& root) {
  const std::size_t r = g.vertex_index(root);
  if (!admits_euler_circuit(g, r)) return std::nullopt;
  std::vector<std::size_t> next(g.vertex_count(), 0);
  std::vector<char> used(g.edge_count(), 0);
  struct Frame {
    std::size_t v;
    std::size_t via;  // edge index used to arrive, or npos
  };
  constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  std::vector<Frame> stack{{r, npos}};
  std::vector<std::size_t> out_v, out_e;
  while (!stack.empty()) {
    auto [v, via] = stack.back();
    auto inc = g.incident(v);
    while (next[v] < inc.size() && used[inc[next[v]]]) ++next[v];
    if (next[v] < inc.size()) {
      auto e = inc[next[v]];
      used[e] = 1;
      stack.push_back({g.other_end(e, v), e});
    } else {
      stack.pop_back();
      out_v.push_back(v);
      if (via != npos) out_e.push_back(via);
    }
  }
  Circuit c;
  c.root = root;
  for (auto it = out_v.rbegin(); it != out_v.rend(); ++it) c.vertices.push_back(g.vertex_at(*it));
  for (auto it = out_e.rbegin(); it != out_e.rend(); ++it) c.edges.push_back(g.edge_at(*it).id);
  return c;
}

struct CircuitList {
  std::vector<Circuit> circuits;
  bool truncated = false;
};

namespace detail {

struct EulerEnumerator {
  const MultiGraph& g;
  std::size_t root;
  std::size_t cap;
  std::vector<char> used;
  std::vector<std::size_t> path_e;
  std::vector<std::size_t> path_v;
  CircuitList out;

  void emit() {
    Circuit c;
    c.root = g.vertex_at(root);
    for (auto v : path_v) c.vertices.push_back(g.vertex_at(v));
    for (auto e : path_e) c.edges.push_back(g.edge_at(e).id);
    out.circuits.push_back(std::move(c));
  }

  // Returns false once the cap is exceeded.
  bool go(std::size_t x) {
    if (path_e.size() == g.edge_count()) {
      if (x != root) return true;
      if (out.circuits.size() == cap) {
        out.truncated = true;
        return false;
      }
      emit();
      return true;
    }
    for (auto e : g.incident(x)) {
      if (used[e]) continue;
      used[e] = 1;
      auto y = g.other_end(e, x);
      path_e.push_back(e);
      path_v.push_back(y);
      bool keep_going = go(y);
      path_e.pop_back();
      path_v.pop_back();
      used[e] = 0;
      if (!keep_going) return false;
    }
    return true;
  }
};

}  // namespace detail

// All rooted, oriented Euler circuits in lexicographic order of their edge-id
// sequences, stopping after `cap` circuits.
inline CircuitList enumerate_euler_circuits(const MultiGraph& g, const VertexId& root,
                                            std::size_t cap = 1'000'000) {
  const std::size_t r = g.vertex_index(root);
  detail::EulerEnumerator en{g, r, cap, std::vector<char>(g.edge_count(), 0), {}, {r}, {}};
  if (!admits_euler_circuit(g, r)) return {};
  en.go(r);
  return std::move(en.out);
}

struct CircuitCount {
  std::uint64_t count = 0;  // exact unless truncated, then equal to the cap
  bool truncated = false;
};

namespace detail {

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return (a > std::numeric_limits<std::uint64_t>::max() - b) ? std::numeric_limits<std::uint64_t>::max()
                                                             : a + b;
}

// Memoised count over used-edge masks. The current vertex is a function of
// the mask (it is the unique other odd vertex of the used subgraph, or the
// root), so the mask alone keys the table.
struct MaskCounter {
  const MultiGraph& g;
  std::size_t root;
  std::uint64_t full;
  std::size_t budget;
  bool overflow = false;
  std::unordered_map<std::uint64_t, std::uint64_t> memo;

  std::uint64_t go(std::size_t x, std::uint64_t mask) {
    if (mask == full) return x == root ? 1 : 0;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    std::uint64_t total = 0;
    for (auto e : g.incident(x)) {
      if (mask >> e & 1U) continue;
      total = sat_add(total, go(g.other_end(e, x), mask | (std::uint64_t{1} << e)));
      if (overflow) return 0;
    }
    if (memo.size() >= budget) {
      overflow = true;
      return 0;
    }
    memo.emplace(mask, total);
    return total;
  }
};

struct PlainCounter {
  const MultiGraph& g;
  std::size_t root;
  std::uint64_t limit;
  std::vector<char> used;
  std::size_t depth = 0;
  std::uint64_t found = 0;

  void go(std::size_t x) {
    if (found > limit) return;
    if (depth == g.edge_count()) {
      if (x == root) ++found;
      return;
    }
    for (auto e : g.incident(x)) {
      if (used[e]) continue;
      used[e] = 1;
      ++depth;
      go(g.other_end(e, x));
      --depth;
      used[e] = 0;
      if (found > limit) return;
    }
  }
};

}  // namespace detail

// Number of rooted, oriented Euler circuits. Exact for graphs with at most 64
// edges whenever the memo stays within `state_budget`; otherwise falls back
// to a backtracking count that stops at `cap`.
inline CircuitCount count_euler_circuits(const MultiGraph& g, const VertexId& root,
                                         std::uint64_t cap = 1'000'000,
                                         std::size_t state_budget = 20'000'000) {
  const std::size_t r = g.vertex_index(root);
  if (!admits_euler_circuit(g, r)) return {0, false};
  if (g.edge_count() <= 64) {
    std::uint64_t full =
        g.edge_count() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.edge_count()) - 1;
    detail::MaskCounter mc{g, r, full, state_budget};
    auto n = mc.go(r, 0);
    if (!mc.overflow) return n > cap ? CircuitCount{cap, true} : CircuitCount{n, false};
  }
  detail::PlainCounter pc{g, r, cap, std::vector<char>(g.edge_count(), 0)};
  pc.go(r);
  return pc.found > cap ? CircuitCount{cap, true} : CircuitCount{pc.found, false};
}

// Greedy decomposition into edge-disjoint cycles: close the least uncovered
// edge through a shortest path in the remaining edges.
inline std::vector<Circuit> cycle_decomposition(const MultiGraph& g) {
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    if (g.degree_at(i) % 2 == 1)
      throw error(errc::odd_cut_present,
                  "vertex '" + g.vertex_at(i).str() + "' has odd degree " + std::to_string(g.degree_at(i)));
  std::vector<char> used(g.edge_count(), 0);
  std::vector<Circuit> out;
  constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  for (std::size_t first = 0; first < g.edge_count(); ++first) {
    if (used[first]) continue;
    used[first] = 1;
    auto [a, b] = g.ends(first);
    if (a == b) {
      out.push_back(make_circuit(g, g.vertex_at(a), {g.edge_at(first).id}));
      continue;
    }
    // BFS from b back to a through unused edges.
    std::vector<std::size_t> via(g.vertex_count(), npos);
    std::vector<char> seen(g.vertex_count(), 0);
    std::deque<std::size_t> queue{b};
    seen[b] = 1;
    while (!queue.empty() && !seen[a]) {
      auto x = queue.front();
      queue.pop_front();
      for (auto e : g.incident(x)) {
        if (used[e]) continue;
        auto y = g.other_end(e, x);
        if (seen[y]) continue;
        seen[y] = 1;
        via[y] = e;
        queue.push_back(y);
      }
    }
    if (!seen[a])
      throw error(errc::odd_cut_present, "edge '" + g.edge_at(first).id.str() + "' lies on no cycle");
    std::vector<EdgeId> edges{g.edge_at(first).id};
    std::vector<std::size_t> back;
    for (std::size_t x = a; x != b; x = g.other_end(via[x], x)) back.push_back(via[x]);
    for (auto it = back.rbegin(); it != back.rend(); ++it) {
      used[*it] = 1;
      edges.push_back(g.edge_at(*it).id);
    }
    out.push_back(make_circuit(g, g.vertex_at(a), std::move(edges)));
  }
  return out;
}

}  // namespace glc
