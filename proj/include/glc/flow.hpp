#pragma once

#include <deque>
#include <limits>
#include <vector>

#include "glc/circuit.hpp"
#include "glc/multigraph.hpp"

namespace glc {

struct FlowResult {
  std::size_t k = 0;
  std::vector<Trail> paths;  // pairwise edge-disjoint A-B paths
  VertexSet source_side;     // a minimum cut side containing A
};

namespace detail {

// Unit-capacity undirected max flow. Every non-loop edge becomes a pair of
// opposite arcs that are each other's residual, which is the usual way of
// letting one unit cross an undirected edge in either direction.
class UnitFlow {
 public:
  UnitFlow(const MultiGraph& g, const std::vector<char>& in_a, const std::vector<char>& in_b)
      : g_(g), n_(g.vertex_count()), s_(n_), t_(n_ + 1), adj_(n_ + 2) {
    edge_arc_.assign(g.edge_count(), npos);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      auto [a, b] = g.ends(e);
      if (a == b) continue;
      edge_arc_[e] = add_pair(a, b, 1, 1);
    }
    const int inf = static_cast<int>(g.edge_count()) + 1;
    for (std::size_t v = 0; v < n_; ++v) {
      if (in_a[v]) add_pair(s_, v, inf, 0);
      if (in_b[v]) add_pair(v, t_, inf, 0);
    }
  }

  std::size_t run() {
    std::size_t flow = 0;
    while (augment()) ++flow;
    return flow;
  }

  // Net flow across edge e: +1 from its first to its second endpoint, -1 the
  // other way, 0 when unused.
  int net(std::size_t e) const {
    if (edge_arc_[e] == npos) return 0;
    return 1 - arcs_[edge_arc_[e]].cap;
  }

  std::vector<char> residual_reach() const {
    std::vector<char> seen(n_ + 2, 0);
    std::deque<std::size_t> q{s_};
    seen[s_] = 1;
    while (!q.empty()) {
      auto x = q.front();
      q.pop_front();
      for (auto a : adj_[x])
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          q.push_back(arcs_[a].to);
        }
    }
    return seen;
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  struct Arc {
    std::size_t to;
    int cap;
  };

  std::size_t add_pair(std::size_t a, std::size_t b, int cap_ab, int cap_ba) {
    std::size_t id = arcs_.size();
    arcs_.push_back({b, cap_ab});
    arcs_.push_back({a, cap_ba});
    adj_[a].push_back(id);
    adj_[b].push_back(id + 1);
    return id;
  }

  bool augment() {
    std::vector<std::size_t> via(n_ + 2, npos);
    std::vector<char> seen(n_ + 2, 0);
    std::deque<std::size_t> q{s_};
    seen[s_] = 1;
    while (!q.empty() && !seen[t_]) {
      auto x = q.front();
      q.pop_front();
      for (auto a : adj_[x]) {
        auto y = arcs_[a].to;
        if (arcs_[a].cap <= 0 || seen[y]) continue;
        seen[y] = 1;
        via[y] = a;
        q.push_back(y);
      }
    }
    if (!seen[t_]) return false;
    for (std::size_t x = t_; x != s_;) {
      auto a = via[x];
      arcs_[a].cap -= 1;
      arcs_[a ^ 1U].cap += 1;
      x = arcs_[a ^ 1U].to;
    }
    return true;
  }

  const MultiGraph& g_;
  std::size_t n_, s_, t_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> edge_arc_;
};

}  // namespace detail

// Edge-disjoint A-B paths by unit-capacity max flow; k equals the minimum
// |∂S| over S ⊇ A with S ∩ B = ∅.
inline FlowResult max_edge_disjoint_paths(const MultiGraph& g, const VertexSet& a, const VertexSet& b) {
  if (a.empty() || b.empty()) throw error(errc::invalid_separation, "A and B must be nonempty");
  auto in_a = membership(g, a);
  auto in_b = membership(g, b);
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (in_a[v] && in_b[v])
      throw error(errc::invalid_separation, "A and B share vertex '" + g.vertex_at(v).str() + "'");

  detail::UnitFlow flow(g, in_a, in_b);
  FlowResult res;
  res.k = flow.run();
  auto reach = flow.residual_reach();
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (reach[v]) res.source_side.insert(g.vertex_at(v));

  // Decompose: orient each flow-carrying edge, then walk out of A along
  // unconsumed arcs until B is reached, erasing any cycle met on the way.
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::size_t>> out(n);  // edge indices leaving v
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    int f = flow.net(e);
    if (f == 0) continue;
    auto [x, y] = g.ends(e);
    out[f > 0 ? x : y].push_back(e);
  }
  std::vector<std::size_t> pos(n, 0);
  std::vector<int> excess(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    int o = static_cast<int>(out[v].size()), i = 0;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      int f = flow.net(e);
      if (f == 0) continue;
      auto [x, y] = g.ends(e);
      if ((f > 0 ? y : x) == v) ++i;
    }
    excess[v] = o - i;
  }
  std::vector<char> used(g.edge_count(), 0);
  for (std::size_t start = 0; start < n && res.paths.size() < res.k; ++start) {
    if (!in_a[start]) continue;
    while (excess[start] > 0 && res.paths.size() < res.k) {
      std::vector<std::size_t> vs{start}, es;
      std::vector<std::size_t> index_of(n, std::numeric_limits<std::size_t>::max());
      index_of[start] = 0;
      std::size_t x = start;
      // Walk until a B vertex that has absorbed flow is reached.
      while (!(in_b[x] && excess[x] < 0)) {
        while (pos[x] < out[x].size() && used[out[x][pos[x]]]) ++pos[x];
        auto e = out[x][pos[x]];
        used[e] = 1;
        auto y = g.other_end(e, x);
        if (index_of[y] != std::numeric_limits<std::size_t>::max()) {
          // Cycle: drop the loop portion.
          std::size_t keep = index_of[y];
          for (std::size_t j = keep + 1; j < vs.size(); ++j)
            index_of[vs[j]] = std::numeric_limits<std::size_t>::max();
          vs.resize(keep + 1);
          es.resize(keep);
        } else {
          index_of[y] = vs.size();
          vs.push_back(y);
          es.push_back(e);
        }
        x = y;
      }
      excess[start] -= 1;
      excess[x] += 1;
      // Trim to the segment after the last A vertex and up to the first B.
      std::size_t lo = 0;
      for (std::size_t j = 0; j < vs.size(); ++j)
        if (in_a[vs[j]]) lo = j;
      std::size_t hi = lo;
      while (!in_b[vs[hi]]) ++hi;
      Trail t;
      for (std::size_t j = lo; j <= hi; ++j) t.vertices.push_back(g.vertex_at(vs[j]));
      for (std::size_t j = lo; j < hi; ++j) t.edges.push_back(g.edge_at(es[j]).id);
      res.paths.push_back(std::move(t));
    }
  }
  return res;
}

}  // namespace glc
