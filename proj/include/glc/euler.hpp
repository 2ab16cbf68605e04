#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "glc/circuit.hpp"
#include "glc/generators.hpp"
#include "glc/prosys.hpp"

namespace glc {

enum class EulerStatus { closed_certified, open_certified, not_eulerian, undetermined };

inline std::string_view to_string(EulerStatus s) {
  switch (s) {
    case EulerStatus::closed_certified: return "ClosedEulerianCertified";
    case EulerStatus::open_certified: return "OpenEulerianCertified";
    case EulerStatus::not_eulerian: return "NotEulerian";
    case EulerStatus::undetermined: return "Undetermined";
  }
  return "Unknown";
}

struct EulerVerdict {
  EulerStatus status = EulerStatus::undetermined;
  std::size_t depth = 0;
  std::optional<CylinderSet> witness;  // odd cylinder for the closed question
  std::size_t witness_cut_size = 0;
  std::optional<std::pair<VertexThread, VertexThread>> odd_threads;
  std::optional<std::size_t> failing_level;
  std::vector<VertexId> odd_classes;  // odd classes at the failing level
  std::string reason;

  bool certified() const {
    return status == EulerStatus::closed_certified || status == EulerStatus::open_certified;
  }
};

inline EulerVerdict is_closed_eulerian(const InverseSystem& sys) {
  require_valid(sys);
  EulerVerdict v;
  v.depth = sys.depth();
  for (const auto& lvl : level_degree_report(sys)) {
    if (lvl.odd.empty()) continue;
    v.status = EulerStatus::not_eulerian;
    v.failing_level = lvl.level;
    v.odd_classes = lvl.odd;
    v.witness = CylinderSet{lvl.level, {lvl.odd.front()}};
    v.witness_cut_size = cylinder_cut(sys, *v.witness).size();
    v.reason = "class '" + lvl.odd.front().str() + "' at level " + std::to_string(lvl.level) + " has an odd cut";
    return v;
  }
  v.status = EulerStatus::closed_certified;
  return v;
}

// Euler circuit at the deepest level, rooted on the canonical thread and
// projected down. Absent when the system is not certified closed Eulerian.
inline std::optional<CircuitChain> euler_chain(const InverseSystem& sys) {
  if (is_closed_eulerian(sys).status != EulerStatus::closed_certified) return std::nullopt;
  const auto root = canonical_root_thread(sys);
  auto deep = euler_circuit(sys.level(sys.depth()), root.at(sys.depth()));
  if (!deep) return std::nullopt;
  CircuitChain chain;
  chain.circuits.resize(sys.depth() + 1);
  chain.circuits.back() = std::move(*deep);
  for (std::size_t n = sys.depth(); n > 0; --n)
    chain.circuits[n - 1] = project_circuit(sys.bond(n - 1), chain.circuits[n]);
  return chain;
}

// Checks the two properties every chain must have: each member is an Euler
// circuit of its level and each member projects onto the one below.
inline bool is_compatible_chain(const InverseSystem& sys, const CircuitChain& chain) {
  if (chain.circuits.size() != sys.depth() + 1) return false;
  for (std::size_t n = 0; n <= sys.depth(); ++n) {
    if (!is_euler_circuit(sys.level(n), chain.circuits[n])) return false;
    if (n > 0 && project_circuit(sys.bond(n - 1), chain.circuits[n]) != chain.circuits[n - 1]) return false;
  }
  return true;
}

namespace detail {

// Backtracking search for an Euler circuit of the finer level whose
// persistent edges appear in a prescribed order.
struct Lifter {
  const MultiGraph& g;
  std::vector<std::size_t> order;           // fine edge indices of persistent edges, in circuit order
  std::vector<char> contracted;             // per fine edge
  std::vector<std::size_t> fibre_of;        // coarse vertex index per fine vertex
  std::vector<std::size_t> last_visit;      // per coarse vertex: index into `order` after which it is left for good
  std::vector<std::size_t> fibre_contracted;  // unused contracted edges left per coarse vertex
  std::size_t root = 0;
  std::size_t budget = 0;
  std::size_t nodes = 0;
  std::vector<char> used;
  std::vector<std::size_t> path;

  bool go(std::size_t x, std::size_t next) {
    if (++nodes > budget) throw error(errc::too_large, "lift search exceeded its node budget");
    if (next == order.size() && fibre_contracted[fibre_of[x]] == 0) return x == root;
    for (auto e : g.incident(x)) {
      if (used[e]) continue;
      if (contracted[e]) {
        take(e);
        if (go(g.other_end(e, x), next)) return true;
        undo(e);
        continue;
      }
      if (next == order.size() || e != order[next]) continue;
      // Leaving this fibre for the last time strands any contracted edge left in it.
      if (last_visit[fibre_of[x]] == next && fibre_contracted[fibre_of[x]] != 0) continue;
      take(e);
      if (go(g.other_end(e, x), next + 1)) return true;
      undo(e);
    }
    return false;
  }

  void take(std::size_t e) {
    used[e] = 1;
    if (contracted[e]) --fibre_contracted[fibre_of[g.ends(e).first]];
    path.push_back(e);
  }
  void undo(std::size_t e) {
    used[e] = 0;
    if (contracted[e]) ++fibre_contracted[fibre_of[g.ends(e).first]];
    path.pop_back();
  }
};

}  // namespace detail

// Lifts an Euler circuit of level n to one of level n+1 that projects onto it.
inline std::optional<Circuit> lift_circuit(const InverseSystem& sys, std::size_t n, const Circuit& c,
                                           std::size_t node_budget = 50'000'000) {
  const auto& coarse = sys.level(n);
  const auto& fine = sys.level(n + 1);
  const auto& f = sys.bond(n);
  if (!is_euler_circuit(coarse, c)) throw error(errc::invalid_input, "circuit is not an Euler circuit of level " + std::to_string(n));

  detail::Lifter l{fine, {}, std::vector<char>(fine.edge_count(), 0), {}, {}, {}};
  std::vector<std::size_t> preimage(coarse.edge_count());
  for (std::size_t i = 0; i < fine.edge_count(); ++i) {
    const auto& im = f.image(fine.edge_at(i).id);
    if (contracted(im)) {
      l.contracted[i] = 1;
    } else {
      preimage[coarse.edge_index(std::get<EdgeId>(im))] = i;
    }
  }
  for (const auto& e : c.edges) l.order.push_back(preimage[coarse.edge_index(e)]);
  for (std::size_t i = 0; i < fine.vertex_count(); ++i) l.fibre_of.push_back(coarse.vertex_index(f.image(fine.vertex_at(i))));
  l.fibre_contracted.assign(coarse.vertex_count(), 0);
  for (std::size_t i = 0; i < fine.edge_count(); ++i)
    if (l.contracted[i]) ++l.fibre_contracted[l.fibre_of[fine.ends(i).first]];
  // The walk sits in the fibre of c.vertices[i] before taking edge i; it
  // leaves that fibre for the last time at the final such i (never, for the
  // root, since the walk ends there).
  l.last_visit.assign(coarse.vertex_count(), c.edges.size());
  std::vector<char> seen(coarse.vertex_count(), 0);
  for (std::size_t i = c.edges.size(); i-- > 0;) {
    auto w = coarse.vertex_index(c.vertices[i]);
    if (!seen[w]) {
      seen[w] = 1;
      l.last_visit[w] = i;
    }
  }
  l.last_visit[coarse.vertex_index(c.root)] = c.edges.size();
  l.budget = node_budget;
  l.used.assign(fine.edge_count(), 0);

  for (std::size_t r = 0; r < fine.vertex_count(); ++r) {
    if (f.image(fine.vertex_at(r)) != c.root) continue;
    l.root = r;
    l.path.clear();
    if (l.go(r, 0)) {
      std::vector<EdgeId> ids;
      for (auto e : l.path) ids.push_back(fine.edge_at(e).id);
      return make_circuit(fine, fine.vertex_at(r), std::move(ids));
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- counting

struct LevelCount {
  std::size_t level = 0;
  VertexId root;
  std::uint64_t count = 0;
  bool truncated = false;
  std::uint64_t unoriented = 0;  // circuits up to reversal
};

struct InducedMap {
  std::size_t bond = 0;
  std::optional<bool> surjective;  // unknown when the circuit sets are too large to list
  std::optional<bool> injective;
};

struct EulerCounts {
  std::vector<LevelCount> levels;
  std::vector<InducedMap> maps;
};

inline EulerCounts count_euler(const InverseSystem& sys, std::uint64_t cap = 1'000'000'000,
                               std::uint64_t list_limit = 200'000) {
  auto verdict = is_closed_eulerian(sys);
  if (verdict.status != EulerStatus::closed_certified) throw error(errc::refused, "not closed Eulerian: " + verdict.reason);
  const auto root = canonical_root_thread(sys);
  EulerCounts out;
  for (std::size_t n = 0; n <= sys.depth(); ++n) {
    const auto& g = sys.level(n);
    auto c = count_euler_circuits(g, root.at(n), cap);
    // Reversal fixes a rooted circuit only when it has at most one edge.
    std::uint64_t fixed = (!c.truncated && g.edge_count() <= 1) ? c.count : 0;
    out.levels.push_back({n, root.at(n), c.count, c.truncated, c.truncated ? 0 : (c.count + fixed) / 2});
  }
  for (std::size_t n = 0; n < sys.depth(); ++n) {
    InducedMap m{n, std::nullopt, std::nullopt};
    const auto& lo = out.levels[n];
    const auto& hi = out.levels[n + 1];
    if (!lo.truncated && !hi.truncated && lo.count <= list_limit && hi.count <= list_limit) {
      auto low = enumerate_euler_circuits(sys.level(n), root.at(n), list_limit).circuits;
      auto high = enumerate_euler_circuits(sys.level(n + 1), root.at(n + 1), list_limit).circuits;
      std::set<std::vector<EdgeId>> image;
      for (const auto& c : high) image.insert(project_circuit(sys.bond(n), c).edges);
      m.injective = image.size() == high.size();
      m.surjective = image.size() == low.size();
    }
    out.maps.push_back(m);
  }
  return out;
}

enum class DichotomyKind { stabilized_graph, growing_evidence, inconclusive };

inline std::string_view to_string(DichotomyKind k) {
  switch (k) {
    case DichotomyKind::stabilized_graph: return "StabilizedGraph";
    case DichotomyKind::growing_evidence: return "GrowingEvidence";
    case DichotomyKind::inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

struct DichotomyVerdict {
  DichotomyKind kind = DichotomyKind::inconclusive;
  std::size_t level = 0;   // stabilisation level for StabilizedGraph
  std::size_t window = 0;  // bonds inspected for GrowingEvidence
  std::vector<LevelCount> counts;
};

inline bool is_isomorphism(const BondingMap& f, const MultiGraph& fine, const MultiGraph& coarse) {
  if (fine.vertex_count() != coarse.vertex_count() || fine.edge_count() != coarse.edge_count()) return false;
  std::set<VertexId> hit;
  for (const auto& v : fine.vertices()) hit.insert(f.image(v));
  if (hit.size() != coarse.vertex_count()) return false;
  for (const auto& e : fine.edges())
    if (contracted(f.image(e.id))) return false;
  return true;
}

inline DichotomyVerdict dichotomy_probe(const InverseSystem& sys, std::uint64_t cap = 1'000'000'000) {
  DichotomyVerdict v;
  v.counts = count_euler(sys, cap).levels;
  const std::size_t d = sys.depth();
  std::size_t k = d;
  while (k > 0 && is_isomorphism(sys.bond(k - 1), sys.level(k), sys.level(k - 1))) --k;
  if (d == 0 || k < d) {
    v.kind = DichotomyKind::stabilized_graph;
    v.level = k;
    return v;
  }
  v.window = std::min<std::size_t>(2, d);
  bool growing = true;
  for (std::size_t n = d - v.window; n < d; ++n) {
    const auto& a = v.counts[n];
    const auto& b = v.counts[n + 1];
    growing = growing && !b.truncated && !a.truncated && b.count > a.count;
  }
  v.kind = growing ? DichotomyKind::growing_evidence : DichotomyKind::inconclusive;
  return v;
}

// ---------------------------------------------------------------- open case

inline EulerVerdict is_open_eulerian(const InverseSystem& sys) {
  require_valid(sys);
  EulerVerdict v;
  v.depth = sys.depth();
  v.status = EulerStatus::not_eulerian;
  auto report = level_degree_report(sys);
  for (const auto& lvl : report)
    if (lvl.odd.size() > 2) {
      v.failing_level = lvl.level;
      v.odd_classes = lvl.odd;
      v.reason = std::to_string(lvl.odd.size()) + " odd classes at level " + std::to_string(lvl.level);
      return v;
    }
  const auto& deepest = report.back();
  if (deepest.odd.size() != 2) {
    v.failing_level = deepest.level;
    v.odd_classes = deepest.odd;
    v.reason = std::to_string(deepest.odd.size()) + " odd classes at the deepest level, exactly two are required";
    return v;
  }
  auto a = thread_through(sys, sys.depth(), deepest.odd[0]);
  auto b = thread_through(sys, sys.depth(), deepest.odd[1]);
  // Where the two odd points share a class that class is even.
  for (const auto& lvl : report) {
    std::vector<VertexId> expected;
    if (a.at(lvl.level) != b.at(lvl.level)) expected = {a.at(lvl.level), b.at(lvl.level)};
    if (lvl.odd != expected) {
      v.failing_level = lvl.level;
      v.odd_classes = lvl.odd;
      v.reason = "odd classes at level " + std::to_string(lvl.level) + " are not the images of the deepest odd pair";
      return v;
    }
  }
  auto closed = is_closed_eulerian(add_edge(sys, a, b));
  if (closed.status != EulerStatus::closed_certified) {
    v.failing_level = closed.failing_level;
    v.reason = "adding an edge between the odd threads leaves " + closed.reason;
    return v;
  }
  v.status = EulerStatus::open_certified;
  v.odd_threads = std::make_pair(std::move(a), std::move(b));
  return v;
}

struct OpenChain {
  CircuitChain chain;      // chain of the augmented system
  EdgeId marked;           // the added edge
  std::vector<Trail> trails;  // each circuit cut open at the added edge
};

// Rotates a circuit so that it starts right after `at` and drops that edge.
inline Trail cut_open(const Circuit& c, const EdgeId& at) {
  auto it = std::find(c.edges.begin(), c.edges.end(), at);
  if (it == c.edges.end()) throw error(errc::not_found, "edge '" + at.str() + "' is not on the circuit");
  const std::size_t j = static_cast<std::size_t>(it - c.edges.begin());
  const std::size_t k = c.edges.size();
  Trail t;
  t.vertices.push_back(c.vertices[j + 1]);
  for (std::size_t s = 1; s < k; ++s) {
    std::size_t i = (j + s) % k;
    t.edges.push_back(c.edges[i]);
    t.vertices.push_back(c.vertices[i + 1]);
  }
  return t;
}

inline std::optional<OpenChain> open_euler_chain(const InverseSystem& sys) {
  auto v = is_open_eulerian(sys);
  if (v.status != EulerStatus::open_certified) return std::nullopt;
  auto aug = add_edge(sys, v.odd_threads->first, v.odd_threads->second);
  auto chain = euler_chain(aug);
  if (!chain) return std::nullopt;
  OpenChain out;
  for (const auto& e : aug.level(0).edges())
    if (!sys.level(0).has_edge(e.id)) out.marked = e.id;
  for (const auto& c : chain->circuits) out.trails.push_back(cut_open(c, out.marked));
  out.chain = std::move(*chain);
  return out;
}

}  // namespace glc
