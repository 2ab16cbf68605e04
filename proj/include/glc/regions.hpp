#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "glc/prosys.hpp"

namespace glc {

// A connected set of cells at one level together with its cut.
struct Region {
  std::size_t level = 0;
  VertexSet cells;
  std::vector<EdgeId> boundary;

  std::size_t size() const { return boundary.size(); }
  bool odd() const { return boundary.size() % 2 == 1; }
  friend bool operator==(const Region& a, const Region& b) { return a.level == b.level && a.cells == b.cells; }
};

inline Region make_region(const InverseSystem& sys, std::size_t level, VertexSet cells) {
  const auto& g = sys.level(level);
  if (cells.empty()) throw error(errc::invalid_input, "a region needs at least one cell");
  if (!induced_connected(g, membership(g, cells)))
    throw error(errc::invalid_input, "cells do not induce a connected subgraph at level " + std::to_string(level));
  auto c = cut(g, cells);
  return {level, std::move(cells), std::move(c.boundary)};
}

inline std::vector<Region> regions_within(const InverseSystem& sys, std::size_t level, const VertexSet& w) {
  const auto& g = sys.level(level);
  std::vector<Region> out;
  for (const auto& comp : components(g, membership(g, w))) out.push_back(make_region(sys, level, to_set(g, comp)));
  return out;
}

namespace detail {

// Cells of one level indexed 0..k-1 with bitmask adjacency, for exhaustive
// search over connected subsets.
class CellSpace {
 public:
  CellSpace(const MultiGraph& g, const VertexSet& cells) : g_(g) {
    for (const auto& c : cells) idx_.push_back(g.vertex_index(c));
    pos_.assign(g.vertex_count(), npos);
    for (std::size_t i = 0; i < idx_.size(); ++i) pos_[idx_[i]] = i;
    adj_.assign(idx_.size(), 0);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      auto [a, b] = g.ends(e);
      if (a == b || pos_[a] == npos || pos_[b] == npos) continue;
      adj_[pos_[a]] |= std::uint64_t{1} << pos_[b];
      adj_[pos_[b]] |= std::uint64_t{1} << pos_[a];
    }
  }

  std::size_t count() const { return idx_.size(); }
  std::uint64_t full() const { return count() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count()) - 1; }

  bool connected(std::uint64_t mask) const {
    if (mask == 0) return false;
    std::uint64_t seen = mask & (~mask + 1), frontier = seen;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) next |= adj_[static_cast<std::size_t>(std::countr_zero(f))];
      next &= mask & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen == mask;
  }

  std::size_t boundary(std::uint64_t mask) const {
    std::size_t n = 0;
    for (std::size_t e = 0; e < g_.edge_count(); ++e) {
      auto [a, b] = g_.ends(e);
      n += in(mask, a) != in(mask, b);
    }
    return n;
  }

  VertexSet cells(std::uint64_t mask) const {
    VertexSet s;
    for (std::size_t i = 0; i < idx_.size(); ++i)
      if (mask >> i & 1U) s.insert(g_.vertex_at(idx_[i]));
    return s;
  }

  std::uint64_t mask_of(const VertexSet& s) const {
    std::uint64_t m = 0;
    for (const auto& v : s) {
      auto p = pos_[g_.vertex_index(v)];
      if (p == npos) throw error(errc::invalid_input, "cell '" + v.str() + "' is outside the search space");
      m |= std::uint64_t{1} << p;
    }
    return m;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  bool in(std::uint64_t mask, std::size_t v) const { return pos_[v] != npos && (mask >> pos_[v] & 1U); }

  const MultiGraph& g_;
  std::vector<std::size_t> idx_;
  std::vector<std::size_t> pos_;
  std::vector<std::uint64_t> adj_;
};

inline bool region_less(const Region& a, const Region& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.cells.begin(), a.cells.end(), b.cells.begin(), b.cells.end());
}

}  // namespace detail

// Every region whose cells lie in `within`, listed by increasing bitmask over
// the sorted cells. Throws TooLarge above `bound` cells.
inline std::vector<Region> connected_subregions(const InverseSystem& sys, std::size_t level, const VertexSet& within,
                                                std::size_t bound = 16) {
  if (within.size() > bound)
    throw error(errc::too_large, std::to_string(within.size()) + " cells exceed the exact search bound " + std::to_string(bound));
  detail::CellSpace space(sys.level(level), within);
  std::vector<Region> out;
  for (std::uint64_t mask = 1; mask <= space.full(); ++mask)
    if (space.connected(mask)) out.push_back(make_region(sys, level, space.cells(mask)));
  return out;
}

struct RegionSearchOptions {
  std::size_t exact_bound = 16;
  bool allow_fallback = true;
  bool strict = true;  // exclude `within` itself
  std::function<bool(const VertexSet&)> accept;
};

struct RegionSearch {
  std::optional<Region> region;
  bool exact = true;
};

// Odd region inside `within` with the fewest boundary edges; ties go to the
// lexicographically least cell list.
inline RegionSearch minimal_odd_region(const InverseSystem& sys, std::size_t level, const VertexSet& within,
                                       const RegionSearchOptions& opt = {}) {
  const auto& g = sys.level(level);
  RegionSearch res;
  auto consider = [&](const VertexSet& cells) {
    if (cells.empty() || (opt.strict && cells == within)) return;
    if (opt.accept && !opt.accept(cells)) return;
    if (cut(g, cells).size() % 2 == 0) return;
    if (!induced_connected(g, membership(g, cells))) return;
    auto r = make_region(sys, level, cells);
    if (!res.region || detail::region_less(r, *res.region)) res.region = std::move(r);
  };
  if (within.size() <= opt.exact_bound) {
    detail::CellSpace space(g, within);
    for (std::uint64_t mask = 1; mask <= space.full(); ++mask) {
      if (!space.connected(mask) || space.boundary(mask) % 2 == 0) continue;
      consider(space.cells(mask));
    }
    return res;
  }
  if (!opt.allow_fallback)
    throw error(errc::too_large, std::to_string(within.size()) + " cells exceed the exact search bound");
  // Refine by single cells: each cell, and each component left after removing one.
  res.exact = false;
  for (const auto& v : within) {
    consider({v});
    VertexSet rest = within;
    rest.erase(v);
    for (const auto& comp : components(g, membership(g, rest))) consider(to_set(g, comp));
  }
  for (const auto& comp : components(g, membership(g, within))) consider(to_set(g, comp));
  return res;
}

// ---------------------------------------------------------------- chase

struct ChaseStep {
  std::size_t level = 0;
  Region region;
  std::optional<EdgeId> avoided;  // e_n, the edge kept out of the region
  bool odd = false;
  bool nested = false;
  bool not_smaller = false;
  bool not_smaller_exact = true;
  bool edge_excluded = false;
};

struct ChaseResult {
  std::vector<ChaseStep> steps;  // one per level, first at the first level with an odd class
  VertexThread thread;
  bool complete = false;  // every level reached and every condition holds
};

// Whether edge `e` (a deepest-level id) lies inside `cells` at `level`.
inline bool edge_inside(const InverseSystem& sys, const BondingMap& down, std::size_t level, const EdgeId& e,
                        const VertexSet& cells) {
  const auto& im = down.image(e);
  if (auto v = std::get_if<VertexId>(&im)) return cells.count(*v) > 0;
  const auto& edge = sys.level(level).edge(std::get<EdgeId>(im));
  return cells.count(edge.u) && cells.count(edge.v);
}

inline ChaseResult odd_region_chase(const InverseSystem& sys, std::size_t depth, const RegionSearchOptions& base = {}) {
  require_valid(sys);
  if (depth > sys.depth()) throw error(errc::not_found, "chase deeper than the system");
  std::optional<std::size_t> first;
  for (std::size_t n = 0; n <= depth && !first; ++n)
    if (!odd_vertices(sys.level(n)).empty()) first = n;
  if (!first) throw error(errc::no_odd_cut, "every level is even through depth " + std::to_string(depth));

  const auto& deepest = sys.level(depth);
  ChaseResult out;
  RegionSearchOptions opt = base;
  opt.strict = false;
  auto top = minimal_odd_region(sys, *first, all_vertices(sys.level(*first)), opt);
  ChaseStep s0;
  s0.level = *first;
  s0.region = *top.region;
  s0.odd = s0.nested = s0.not_smaller = s0.edge_excluded = true;
  s0.not_smaller_exact = top.exact;
  out.steps.push_back(s0);

  for (std::size_t j = 0; *first + j < depth; ++j) {
    const auto& prev = out.steps.back().region;
    const std::size_t level = *first + j + 1;
    const auto room = fiber(sys, level, {prev.level, prev.cells});
    const auto down = compose(sys, depth, level);
    std::optional<EdgeId> avoid;
    if (j < deepest.edge_count()) avoid = deepest.edge_at(j).id;
    RegionSearchOptions step = opt;
    step.accept = [&](const VertexSet& c) {
      return (!avoid || !edge_inside(sys, down, level, *avoid, c)) && (!base.accept || base.accept(c));
    };
    auto found = minimal_odd_region(sys, level, room, step);
    if (!found.region) return out;
    ChaseStep s;
    s.level = level;
    s.region = *found.region;
    s.avoided = avoid;
    s.odd = s.region.odd();
    s.nested = std::includes(room.begin(), room.end(), s.region.cells.begin(), s.region.cells.end());
    s.edge_excluded = !avoid || !edge_inside(sys, down, level, *avoid, s.region.cells);
    // Regions D with U_{j+1} ⊆ D ⊆ U_j must not have a smaller cut than U_j.
    s.not_smaller = true;
    VertexSet extra;
    std::set_difference(room.begin(), room.end(), s.region.cells.begin(), s.region.cells.end(),
                        std::inserter(extra, extra.end()));
    const auto& g = sys.level(level);
    auto check = [&](const VertexSet& d) {
      if (induced_connected(g, membership(g, d)) && cut(g, d).size() < prev.size()) s.not_smaller = false;
    };
    if (extra.size() <= opt.exact_bound) {
      std::vector<VertexId> ex(extra.begin(), extra.end());
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ex.size()); ++mask) {
        VertexSet d = s.region.cells;
        for (std::size_t i = 0; i < ex.size(); ++i)
          if (mask >> i & 1U) d.insert(ex[i]);
        check(d);
      }
    } else {
      s.not_smaller_exact = false;
      check(s.region.cells);
      check(room);
      for (const auto& v : extra) {
        VertexSet d = s.region.cells;
        d.insert(v);
        check(d);
      }
    }
    out.steps.push_back(std::move(s));
  }
  const auto& last = out.steps.back().region;
  out.thread = thread_through(sys, last.level, *last.cells.begin());
  out.complete = out.steps.back().level == depth;
  for (const auto& s : out.steps) out.complete = out.complete && s.odd && s.nested && s.not_smaller && s.edge_excluded;
  return out;
}

// ---------------------------------------------------------------- contraction

struct ContractedSystem {
  InverseSystem system;
  std::vector<std::map<VertexId, VertexId>> quotient;  // per level: old vertex -> new vertex
};

// Contracts each member of `m` (disjoint cell sets at `level`) to one vertex
// at every level from `level` down to the deepest, dropping edges inside a
// member. Above `level` the images of members are merged, together with any
// members whose images meet, so the bonds stay simplicial.
inline ContractedSystem contract_regions(const InverseSystem& sys, std::size_t level, const std::vector<VertexSet>& m) {
  require_valid(sys);
  {
    VertexSet seen;
    for (const auto& cells : m)
      for (const auto& c : cells) {
        (void)sys.level(level).vertex_index(c);
        if (!seen.insert(c).second) throw error(errc::invalid_partition, "cell '" + c.str() + "' lies in two regions");
      }
  }
  const std::size_t d = sys.depth();
  // groups[n]: the cell sets to contract at level n.
  std::vector<std::vector<VertexSet>> groups(d + 1);
  for (std::size_t n = level; n <= d; ++n)
    for (const auto& cells : m) groups[n].push_back(fiber(sys, n, {level, cells}));
  for (std::size_t n = level; n-- > 0;) {
    // Merge overlapping images by union-find over the groups below.
    const auto& below = groups[n + 1];
    std::vector<VertexSet> imgs;
    for (const auto& s : below) {
      VertexSet img;
      for (const auto& v : s) img.insert(sys.bond(n).image(v));
      imgs.push_back(std::move(img));
    }
    std::vector<std::size_t> parent(imgs.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t i = 0; i < imgs.size(); ++i)
      for (std::size_t j = i + 1; j < imgs.size(); ++j) {
        bool meet = std::any_of(imgs[i].begin(), imgs[i].end(), [&](const VertexId& v) { return imgs[j].count(v) > 0; });
        if (meet) parent[find(i)] = find(j);
      }
    std::map<std::size_t, VertexSet> merged;
    for (std::size_t i = 0; i < imgs.size(); ++i) merged[find(i)].insert(imgs[i].begin(), imgs[i].end());
    for (auto& [r, s] : merged)
      if (s.size() > 1) groups[n].push_back(std::move(s));
  }

  ContractedSystem out;
  out.quotient.resize(d + 1);
  std::vector<std::map<EdgeId, bool>> kept(d + 1);
  for (std::size_t n = 0; n <= d; ++n) {
    const auto& g = sys.level(n);
    std::vector<VertexSet> partition;
    VertexSet covered;
    for (const auto& s : groups[n]) {
      partition.push_back(s);
      covered.insert(s.begin(), s.end());
    }
    for (const auto& v : g.vertices())
      if (!covered.count(v)) partition.push_back({v});
    auto c = contract(g, partition);
    for (const auto& v : g.vertices()) out.quotient[n][v] = c.vertex_image.at(v);
    for (const auto& e : g.edges()) kept[n][e.id] = c.graph.has_edge(e.id);
    out.system.levels.push_back(std::move(c.graph));
  }
  for (std::size_t n = 0; n < d; ++n) {
    const auto& f = sys.bond(n);
    BondingMap nf;
    for (const auto& [v, w] : out.quotient[n + 1]) nf.vertex_map[w] = out.quotient[n].at(f.image(v));
    for (const auto& e : sys.level(n + 1).edges()) {
      if (!kept[n + 1][e.id]) continue;
      const auto& im = f.image(e.id);
      if (auto le = std::get_if<EdgeId>(&im); le && kept[n][*le]) {
        nf.edge_map[e.id] = *le;
      } else {
        // Either contracted already or swallowed by a merged vertex above.
        nf.edge_map[e.id] = nf.vertex_map.at(out.quotient[n + 1].at(e.u));
      }
    }
    out.system.bonds.push_back(std::move(nf));
  }
  return out;
}

// ---------------------------------------------------------------- nested regions

struct ComponentsReport {
  bool ok = true;
  std::size_t m = 0;
  std::vector<Region> components;  // of R minus S
  std::optional<Region> counterexample;
  std::string detail;
};

// For m-regions S ⊆ R at one level: R ∖ S has at most m components and
// each has an even cut.
inline ComponentsReport components_even_check(const InverseSystem& sys, std::size_t level, const Region& s,
                                              const Region& r) {
  if (!std::includes(r.cells.begin(), r.cells.end(), s.cells.begin(), s.cells.end()))
    throw error(errc::invalid_input, "S is not inside R");
  if (s.size() != r.size()) throw error(errc::invalid_input, "S and R have different cut sizes");
  ComponentsReport rep;
  rep.m = r.size();
  VertexSet diff;
  std::set_difference(r.cells.begin(), r.cells.end(), s.cells.begin(), s.cells.end(), std::inserter(diff, diff.end()));
  if (diff.empty()) return rep;
  rep.components = regions_within(sys, level, diff);
  if (rep.components.size() > rep.m) {
    rep.ok = false;
    rep.detail = std::to_string(rep.components.size()) + " components, more than m";
  }
  for (const auto& c : rep.components)
    if (c.odd()) {
      rep.ok = false;
      rep.counterexample = c;
      rep.detail = "component with odd cut " + std::to_string(c.size());
      break;
    }
  return rep;
}

// ---------------------------------------------------------------- machine

struct MachineOptions {
  std::size_t threshold = 8;     // more cells than this at the deepest level counts as infinite
  std::size_t exact_bound = 16;  // cells in the exhaustive search
  std::size_t probe_cap = 64;    // ℓ-regions probed for check (iii)
  std::size_t isolation_window = 2;  // levels a cell must stay alone to count as isolated
};

struct MachineReport {
  std::size_t work_level = 0;
  std::size_t threshold = 0;
  std::size_t infinite_regions = 0;            // infinite m-regions found inside U
  std::size_t already_covered = 0;             // of those, covered by the family up to finitely many cells
  std::vector<std::string> cleaning_failures;  // regions the cleaning step could not straighten
  bool isolated_even = true;                   // (i)
  bool no_small_infinite = true;               // (ii)
  bool probes_ok = true;                       // (iii)
  std::size_t probes = 0;
  std::vector<ComponentsReport> chains;  // nested pairs of collected regions
  std::vector<std::string> notes;

  bool passed() const {
    bool chains_ok = std::all_of(chains.begin(), chains.end(), [](const auto& c) { return c.ok; });
    return isolated_even && no_small_infinite && probes_ok && chains_ok && cleaning_failures.empty();
  }
};

struct MachineResult {
  std::vector<Region> contracted;  // M, at the work level
  ContractedSystem system;
  MachineReport report;
};

namespace detail {

inline std::size_t deep_size(const InverseSystem& sys, std::size_t level, const VertexSet& cells) {
  return fiber(sys, sys.depth(), {level, cells}).size();
}

// A cell whose ancestor `window` levels up (never above `top`) has a one-cell
// fibre on every level through the deepest.
inline bool isolated_cell(const InverseSystem& sys, std::size_t level, const VertexId& c, std::size_t top,
                          std::size_t window) {
  const std::size_t from = level >= top + window ? level - window : top;
  return deep_size(sys, from, {project_vertex(sys, level, from, c)}) == 1;
}

}  // namespace detail

inline MachineResult contraction_machine(const InverseSystem& input, const Region& u, std::size_t m,
                                         std::size_t depth, const MachineOptions& opt = {}) {
  if (depth > input.depth()) throw error(errc::not_found, "machine deeper than the system");
  const InverseSystem sys = truncate(input, depth);
  require_valid(sys);
  if (m == 0 || m % 2 == 1) throw error(errc::invalid_input, "m must be even and positive");
  const auto& top = sys.level(u.level);
  if (!induced_connected(top, membership(top, u.cells)) || cut(top, u.cells).size() % 2 == 0)
    throw error(errc::invalid_input, "U must be an odd region");

  MachineResult res;
  auto& rep = res.report;
  rep.threshold = opt.threshold;
  std::size_t s = u.level;
  if (fiber(sys, s, {u.level, u.cells}).size() > opt.exact_bound)
    throw error(errc::too_large, "U has more cells than the exact search bound");
  while (s < depth && fiber(sys, s + 1, {u.level, u.cells}).size() <= opt.exact_bound) ++s;
  rep.work_level = s;
  const auto& g = sys.level(s);
  const VertexSet inside = fiber(sys, s, {u.level, u.cells});
  detail::CellSpace space(g, inside);
  auto infinite = [&](const VertexSet& c) { return detail::deep_size(sys, s, c) > opt.threshold; };

  // Preconditions, read through the finite proxy.
  for (const auto& c : inside)
    if (detail::isolated_cell(sys, s, c, u.level, opt.isolation_window) && degree(g, c) % 2 == 1)
      throw error(errc::precondition_violated, "isolated cell '" + c.str() + "' has odd degree " + std::to_string(degree(g, c)));
  std::vector<std::uint64_t> m_regions;
  for (std::uint64_t mask = 1; mask < space.full(); ++mask) {
    if (!space.connected(mask)) continue;
    auto b = space.boundary(mask);
    if (b > m) continue;
    auto cells = space.cells(mask);
    if (!infinite(cells)) continue;
    if (b < m)
      throw error(errc::precondition_violated,
                  "infinite " + std::to_string(b) + "-region with " + std::to_string(cells.size()) + " cells inside U");
    m_regions.push_back(mask);
  }
  rep.infinite_regions = m_regions.size();
  rep.notes.push_back("infinite means more than " + std::to_string(opt.threshold) + " cells at level " +
                      std::to_string(depth) + "; U itself is exempt from the small-region precondition");

  // Cleaning and families, largest regions first. A region already covered
  // by the family up to finitely many cells needs no cleaning.
  std::stable_sort(m_regions.begin(), m_regions.end(),
                   [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) > std::popcount(b); });
  auto is_m_region = [&](std::uint64_t mask) { return mask && space.connected(mask) && space.boundary(mask) == m; };
  std::vector<std::uint64_t> family;
  for (auto r : m_regions) {
    std::uint64_t covered = 0;
    for (auto sm : family) covered |= sm;
    if (!(r & ~covered) || !infinite(space.cells(r & ~covered))) {
      ++rep.already_covered;
      continue;
    }
    bool failed = false;
    for (std::size_t guard = 0; guard < 4 * family.size() + 4; ++guard) {
      auto split = std::find_if(family.begin(), family.end(), [&](std::uint64_t sm) { return (r & sm) && (sm & ~r); });
      if (split == family.end()) break;
      if (is_m_region(r | *split)) {
        r |= *split;
      } else if (is_m_region(r & ~*split)) {
        r &= ~*split;
      } else {
        failed = true;
        break;
      }
    }
    if (failed) {
      std::string names;
      for (const auto& c : space.cells(r)) names += (names.empty() ? "" : ",") + c.str();
      rep.cleaning_failures.push_back(names);
      continue;
    }
    std::vector<std::uint64_t> next{r};
    for (auto sm : family)
      if (!(sm & r)) next.push_back(sm);
    family = std::move(next);
  }
  std::sort(family.begin(), family.end());
  for (auto sm : family) res.contracted.push_back(make_region(sys, s, space.cells(sm)));
  for (auto a : m_regions)
    for (auto b : m_regions)
      if (a != b && (a & b) == a)
        rep.chains.push_back(components_even_check(sys, s, make_region(sys, s, space.cells(a)), make_region(sys, s, space.cells(b))));

  std::vector<VertexSet> groups;
  for (const auto& r : res.contracted) groups.push_back(r.cells);
  res.system = contract_regions(sys, s, groups);
  const auto& csys = res.system.system;
  const auto& q = res.system.quotient[s];
  const auto& h = csys.level(s);

  // (i) contracted vertices are even; untouched isolated cells keep their degree.
  for (const auto& r : res.contracted)
    if (degree(h, q.at(*r.cells.begin())) % 2 == 1) rep.isolated_even = false;
  for (const auto& c : inside)
    if (detail::isolated_cell(sys, s, c, u.level, opt.isolation_window) && degree(h, q.at(c)) != degree(g, c) &&
        std::none_of(res.contracted.begin(), res.contracted.end(), [&](const Region& r) { return r.cells.count(c) > 0; }))
      rep.isolated_even = false;

  // (ii) no infinite <= m-region strictly inside the image of U.
  VertexSet image;
  for (const auto& c : inside) image.insert(q.at(c));
  detail::CellSpace after(h, image);
  for (std::uint64_t mask = 1; mask < after.full(); ++mask) {
    if (!after.connected(mask) || after.boundary(mask) > m) continue;
    if (detail::deep_size(csys, s, after.cells(mask)) > opt.threshold) rep.no_small_infinite = false;
  }

  // (iii) each probed ℓ-region maps onto a <= ℓ-region up to finitely many cells.
  std::vector<std::uint64_t> probes;
  for (std::uint64_t mask = 1; mask <= space.full(); ++mask)
    if (space.connected(mask)) probes.push_back(mask);
  const std::size_t stride = std::max<std::size_t>(1, probes.size() / opt.probe_cap);
  for (std::size_t i = 0; i < probes.size() && rep.probes < opt.probe_cap; i += stride) {
    ++rep.probes;
    const auto d = space.cells(probes[i]);
    const std::size_t ell = space.boundary(probes[i]);
    VertexSet pd, split;
    for (const auto& c : d) pd.insert(q.at(c));
    for (const auto& r : res.contracted) {
      bool meets = std::any_of(r.cells.begin(), r.cells.end(), [&](const VertexId& c) { return d.count(c) > 0; });
      bool covers = std::includes(d.begin(), d.end(), r.cells.begin(), r.cells.end());
      if (meets && !covers) split.insert(q.at(*r.cells.begin()));
    }
    auto finite_gap = [&](const VertexSet& dp) {
      VertexSet gap;
      std::set_difference(pd.begin(), pd.end(), dp.begin(), dp.end(), std::inserter(gap, gap.end()));
      return gap.empty() || detail::deep_size(csys, s, gap) <= opt.threshold;
    };
    auto good = [&](const VertexSet& dp) {
      return !dp.empty() && induced_connected(h, membership(h, dp)) && cut(h, dp).size() <= ell && finite_gap(dp);
    };
    std::vector<VertexSet> candidates{pd};
    VertexSet trimmed;
    std::set_difference(pd.begin(), pd.end(), split.begin(), split.end(), std::inserter(trimmed, trimmed.end()));
    candidates.push_back(trimmed);
    for (const auto& base : {pd, trimmed})
      for (const auto& comp : components(h, membership(h, base))) candidates.push_back(to_set(h, comp));
    bool ok = detail::deep_size(csys, s, pd) <= opt.threshold ||
              std::any_of(candidates.begin(), candidates.end(), good);
    if (!ok) {
      rep.probes_ok = false;
      std::string names;
      for (const auto& c : d) names += (names.empty() ? "" : ",") + c.str();
      rep.notes.push_back("probe {" + names + "} has no <= " + std::to_string(ell) + "-region image");
    }
  }
  return res;
}

}  // namespace glc
