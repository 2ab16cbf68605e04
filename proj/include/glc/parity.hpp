#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glc/flow.hpp"
#include "glc/prosys.hpp"

namespace glc {

enum class FibreParity { all_even, all_odd, mixed };

inline std::string_view to_string(FibreParity p) {
  switch (p) {
    case FibreParity::all_even: return "AllEven";
    case FibreParity::all_odd: return "AllOdd";
    case FibreParity::mixed: return "Mixed";
  }
  return "Unknown";
}

// Parity of |∂C| over every C with v ∈ C ⊆ F, by listing all such C.
inline FibreParity parity_oracle(const MultiGraph& g, const VertexSet& f, const VertexId& v,
                                 std::size_t bound = 12) {
  if (!f.count(v)) throw error(errc::invalid_input, "v is not in the fibre");
  if (f.size() > bound)
    throw error(errc::too_large, "fibre has " + std::to_string(f.size()) + " vertices, bound is " + std::to_string(bound));
  std::vector<std::size_t> others;
  for (const auto& w : f)
    if (w != v) others.push_back(g.vertex_index(w));
  std::vector<char> in(g.vertex_count(), 0);
  in[g.vertex_index(v)] = 1;
  bool seen_even = false, seen_odd = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others.size()); ++mask) {
    for (std::size_t i = 0; i < others.size(); ++i) in[others[i]] = (mask >> i) & 1U;
    (cut_size(g, in) % 2 ? seen_odd : seen_even) = true;
    if (seen_even && seen_odd) return FibreParity::mixed;
  }
  return seen_odd ? FibreParity::all_odd : FibreParity::all_even;
}

// The same answer read off degrees: |∂C| ≡ Σ_{c∈C} deg c (mod 2).
inline FibreParity degree_parity_criterion(const MultiGraph& g, const VertexSet& f, const VertexId& v) {
  if (!f.count(v)) throw error(errc::invalid_input, "v is not in the fibre");
  for (const auto& w : f)
    if (w != v && degree(g, w) % 2 == 1) return FibreParity::mixed;
  return degree(g, v) % 2 ? FibreParity::all_odd : FibreParity::all_even;
}

// ---------------------------------------------------------------- vertex parity

enum class ParityKind { even_certified, odd_certified, neither_certified, undetermined };

inline std::string_view to_string(ParityKind k) {
  switch (k) {
    case ParityKind::even_certified: return "EvenCertified";
    case ParityKind::odd_certified: return "OddCertified";
    case ParityKind::neither_certified: return "NeitherCertified";
    case ParityKind::undetermined: return "Undetermined";
  }
  return "Unknown";
}

// Two cylinders containing the thread point, inside the fibre of v_n, whose
// cuts have opposite parity.
struct ParityWitness {
  std::size_t neighbourhood = 0;
  CylinderSet first, second;
  std::size_t first_cut = 0, second_cut = 0;
};

struct ParityOptions {
  std::size_t window = 3;        // levels a neighbourhood must be probed on
  std::size_t oracle_bound = 0;  // cross-check fibres up to this size; 0 disables
};

struct ParityVerdict {
  ParityKind kind = ParityKind::undetermined;
  std::size_t level = 0;  // neighbourhood level for the certified kinds
  std::size_t depth = 0;
  std::size_t window = 0;
  std::vector<ParityWitness> witnesses;  // one per candidate neighbourhood, for NeitherCertified
  std::size_t oracle_checks = 0;
};

namespace detail {

inline FibreParity parity_on_levels(const InverseSystem& sys, const VertexThread& t, std::size_t n,
                                    std::size_t depth, const ParityOptions& opt, std::size_t& checks) {
  std::optional<FibreParity> seen;
  for (std::size_t m = n; m <= depth; ++m) {
    const auto& g = sys.level(m);
    auto f = fiber(sys, m, {n, {t.at(n)}});
    auto p = degree_parity_criterion(g, f, t.at(m));
    if (opt.oracle_bound > 0 && f.size() <= opt.oracle_bound) {
      ++checks;
      if (parity_oracle(g, f, t.at(m), opt.oracle_bound) != p)
        throw error(errc::construction_invariant_violated, "degree criterion disagrees with the subset oracle");
    }
    if (p == FibreParity::mixed || (seen && *seen != p)) return FibreParity::mixed;
    seen = p;
  }
  return *seen;
}

inline ParityWitness neither_witness(const InverseSystem& sys, const VertexThread& t, std::size_t n,
                                     std::size_t depth) {
  auto single = [&](std::size_t m) { return CylinderSet{m, {t.at(m)}}; };
  // Prefer the two thread cells at consecutive levels whose cuts differ in parity.
  std::optional<std::size_t> fallback;
  for (std::size_t m = n; m < depth; ++m) {
    auto a = cylinder_cut(sys, single(m)).size();
    auto b = cylinder_cut(sys, single(m + 1)).size();
    if (a % 2 != b % 2) {
      if (a > 0 && b > 0) return {n, single(m), single(m + 1), a, b};
      if (!fallback) fallback = m;
    }
  }
  if (fallback) {
    auto m = *fallback;
    return {n, single(m), single(m + 1), cylinder_cut(sys, single(m)).size(), cylinder_cut(sys, single(m + 1)).size()};
  }
  // Otherwise some fibre holds an odd companion w: {v_m} and {v_m, w} differ.
  for (std::size_t m = n; m <= depth; ++m) {
    const auto& g = sys.level(m);
    for (const auto& w : fiber(sys, m, {n, {t.at(n)}}))
      if (w != t.at(m) && degree(g, w) % 2 == 1) {
        CylinderSet pair{m, {t.at(m), w}};
        return {n, single(m), pair, cylinder_cut(sys, single(m)).size(), cylinder_cut(sys, pair).size()};
      }
  }
  throw error(errc::construction_invariant_violated, "no parity witness inside a failing neighbourhood");
}

}  // namespace detail

inline ParityVerdict vertex_parity(const InverseSystem& sys, const VertexThread& t, std::size_t depth,
                                   const ParityOptions& opt = {}) {
  check_thread(sys, t, depth);
  ParityVerdict v;
  v.depth = depth;
  v.window = std::clamp<std::size_t>(opt.window, 1, depth + 1);
  const std::size_t last = depth + 1 - v.window;  // deepest candidate with a full window
  for (std::size_t n = 0; n <= last; ++n) {
    auto p = detail::parity_on_levels(sys, t, n, depth, opt, v.oracle_checks);
    if (p != FibreParity::mixed) {
      v.kind = p == FibreParity::all_even ? ParityKind::even_certified : ParityKind::odd_certified;
      v.level = n;
      return v;
    }
  }
  // Neighbourhoods deeper than `last` are seen on too few levels to count.
  v.kind = ParityKind::neither_certified;
  for (std::size_t n = 0; n <= last; ++n) v.witnesses.push_back(detail::neither_witness(sys, t, n, depth));
  return v;
}

// ---------------------------------------------------------------- degree

enum class StrongKind { strongly_even, strongly_odd, unstable, undetermined };

inline std::string_view to_string(StrongKind k) {
  switch (k) {
    case StrongKind::strongly_even: return "StronglyEven";
    case StrongKind::strongly_odd: return "StronglyOdd";
    case StrongKind::unstable: return "Unstable";
    case StrongKind::undetermined: return "Undetermined";
  }
  return "Unknown";
}

struct StrongDegreeVerdict {
  StrongKind kind = StrongKind::undetermined;
  std::size_t value = 0;  // the stable arc count for the strong kinds
  std::size_t depth = 0;
  std::size_t window = 0;
  std::vector<std::size_t> arcs;  // D(A_k) for k = 0..depth
};

// D(A_k): least, over probed levels m >= k, of the number of edge-disjoint
// paths from outside the fibre of v_k to v_m.
inline std::size_t neighbourhood_arcs(const InverseSystem& sys, const VertexThread& t, std::size_t k, std::size_t depth) {
  std::optional<std::size_t> best;
  for (std::size_t m = k; m <= depth; ++m) {
    const auto& g = sys.level(m);
    auto inside = fiber(sys, m, {k, {t.at(k)}});
    VertexSet outside;
    for (const auto& w : g.vertices())
      if (!inside.count(w)) outside.insert(w);
    std::size_t d = outside.empty() ? 0 : max_edge_disjoint_paths(g, outside, {t.at(m)}).k;
    best = best ? std::min(*best, d) : d;
  }
  return *best;
}

inline StrongDegreeVerdict strong_degree(const InverseSystem& sys, const VertexThread& t, std::size_t depth,
                                         std::size_t window = 3) {
  check_thread(sys, t, depth);
  StrongDegreeVerdict v;
  v.depth = depth;
  // D(A_depth) sees the deepest level only, so the window ends one level up.
  const std::size_t last = depth > 0 ? depth - 1 : 0;
  v.window = std::clamp<std::size_t>(window, 1, last + 1);
  for (std::size_t k = 0; k <= depth; ++k) v.arcs.push_back(neighbourhood_arcs(sys, t, k, depth));
  const std::size_t from = last + 1 - v.window;
  bool same_value = true, same_parity = true;
  for (std::size_t k = from; k <= last; ++k) {
    same_value = same_value && v.arcs[k] == v.arcs[from];
    same_parity = same_parity && v.arcs[k] % 2 == v.arcs[from] % 2;
  }
  if (!same_parity) {
    v.kind = StrongKind::unstable;
  } else if (!same_value) {
    v.kind = StrongKind::undetermined;
  } else {
    v.value = v.arcs[from];
    v.kind = v.value % 2 ? StrongKind::strongly_odd : StrongKind::strongly_even;
  }
  return v;
}

enum class WeakKind { weakly_even, weakly_odd, both, undetermined };

inline std::string_view to_string(WeakKind k) {
  switch (k) {
    case WeakKind::weakly_even: return "WeaklyEven";
    case WeakKind::weakly_odd: return "WeaklyOdd";
    case WeakKind::both: return "Both";
    case WeakKind::undetermined: return "Undetermined";
  }
  return "Unknown";
}

// Weakly even means not strongly odd, and the other way round.
inline WeakKind weak_degree(const InverseSystem& sys, const VertexThread& t, std::size_t depth, std::size_t window = 3) {
  switch (strong_degree(sys, t, depth, window).kind) {
    case StrongKind::strongly_even: return WeakKind::weakly_even;
    case StrongKind::strongly_odd: return WeakKind::weakly_odd;
    case StrongKind::unstable: return WeakKind::both;
    case StrongKind::undetermined: return WeakKind::undetermined;
  }
  return WeakKind::undetermined;
}

}  // namespace glc
