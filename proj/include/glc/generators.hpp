#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "glc/prosys.hpp"

namespace glc {

// ---------------------------------------------------------------- small graphs

inline MultiGraph named_graph(const std::string& name) {
  if (name == "triangle") return MultiGraph({"a", "b", "c"}, {{"ab", "a", "b"}, {"bc", "b", "c"}, {"ca", "c", "a"}});
  if (name == "path2" || name == "single-edge") return MultiGraph({"a", "b"}, {{"ab", "a", "b"}});
  if (name == "path3") return MultiGraph({"a", "b", "c"}, {{"ab", "a", "b"}, {"bc", "b", "c"}});
  if (name == "digon") return MultiGraph({"a", "b"}, {{"e1", "a", "b"}, {"e2", "a", "b"}});
  if (name == "c4")
    return MultiGraph({"a", "b", "c", "d"}, {{"ab", "a", "b"}, {"bc", "b", "c"}, {"cd", "c", "d"}, {"da", "d", "a"}});
  if (name == "figure8") return MultiGraph({"o"}, {{"l1", "o", "o"}, {"l2", "o", "o"}});
  if (name == "loop") return MultiGraph({"o"}, {{"l1", "o", "o"}});
  if (name == "point") return MultiGraph({"o"}, {});
  throw error(errc::invalid_spec, "unknown builtin graph '" + name + "'");
}

// ---------------------------------------------------------------- helpers

namespace detail {

inline std::string pad(std::size_t k, int width = 2) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, k);
  return buf;
}

inline std::vector<std::string> words(std::size_t n) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> next;
    for (const auto& w : out) {
      next.push_back(w + "0");
      next.push_back(w + "1");
    }
    out = std::move(next);
  }
  return out;
}

inline std::vector<std::string> words_upto(std::size_t n) {  // lengths 0..n-1
  std::vector<std::string> out;
  for (std::size_t l = 0; l < n; ++l)
    for (auto& w : words(l)) out.push_back(w);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------- generators

inline InverseSystem constant_system(const MultiGraph& g, std::size_t depth) {
  InverseSystem s;
  s.levels.assign(depth + 1, g);
  s.bonds.assign(depth, BondingMap::identity(g));
  return s;
}

// Cantor construction: classes are the 2^n level-n intervals; each tree node
// w of depth < n contributes edge "e"+w joining its interval's two endpoint
// classes w0…0 and w1…1. With `doubled`, every node contributes an upper and
// a lower copy ("u"+w, "d"+w).
inline InverseSystem cantor_system(std::size_t depth, bool doubled) {
  InverseSystem s;
  for (std::size_t n = 0; n <= depth; ++n) {
    std::vector<VertexId> vs;
    for (const auto& w : detail::words(n)) vs.emplace_back("c" + w);
    std::vector<Edge> es;
    for (const auto& w : detail::words_upto(n)) {
      std::string a = "c" + w + std::string(n - w.size(), '0');
      std::string b = "c" + w + std::string(n - w.size(), '1');
      if (doubled) {
        es.push_back({"u" + w, a, b});
        es.push_back({"d" + w, a, b});
      } else {
        es.push_back({"e" + w, a, b});
      }
    }
    s.levels.emplace_back(std::move(vs), std::move(es));
  }
  for (std::size_t n = 0; n < depth; ++n) {
    BondingMap f;
    for (const auto& v : s.levels[n + 1].vertices()) f.vertex_map[v] = VertexId(v.str().substr(0, n + 1));
    for (const auto& e : s.levels[n + 1].edges()) {
      std::string w = e.id.str().substr(1);
      if (w.size() < n)
        f.edge_map[e.id] = e.id;
      else
        f.edge_map[e.id] = VertexId("c" + w);
    }
    s.bonds.push_back(std::move(f));
  }
  return s;
}

inline InverseSystem cbs_system(std::size_t depth) { return cantor_system(depth, false); }
inline InverseSystem cbc_system(std::size_t depth) { return cantor_system(depth, true); }

namespace detail {

inline std::string ladder_vertex(char side, long i, long n) {
  if (i < -n) return "L";
  if (i > n) return "R";
  return std::string(1, side) + std::to_string(i);
}

struct LadderEdge {
  std::string id;
  char su;
  long iu;
  char sv;
  long iv;
};

inline std::string signed_index(long i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%+03ld", i);
  return buf;
}

// Edges of the infinite ladder touching indices in [-n-1, n+1]. Ids start
// with the edge's birth level (least |index| of its ends), so id order
// enumerates the ladder from the middle outwards.
inline std::vector<LadderEdge> ladder_edges(long n) {
  std::vector<LadderEdge> out;
  auto birth = [](long a, long b) { return std::min(std::labs(a), std::labs(b)); };
  auto make = [&](char kind, long i, char su, long iu, char sv, long iv) {
    out.push_back({"e" + pad(static_cast<std::size_t>(birth(iu, iv))) + "." + kind + signed_index(i), su, iu, sv, iv});
  };
  for (long i = -n - 2; i <= n + 1; ++i) {
    make('R', i, 't', i, 'b', i);
    make('T', i, 't', i, 't', i + 1);
    make('B', i, 'b', i, 'b', i + 1);
    make('D', i, 't', i, 'b', i + 1);
  }
  return out;
}

}  // namespace detail

// Two-way infinite ladder with single diagonals; level n keeps rungs -n..n and
// contracts each side beyond into a dummy end class ("L", "R").
inline InverseSystem ladder_system(std::size_t depth) {
  InverseSystem s;
  for (std::size_t un = 0; un <= depth; ++un) {
    long n = static_cast<long>(un);
    std::vector<VertexId> vs{"L", "R"};
    for (long i = -n; i <= n; ++i) {
      vs.emplace_back("t" + std::to_string(i));
      vs.emplace_back("b" + std::to_string(i));
    }
    std::vector<Edge> es;
    for (const auto& e : detail::ladder_edges(n)) {
      auto a = detail::ladder_vertex(e.su, e.iu, n);
      auto b = detail::ladder_vertex(e.sv, e.iv, n);
      bool same_dummy = a == b && (a == "L" || a == "R");
      if (!same_dummy) es.push_back({e.id, a, b});
    }
    s.levels.emplace_back(std::move(vs), std::move(es));
  }
  for (std::size_t un = 0; un < depth; ++un) {
    long n = static_cast<long>(un);
    BondingMap f;
    const auto& up = s.levels[un + 1];
    const auto& low = s.levels[un];
    auto down = [&](const VertexId& v) -> VertexId {
      const auto& str = v.str();
      if (str == "L" || str == "R") return v;
      long i = std::stol(str.substr(1));
      return detail::ladder_vertex(str[0], i, n);
    };
    for (const auto& v : up.vertices()) f.vertex_map[v] = down(v);
    for (const auto& e : up.edges()) {
      if (low.has_edge(e.id))
        f.edge_map[e.id] = e.id;
      else
        f.edge_map[e.id] = down(e.u);
    }
    s.bonds.push_back(std::move(f));
  }
  return s;
}

// Dyadic circle chain: classes are the closed gaps "g"+w between circles at
// dyadic points of denominator <= 2^n; the circle at point p1 is a pair of
// parallel edges joining gap p01…1 to gap p10…0.
inline InverseSystem xl_dyadic_system(std::size_t depth) {
  InverseSystem s;
  for (std::size_t n = 0; n <= depth; ++n) {
    std::vector<VertexId> vs;
    for (const auto& w : detail::words(n)) vs.emplace_back("g" + w);
    std::vector<Edge> es;
    for (const auto& p : detail::words_upto(n)) {
      std::string c = p + "1";
      std::size_t rest = n - c.size();
      std::string a = "g" + p + "0" + std::string(rest, '1');
      std::string b = "g" + p + "1" + std::string(rest, '0');
      es.push_back({"u." + c, a, b});
      es.push_back({"d." + c, a, b});
    }
    s.levels.emplace_back(std::move(vs), std::move(es));
  }
  for (std::size_t n = 0; n < depth; ++n) {
    BondingMap f;
    for (const auto& v : s.levels[n + 1].vertices()) f.vertex_map[v] = VertexId(v.str().substr(0, n + 1));
    for (const auto& e : s.levels[n + 1].edges()) {
      std::string c = e.id.str().substr(2);
      if (c.size() <= n)
        f.edge_map[e.id] = e.id;
      else
        f.edge_map[e.id] = VertexId("g" + c.substr(0, c.size() - 1));
    }
    s.bonds.push_back(std::move(f));
  }
  return s;
}

// Hawaiian earring: base "o" plus the n largest loops at level n. Subdivided
// loops use midpoint "m"+k and edges "c"+k+".a", "c"+k+".b"; raw loops are
// single edges "c"+k.
inline InverseSystem hawaiian_system(std::size_t depth, bool subdivided = true) {
  InverseSystem s;
  for (std::size_t n = 0; n <= depth; ++n) {
    std::vector<VertexId> vs{"o"};
    std::vector<Edge> es;
    for (std::size_t k = 1; k <= n; ++k) {
      std::string tag = detail::pad(k);
      if (subdivided) {
        vs.emplace_back("m" + tag);
        es.push_back({"c" + tag + ".a", "o", "m" + tag});
        es.push_back({"c" + tag + ".b", "m" + tag, "o"});
      } else {
        es.push_back({"c" + tag, "o", "o"});
      }
    }
    s.levels.emplace_back(std::move(vs), std::move(es));
  }
  for (std::size_t n = 0; n < depth; ++n) {
    BondingMap f;
    std::string fresh = detail::pad(n + 1);
    for (const auto& v : s.levels[n + 1].vertices())
      f.vertex_map[v] = v.str() == "m" + fresh ? VertexId("o") : v;
    for (const auto& e : s.levels[n + 1].edges()) {
      if (e.id.str().substr(1, 2) == fresh)
        f.edge_map[e.id] = VertexId("o");
      else
        f.edge_map[e.id] = e.id;
    }
    s.bonds.push_back(std::move(f));
  }
  return s;
}

// Chain of circles tangent at t_1, t_2, … converging to the limit class "z".
// Circle k is a pair of parallel edges t_{k-1}–t_k plus a chord when
// pattern[k-1] == '1'; at level n the tangency t_n is absorbed into "z".
inline InverseSystem tangent_chain_system(std::size_t depth, const std::string& pattern) {
  if (pattern.size() < depth) throw error(errc::invalid_spec, "pattern shorter than depth");
  for (char ch : pattern)
    if (ch != '0' && ch != '1') throw error(errc::invalid_spec, "pattern must be a bit string");
  auto tv = [](std::size_t k, std::size_t n) { return k >= n ? VertexId("z") : VertexId("t" + detail::pad(k)); };
  InverseSystem s;
  for (std::size_t n = 0; n <= depth; ++n) {
    std::vector<VertexId> vs{"z"};
    for (std::size_t k = 0; k < n; ++k) vs.push_back(tv(k, n));
    std::vector<Edge> es;
    for (std::size_t k = 1; k <= n; ++k) {
      std::string tag = "k" + detail::pad(k);
      es.push_back({tag + ".u", tv(k - 1, n), tv(k, n)});
      es.push_back({tag + ".d", tv(k - 1, n), tv(k, n)});
      if (pattern[k - 1] == '1') es.push_back({tag + ".c", tv(k - 1, n), tv(k, n)});
    }
    s.levels.emplace_back(std::move(vs), std::move(es));
  }
  for (std::size_t n = 0; n < depth; ++n) {
    BondingMap f;
    for (const auto& v : s.levels[n + 1].vertices())
      f.vertex_map[v] = v == tv(n, n + 1) ? VertexId("z") : v;
    std::string fresh = "k" + detail::pad(n + 1);
    for (const auto& e : s.levels[n + 1].edges())
      f.edge_map[e.id] = e.id.str().rfind(fresh, 0) == 0 ? EdgeImage(VertexId("z")) : EdgeImage(e.id);
    s.bonds.push_back(std::move(f));
  }
  return s;
}

// C4 on x, y, z, v; level 1 blows v up into the triangle v1 v2 v3 with yv
// landing on v1 and zv on v2; each further level blows the last triangle
// corner up into a new triangle.
inline InverseSystem figure1_system(std::size_t depth) {
  InverseSystem s;
  s.levels.push_back(MultiGraph({"v", "x", "y", "z"},
                                {{"xy", "x", "y"}, {"xz", "x", "z"}, {"yv", "y", "v"}, {"zv", "z", "v"}}));
  std::string split = "v";
  for (std::size_t n = 1; n <= depth; ++n) {
    const auto& low = s.levels.back();
    std::string a = split + "1", b = split + "2", c = split + "3";
    std::vector<VertexId> vs;
    for (const auto& v : low.vertices())
      if (v.str() != split) vs.push_back(v);
    vs.insert(vs.end(), {a, b, c});
    std::vector<Edge> es;
    BondingMap f;
    for (const auto& v : vs) f.vertex_map[v] = (v == a || v == b || v == c) ? VertexId(split) : v;
    // The split vertex has exactly two incident edges; the smaller id goes to
    // the first corner, the larger to the second.
    std::vector<EdgeId> at;
    for (const auto& e : low.edges())
      if (e.u.str() == split || e.v.str() == split) at.push_back(e.id);
    for (const auto& e : low.edges()) {
      Edge ne = e;
      if (e.id == at[0] || e.id == at[1]) {
        const VertexId& corner = e.id == at[0] ? a : b;
        if (ne.u.str() == split) ne.u = corner; else ne.v = corner;
      }
      es.push_back(ne);
      f.edge_map[e.id] = e.id;
    }
    for (auto [p, q] : {std::pair{a, b}, std::pair{a, c}, std::pair{b, c}}) {
      EdgeId id(p + q);
      es.push_back({id, p, q});
      f.edge_map[id] = VertexId(split);
    }
    s.levels.emplace_back(std::move(vs), std::move(es));
    s.bonds.push_back(std::move(f));
    split = c;
  }
  return s;
}

// ---------------------------------------------------------------- random

// Portable draws on top of mt19937_64 (distribution objects are not
// reproducible across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : eng_() % n; }
  bool coin() { return (eng_() >> 17) & 1U; }

 private:
  std::mt19937_64 eng_;
};

struct RandomOptions {
  std::size_t max_cells = 12;
  bool even = false;  // keep every level even
};

inline InverseSystem random_system(std::uint64_t seed, std::size_t depth, RandomOptions opt = {}) {
  Rng rng(seed);
  std::size_t vcount = 0, ecount = 0;
  auto fresh_v = [&] { return VertexId("r" + detail::pad(vcount++)); };
  auto fresh_e = [&] { return EdgeId("x" + detail::pad(ecount++, 3)); };

  std::size_t n0 = 1 + rng.below(3);
  std::vector<VertexId> vs;
  for (std::size_t i = 0; i < n0; ++i) vs.push_back(fresh_v());
  std::vector<Edge> es;
  if (opt.even) {
    if (n0 > 1) {
      auto order = vs;
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
      for (std::size_t i = 0; i < order.size(); ++i) es.push_back({fresh_e(), order[i], order[(i + 1) % order.size()]});
      if (n0 > 2 && rng.coin()) {
        // Extra triangle-free closed walk: a digon on two random vertices.
        auto a = vs[rng.below(n0)];
        auto b = vs[rng.below(n0)];
        if (a != b) {
          es.push_back({fresh_e(), a, b});
          es.push_back({fresh_e(), a, b});
        }
      }
    }
  } else {
    for (std::size_t i = 1; i < n0; ++i) es.push_back({fresh_e(), vs[rng.below(i)], vs[i]});
    std::size_t extra = rng.below(3);
    for (std::size_t i = 0; i < extra && n0 > 1; ++i) {
      auto a = vs[rng.below(n0)], b = vs[rng.below(n0)];
      if (a != b) es.push_back({fresh_e(), a, b});
    }
  }
  InverseSystem s;
  s.levels.emplace_back(vs, es);

  for (std::size_t n = 0; n < depth; ++n) {
    const auto& low = s.levels.back();
    if (low.vertex_count() >= opt.max_cells) {
      s.bonds.push_back(BondingMap::identity(low));
      s.levels.push_back(low);
      continue;
    }
    VertexId v = low.vertex_at(rng.below(low.vertex_count()));
    VertexId w = fresh_v();
    std::vector<VertexId> nvs(low.vertices().begin(), low.vertices().end());
    nvs.push_back(w);
    std::vector<Edge> nes;
    std::size_t moved = 0;
    BondingMap f;
    for (const auto& e : low.edges()) {
      Edge ne = e;
      if (ne.u == v && rng.coin()) { ne.u = w; ++moved; }
      if (ne.v == v && rng.coin()) { ne.v = w; ++moved; }
      nes.push_back(ne);
      f.edge_map[e.id] = e.id;
    }
    std::size_t links = 1 + rng.below(2);
    if (opt.even) links = (moved % 2 == 1) ? 1 : 2;
    for (std::size_t i = 0; i < links; ++i) {
      auto id = fresh_e();
      nes.push_back({id, v, w});
      f.edge_map[id] = v;
    }
    for (const auto& x : nvs) f.vertex_map[x] = x == w ? v : x;
    s.levels.emplace_back(std::move(nvs), std::move(nes));
    s.bonds.push_back(std::move(f));
  }
  return s;
}

// ---------------------------------------------------------------- dispatch

enum class Kind { constant, ladder, cbs, cbc, xl_dyadic, hawaiian, tangent_chain, random, figure1 };

inline std::optional<Kind> parse_kind(const std::string& s) {
  if (s == "constant") return Kind::constant;
  if (s == "ladder") return Kind::ladder;
  if (s == "cbs") return Kind::cbs;
  if (s == "cbc") return Kind::cbc;
  if (s == "xl_dyadic") return Kind::xl_dyadic;
  if (s == "hawaiian") return Kind::hawaiian;
  if (s == "tangent_chain") return Kind::tangent_chain;
  if (s == "random") return Kind::random;
  if (s == "figure1") return Kind::figure1;
  return std::nullopt;
}

struct GeneratorSpec {
  Kind kind = Kind::constant;
  std::size_t depth = 1;
  std::string pattern;               // tangent_chain
  std::uint64_t seed = 0;            // random
  bool even = false;                 // random
  bool raw = false;                  // hawaiian without subdivision
  std::optional<MultiGraph> graph;   // constant
};

inline InverseSystem generate(const GeneratorSpec& spec) {
  if (spec.depth < 1) throw error(errc::invalid_spec, "depth must be at least 1");
  switch (spec.kind) {
    case Kind::constant:
      if (!spec.graph) throw error(errc::invalid_spec, "constant system needs a graph");
      return constant_system(*spec.graph, spec.depth);
    case Kind::ladder: return ladder_system(spec.depth);
    case Kind::cbs: return cbs_system(spec.depth);
    case Kind::cbc: return cbc_system(spec.depth);
    case Kind::xl_dyadic: return xl_dyadic_system(spec.depth);
    case Kind::hawaiian: return hawaiian_system(spec.depth, !spec.raw);
    case Kind::tangent_chain: return tangent_chain_system(spec.depth, spec.pattern);
    case Kind::random: return random_system(spec.seed, spec.depth, {12, spec.even});
    case Kind::figure1: return figure1_system(spec.depth);
  }
  throw error(errc::invalid_spec, "unknown kind");
}

// ---------------------------------------------------------------- utilities

// Adds one persistent edge joining the representatives of two threads.
inline InverseSystem add_edge(const InverseSystem& sys, const VertexThread& a, const VertexThread& b) {
  check_thread(sys, a, sys.depth());
  check_thread(sys, b, sys.depth());
  if (a.vertices == b.vertices) throw error(errc::would_create_loop, "both threads are the same point");
  std::string id = "aux";
  for (std::size_t k = 1;; ++k) {
    bool taken = false;
    for (const auto& g : sys.levels) taken = taken || g.has_edge(id);
    if (!taken) break;
    id = "aux" + std::to_string(k);
  }
  InverseSystem out;
  for (std::size_t n = 0; n <= sys.depth(); ++n) {
    const auto& g = sys.levels[n];
    std::vector<Edge> es(g.edges().begin(), g.edges().end());
    es.push_back({id, a.vertices[n], b.vertices[n]});
    out.levels.emplace_back(std::vector<VertexId>(g.vertices().begin(), g.vertices().end()), std::move(es));
  }
  out.bonds = sys.bonds;
  for (auto& f : out.bonds) f.edge_map[id] = EdgeId(id);
  return out;
}

// Replaces every edge that is a loop at some level by two edges through a
// fresh vertex, at every level where the edge exists.
inline InverseSystem subdivide_loops(const InverseSystem& sys) {
  std::set<EdgeId> loops;
  for (const auto& g : sys.levels)
    for (const auto& e : g.edges())
      if (e.is_loop()) loops.insert(e.id);
  if (loops.empty()) return sys;
  // Close under persistence so a loop's deeper non-loop representatives are
  // subdivided too.
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& f : sys.bonds)
      for (const auto& [e, im] : f.edge_map)
        if (auto le = std::get_if<EdgeId>(&im))
          if (loops.count(e) != loops.count(*le)) {
            loops.insert(e);
            loops.insert(*le);
            grew = true;
          }
  }

  auto mid = [](const EdgeId& e) { return VertexId("s:" + e.str()); };
  auto half = [](const EdgeId& e, char side) { return EdgeId(e.str() + ":" + side); };

  // a_end[n][e]: level-n endpoint carrying the ":a" half.
  std::vector<std::map<EdgeId, VertexId>> a_end(sys.levels.size());
  InverseSystem out;
  for (std::size_t n = 0; n <= sys.depth(); ++n) {
    const auto& g = sys.levels[n];
    std::vector<VertexId> vs(g.vertices().begin(), g.vertices().end());
    std::vector<Edge> es;
    for (const auto& e : g.edges()) {
      if (!loops.count(e.id)) {
        es.push_back(e);
        continue;
      }
      VertexId x = e.u, y = e.v;
      if (n > 0 && a_end[n - 1].count(e.id)) {
        const auto& prev = a_end[n - 1].at(e.id);
        if (sys.bond(n - 1).image(x) != prev) std::swap(x, y);
      }
      a_end[n][e.id] = x;
      vs.push_back(mid(e.id));
      es.push_back({half(e.id, 'a'), x, mid(e.id)});
      es.push_back({half(e.id, 'b'), mid(e.id), y});
    }
    out.levels.emplace_back(std::move(vs), std::move(es));
  }
  for (std::size_t n = 0; n < sys.depth(); ++n) {
    const auto& f = sys.bond(n);
    BondingMap nf;
    nf.vertex_map = f.vertex_map;
    for (const auto& [e, im] : f.edge_map) {
      if (!loops.count(e)) {
        nf.edge_map[e] = im;
        continue;
      }
      if (auto le = std::get_if<EdgeId>(&im)) {
        nf.vertex_map[mid(e)] = mid(*le);
        nf.edge_map[half(e, 'a')] = half(*le, 'a');
        nf.edge_map[half(e, 'b')] = half(*le, 'b');
      } else {
        const auto& x = std::get<VertexId>(im);
        nf.vertex_map[mid(e)] = x;
        nf.edge_map[half(e, 'a')] = x;
        nf.edge_map[half(e, 'b')] = x;
      }
    }
    out.bonds.push_back(std::move(nf));
  }
  return out;
}

}  // namespace glc
