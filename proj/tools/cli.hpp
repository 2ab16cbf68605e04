#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "glc/circuit.hpp"
#include "glc/embed.hpp"
#include "glc/euler.hpp"
#include "glc/generators.hpp"
#include "glc/io.hpp"
#include "glc/menger.hpp"
#include "glc/parity.hpp"
#include "glc/prosys.hpp"
#include "glc/regions.hpp"

namespace glc::cli {

enum exit_code : int { positive = 0, negative = 1, undetermined = 2, usage = 3 };

// ---------------------------------------------------------------- JSON helpers

inline json ids(const VertexSet& s) {
  json a = json::array();
  for (const auto& v : s) a.push_back(v.str());
  return a;
}

template <class Range>
inline json ids(const Range& r) {
  json a = json::array();
  for (const auto& x : r) a.push_back(x.str());
  return a;
}

inline json to_json(const CylinderSet& c) { return {{"level", c.level}, {"cells", ids(c.cells)}}; }
inline json to_json(const VertexThread& t) { return ids(t.vertices); }
inline json to_json(const Circuit& c) { return {{"root", c.root.str()}, {"edges", ids(c.edges)}}; }
inline json to_json(const Region& r) {
  return {{"level", r.level}, {"cells", ids(r.cells)}, {"boundary", ids(r.boundary)}, {"cut", r.size()}};
}

inline json to_json(const Check& c) {
  json j = {{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}};
  if (c.bond) j["bond"] = *c.bond;
  if (c.level) j["level"] = *c.level;
  return j;
}

inline json to_json(const ValidationReport& r) {
  json failed = json::array();
  for (const auto& c : r.checks)
    if (!c.ok) failed.push_back(to_json(c));
  json j = {{"valid", r.valid}, {"checks", r.checks.size()}, {"failed", failed}, {"warnings", r.warnings}};
  if (r.first_violation) j["first_violation"] = to_json(*r.first_violation);
  return j;
}

inline json checks_json(const std::vector<Check>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back(to_json(c));
  return a;
}

// "key.sub[2]: value" lines, one per leaf, in the order of the JSON object.
inline void flatten(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && !j.empty()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

inline std::string render(const json& report, const std::string& format) {
  if (format == "text") {
    std::ostringstream os;
    flatten(report, "", os);
    return os.str();
  }
  return dump(report);
}

// ---------------------------------------------------------------- inputs

struct Options {
  std::string format = "json";
  std::string output;
  std::optional<std::size_t> depth;
  std::uint64_t cap = 1'000'000'000;
  std::uint64_t seed = 0;
};

// A failure that ends the command with a report.
struct Stop {
  int code;
  json body;
};

inline std::size_t oracle_bound() {
  if (const char* s = std::getenv("GLC_ORACLE_BOUND")) {
    try {
      return std::stoul(s);
    } catch (const std::exception&) {
      throw error(errc::invalid_input, std::string("GLC_ORACLE_BOUND is not a number: ") + s);
    }
  }
  return 12;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::not_found, "cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw error(errc::not_found, "cannot write '" + path + "'");
}

inline InverseSystem load_system(const std::string& path) {
  auto sys = system_from_json(parse_json(read_file(path), path));
  auto rep = validate(sys);
  if (!rep.valid) throw Stop{usage, {{"error", {{"code", "InvalidSystem"}, {"message", "input is not a valid system"}}}, {"validation", to_json(rep)}}};
  return sys;
}

// Truncates to the requested depth, or to `fallback` when none was given.
inline InverseSystem at_depth(const InverseSystem& sys, const Options& opt, std::size_t fallback) {
  std::size_t d = opt.depth.value_or(std::min(sys.depth(), fallback));
  if (d > sys.depth())
    throw error(errc::invalid_input, "depth " + std::to_string(d) + " exceeds the system depth " + std::to_string(sys.depth()));
  return truncate(sys, d);
}

// "L:a,b,c" names a cylinder set at level L.
inline CylinderSet parse_cylinder(const InverseSystem& sys, const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos || colon == 0) throw error(errc::invalid_input, "cylinder '" + s + "' is not LEVEL:CELLS");
  CylinderSet c;
  try {
    c.level = std::stoul(s.substr(0, colon));
  } catch (const std::exception&) {
    throw error(errc::invalid_input, "cylinder '" + s + "' has no level number");
  }
  std::stringstream cells(s.substr(colon + 1));
  for (std::string v; std::getline(cells, v, ',');)
    if (!v.empty()) c.cells.insert(VertexId(v));
  const auto& g = sys.level(c.level);
  for (const auto& v : c.cells)
    if (!g.has_vertex(v)) throw error(errc::not_found, "level " + std::to_string(c.level) + " has no vertex '" + v.str() + "'");
  if (c.cells.empty()) throw error(errc::invalid_input, "cylinder '" + s + "' has no cells");
  return c;
}

// A thread is a comma list v_0,...,v_d, one deepest vertex, or 0 / 1 for the
// least / greatest deepest thread.
inline VertexThread parse_thread(const InverseSystem& sys, const std::string& s) {
  if (s.find(',') != std::string::npos) {
    VertexThread t;
    std::stringstream in(s);
    for (std::string v; std::getline(in, v, ',');) t.vertices.emplace_back(v);
    check_thread(sys, t, sys.depth());
    if (t.depth() != sys.depth())
      throw error(errc::invalid_thread, "thread has " + std::to_string(t.vertices.size()) + " entries, expected " + std::to_string(sys.depth() + 1));
    return t;
  }
  if (sys.level(sys.depth()).has_vertex(VertexId(s))) return thread_through(sys, sys.depth(), VertexId(s));
  if (s == "0" || s == "1") {
    auto all = deepest_threads(sys);
    return s == "0" ? all.front() : all.back();
  }
  throw error(errc::invalid_thread, "no deepest vertex '" + s + "'");
}

// ---------------------------------------------------------------- commands

struct Outcome {
  int code = positive;
  json body = json::object();
};

inline Outcome cmd_validate(const std::string& path) {
  auto sys = system_from_json(parse_json(read_file(path), path));
  auto rep = validate(sys);
  Outcome o;
  o.code = rep.valid ? positive : negative;
  o.body = {{"verdict", rep.valid ? "Valid" : "Invalid"}, {"validation", to_json(rep)}};
  if (rep.valid) o.body["digest"] = digest(sys);
  return o;
}

struct EulerFlags {
  bool open = false, chain = false, count = false, probe = false;
};

inline json verdict_json(const EulerVerdict& v) {
  json j = {{"verdict", to_string(v.status)}, {"depth", v.depth}, {"reason", v.reason}};
  if (v.witness) {
    j["witness"] = to_json(*v.witness);
    j["witness_cut_size"] = v.witness_cut_size;
  }
  if (v.odd_threads) j["odd_threads"] = {to_json(v.odd_threads->first), to_json(v.odd_threads->second)};
  if (v.failing_level) {
    j["failing_level"] = *v.failing_level;
    j["odd_classes"] = ids(v.odd_classes);
  }
  return j;
}

inline int euler_code(const EulerVerdict& v) {
  if (v.certified()) return positive;
  return v.status == EulerStatus::not_eulerian ? negative : undetermined;
}

inline json counts_json(const std::vector<LevelCount>& ls) {
  json a = json::array();
  for (const auto& l : ls)
    a.push_back({{"level", l.level}, {"root", l.root.str()}, {"count", l.count}, {"truncated", l.truncated}, {"unoriented", l.unoriented}});
  return a;
}

inline Outcome cmd_euler(const InverseSystem& full, const Options& opt, const EulerFlags& f) {
  Outcome o;
  const bool heavy = f.count || f.probe;
  auto sys = at_depth(full, opt, heavy ? 3 : 5);
  o.body["depth_used"] = sys.depth();
  if (f.count || f.probe) {
    auto closed = is_closed_eulerian(sys);
    if (!closed.certified()) {
      o.code = euler_code(closed);
      o.body["verdict"] = "Refused";
      o.body["closed"] = verdict_json(closed);
      return o;
    }
    if (f.probe) {
      auto d = dichotomy_probe(sys, opt.cap);
      o.body["verdict"] = to_string(d.kind);
      o.body["level"] = d.level;
      o.body["window"] = d.window;
      o.body["counts"] = counts_json(d.counts);
      o.code = d.kind == DichotomyKind::inconclusive ? undetermined : positive;
      return o;
    }
    auto c = count_euler(sys, opt.cap);
    json maps = json::array();
    for (const auto& m : c.maps) {
      json mj = {{"bond", m.bond}};
      mj["surjective"] = m.surjective ? json(*m.surjective) : json(nullptr);
      mj["injective"] = m.injective ? json(*m.injective) : json(nullptr);
      maps.push_back(mj);
    }
    bool truncated = std::any_of(c.levels.begin(), c.levels.end(), [](const auto& l) { return l.truncated; });
    o.body["verdict"] = truncated ? "Truncated" : "Counted";
    o.body["counts"] = counts_json(c.levels);
    o.body["maps"] = maps;
    o.body["cap"] = opt.cap;
    o.code = truncated ? undetermined : positive;
    return o;
  }

  auto v = f.open ? is_open_eulerian(sys) : is_closed_eulerian(sys);
  o.body.update(verdict_json(v));
  o.code = euler_code(v);
  if (f.chain && v.certified()) {
    json levels = json::array();
    if (f.open) {
      auto chain = open_euler_chain(sys);
      if (!chain) {
        o.body["chain"] = nullptr;
        o.code = undetermined;
        return o;
      }
      o.body["added_edge"] = chain->marked.str();
      for (const auto& t : chain->trails) levels.push_back({{"vertices", ids(t.vertices)}, {"edges", ids(t.edges)}});
    } else {
      auto chain = euler_chain(sys);
      if (!chain) {
        o.body["chain"] = nullptr;
        o.code = undetermined;
        return o;
      }
      for (const auto& c : chain->circuits) levels.push_back(to_json(c));
    }
    o.body["chain"] = levels;
  }
  return o;
}

struct ParityFlags {
  std::string thread;
  bool strong = false, oracle = false;
  std::size_t window = 3;
};

inline Outcome cmd_parity(const InverseSystem& full, const Options& opt, const ParityFlags& f) {
  Outcome o;
  auto sys = at_depth(full, opt, 5);
  auto t = parse_thread(sys, f.thread);
  o.body["depth_used"] = sys.depth();
  o.body["thread"] = to_json(t);
  if (f.strong) {
    auto s = strong_degree(sys, t, sys.depth(), f.window);
    o.body["verdict"] = to_string(s.kind);
    o.body["weak"] = to_string(weak_degree(sys, t, sys.depth(), f.window));
    o.body["value"] = s.value;
    o.body["arcs"] = s.arcs;
    o.body["window"] = s.window;
    o.code = s.kind == StrongKind::strongly_even ? positive : s.kind == StrongKind::undetermined ? undetermined : negative;
    return o;
  }
  ParityOptions po;
  po.window = f.window;
  po.oracle_bound = f.oracle ? oracle_bound() : 0;
  auto v = vertex_parity(sys, t, sys.depth(), po);
  o.body["verdict"] = to_string(v.kind);
  o.body["level"] = v.level;
  o.body["window"] = v.window;
  o.body["oracle_checks"] = v.oracle_checks;
  o.body["oracle_bound"] = po.oracle_bound;
  json ws = json::array();
  for (const auto& w : v.witnesses)
    ws.push_back({{"neighbourhood", w.neighbourhood},
                  {"first", to_json(w.first)},
                  {"first_cut", w.first_cut},
                  {"second", to_json(w.second)},
                  {"second_cut", w.second_cut}});
  o.body["witnesses"] = ws;
  o.code = v.kind == ParityKind::even_certified ? positive : v.kind == ParityKind::undetermined ? undetermined : negative;
  return o;
}

struct RegionFlags {
  bool chase = false, machine = false;
  std::string u;
  std::size_t m = 2;
};

inline Outcome cmd_regions(const InverseSystem& full, const Options& opt, const RegionFlags& f) {
  Outcome o;
  auto sys = at_depth(full, opt, 5);
  o.body["depth_used"] = sys.depth();
  if (f.machine) {
    auto c = parse_cylinder(sys, f.u);
    auto r = contraction_machine(sys, make_region(sys, c.level, c.cells), f.m, sys.depth());
    const auto& rep = r.report;
    json chains = json::array();
    for (const auto& ch : rep.chains) chains.push_back({{"ok", ch.ok}, {"components", ch.components.size()}, {"detail", ch.detail}});
    json contracted = json::array();
    for (const auto& x : r.contracted) contracted.push_back(to_json(x));
    o.body["verdict"] = rep.passed() ? "Passed" : "Failed";
    o.body["m"] = f.m;
    o.body["work_level"] = rep.work_level;
    o.body["threshold"] = rep.threshold;
    o.body["infinite_regions"] = rep.infinite_regions;
    o.body["already_covered"] = rep.already_covered;
    o.body["cleaning_failures"] = rep.cleaning_failures;
    o.body["checks"] = {{"isolated_even", rep.isolated_even}, {"no_small_infinite", rep.no_small_infinite}, {"probes_ok", rep.probes_ok}};
    o.body["probes"] = rep.probes;
    o.body["chains"] = chains;
    o.body["contracted"] = contracted;
    o.body["notes"] = rep.notes;
    o.body["result_digest"] = digest(r.system.system);
    o.code = rep.passed() ? positive : negative;
    return o;
  }
  if (f.chase) {
    auto r = odd_region_chase(sys, sys.depth());
    json steps = json::array();
    for (const auto& s : r.steps) {
      json j = {{"region", to_json(s.region)}, {"odd", s.odd}, {"nested", s.nested}, {"not_smaller", s.not_smaller},
                {"not_smaller_exact", s.not_smaller_exact}, {"edge_excluded", s.edge_excluded}};
      j["avoided"] = s.avoided ? json(s.avoided->str()) : json(nullptr);
      steps.push_back(j);
    }
    o.body["verdict"] = r.complete ? "ChaseComplete" : "ChaseIncomplete";
    o.body["steps"] = steps;
    o.body["thread"] = to_json(r.thread);
    o.code = r.complete ? positive : undetermined;
    return o;
  }
  // Minimal odd region at every level.
  json levels = json::array();
  bool found = false, exact = true;
  for (std::size_t n = 0; n <= sys.depth(); ++n) {
    RegionSearchOptions ro;
    ro.strict = false;
    auto r = minimal_odd_region(sys, n, all_vertices(sys.level(n)), ro);
    found = found || r.region.has_value();
    exact = exact && r.exact;
    levels.push_back({{"level", n}, {"exact", r.exact}, {"region", r.region ? to_json(*r.region) : json(nullptr)}});
  }
  o.body["verdict"] = found ? "OddRegionFound" : exact ? "NoOddRegion" : "Undetermined";
  o.body["levels"] = levels;
  o.code = found ? positive : exact ? negative : undetermined;
  return o;
}

inline Outcome cmd_menger(const InverseSystem& full, const Options& opt, const std::string& a, const std::string& b) {
  Outcome o;
  auto sys = at_depth(full, opt, 5);
  auto w = menger(sys, parse_cylinder(sys, a), parse_cylinder(sys, b), sys.depth());
  json levels = json::array();
  for (const auto& l : w.levels) {
    json tuple = json::array();
    for (const auto& s : l.tuple) tuple.push_back({{"vertices", ids(s.vertices)}, {"edges", ids(s.edges)}});
    levels.push_back({{"level", l.level}, {"flow", l.flow}, {"valid", l.valid}, {"detail", l.detail}, {"tuple", tuple}});
  }
  o.body = {{"verdict", w.projection_valid ? "MengerCertified" : "ProjectionFailed"},
            {"depth_used", sys.depth()},
            {"k", w.k},
            {"achieving_level", w.achieving_level},
            {"cut_side", ids(w.cut_side)},
            {"levels", levels}};
  o.code = w.projection_valid ? positive : negative;
  return o;
}

inline Outcome cmd_decompose(const InverseSystem& full, const Options& opt) {
  Outcome o;
  auto sys = at_depth(full, opt, 5);
  json levels = json::array();
  o.code = positive;
  for (std::size_t n = 0; n <= sys.depth(); ++n) {
    try {
      json cs = json::array();
      for (const auto& c : cycle_decomposition(sys.level(n))) cs.push_back(to_json(c));
      levels.push_back({{"level", n}, {"circuits", cs}});
    } catch (const error& e) {
      if (e.code() != errc::odd_cut_present) throw;
      levels.push_back({{"level", n}, {"error", e.what()}});
      o.code = negative;
    }
  }
  o.body = {{"verdict", o.code == positive ? "Decomposed" : "OddCutPresent"}, {"depth_used", sys.depth()}, {"levels", levels}};
  return o;
}

inline Outcome cmd_embed(const InverseSystem& full, const Options& opt, const std::string& dot_dir) {
  Outcome o;
  auto sys = at_depth(full, opt, 3);
  auto t = build_embedding(sys, sys.depth());
  auto tr = freudenthal_truncations(sys, t);
  json steps = json::array();
  for (const auto& s : t.steps) {
    json roles = json::object();
    for (const auto& [e, info] : s.edge_info) roles[e.str()] = to_string(info.kind);
    steps.push_back({{"level", s.level}, {"f", graph_to_json(s.f)}, {"edge_roles", roles}});
    if (!dot_dir.empty()) {
      DotStyle style;
      for (const auto& [e, info] : s.edge_info) style.edge_color[e] = info.kind == EdgeRole::connector ? "blue" : "black";
      std::filesystem::create_directories(dot_dir);
      write_file((std::filesystem::path(dot_dir) / ("F" + std::to_string(s.level) + ".dot")).string(),
                 to_dot(s.f, "F" + std::to_string(s.level), style));
    }
  }
  bool ok = std::all_of(tr.checks.begin(), tr.checks.end(), [](const Check& c) { return c.ok; });
  o.body = {{"verdict", ok ? "EmbeddingVerified" : "TruncationCheckFailed"},
            {"depth_used", sys.depth()},
            {"first_level", t.first_level},
            {"steps", steps},
            {"checks", checks_json(t.checks)},
            {"truncation_checks", checks_json(tr.checks)},
            {"truncations_digest", digest(tr.system)}};
  o.code = ok ? positive : negative;
  return o;
}

// Exit code for an error raised by the library.
inline int code_for(errc c) {
  switch (c) {
    case errc::odd_cut_present:
    case errc::no_odd_cut:
    case errc::precondition_violated:
    case errc::refused:
    case errc::construction_invariant_violated:
    case errc::invalid_separation:
      return negative;
    case errc::too_large:
      return undetermined;
    default:
      return usage;
  }
}

// ---------------------------------------------------------------- entry

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inverse systems of multigraphs: Euler, parity, regions, Menger and embedding tools", "glc"};
  app.fallthrough();
  app.require_subcommand(1);

  Options opt;
  std::size_t depth = 0;
  app.add_option("--depth", depth, "Deepest level to examine");
  app.add_option("--cap", opt.cap, "Cap on Euler circuit counts");
  app.add_option("--seed", opt.seed, "Seed for random generation");
  app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("-o,--output", opt.output, "Write the output here instead of stdout");

  std::string input;
  auto input_opt = [&](CLI::App* sub) { sub->add_option("system", input, "System JSON file")->required(); };

  GeneratorSpec gen;
  std::string kind, graph_name = "triangle";
  auto* generate_cmd = app.add_subcommand("generate", "Write a generated system as JSON");
  generate_cmd->add_option("kind", kind, "constant, ladder, cbs, cbc, xl_dyadic, hawaiian, tangent_chain, random or figure1")->required();
  generate_cmd->add_option("--pattern", gen.pattern, "Chord pattern for tangent_chain");
  generate_cmd->add_flag("--even", gen.even, "Random systems with even levels only");
  generate_cmd->add_flag("--raw", gen.raw, "Hawaiian earring without subdivided loops");
  generate_cmd->add_option("--graph", graph_name, "Named graph for the constant system");

  auto* validate_cmd = app.add_subcommand("validate", "Check the bonding maps");
  input_opt(validate_cmd);

  EulerFlags ef;
  auto* euler_cmd = app.add_subcommand("euler", "Eulerian decision, chains and counts");
  input_opt(euler_cmd);
  euler_cmd->add_flag("--open", ef.open, "Ask for an open Euler trail instead of a loop");
  euler_cmd->add_flag("--chain", ef.chain, "Produce a compatible chain of circuits");
  euler_cmd->add_flag("--count", ef.count, "Count Euler circuits per level");
  euler_cmd->add_flag("--probe", ef.probe, "Probe finitely many against growing loop counts");

  ParityFlags pf;
  auto* parity_cmd = app.add_subcommand("parity", "Parity and degree of an end");
  input_opt(parity_cmd);
  parity_cmd->add_option("--thread", pf.thread, "Comma list, deepest vertex, 0 (least) or 1 (greatest)")->required();
  parity_cmd->add_flag("--strong", pf.strong, "Strong degree instead of cut parity");
  parity_cmd->add_flag("--oracle", pf.oracle, "Cross-check fibres by brute force");
  parity_cmd->add_option("--window", pf.window, "Levels a verdict must hold on");

  RegionFlags rf;
  auto* regions_cmd = app.add_subcommand("regions", "Odd regions, the chase and the contraction machine");
  input_opt(regions_cmd);
  regions_cmd->add_flag("--chase", rf.chase, "Follow nested minimal odd regions");
  regions_cmd->add_flag("--machine", rf.machine, "Run the contraction machine on --u");
  regions_cmd->add_option("--u", rf.u, "Odd region LEVEL:CELLS");
  regions_cmd->add_option("--m", rf.m, "Even cut size");

  std::string a, b;
  auto* menger_cmd = app.add_subcommand("menger", "Edge-disjoint paths between two cylinders");
  input_opt(menger_cmd);
  menger_cmd->add_option("--a", a, "LEVEL:CELLS")->required();
  menger_cmd->add_option("--b", b, "LEVEL:CELLS")->required();

  auto* decompose_cmd = app.add_subcommand("decompose", "Cycle decomposition of every level");
  input_opt(decompose_cmd);

  std::string dot_dir;
  auto* embed_cmd = app.add_subcommand("embed", "Build the embedding and its truncations");
  input_opt(embed_cmd);
  embed_cmd->add_option("--dot-dir", dot_dir, "Write each F_n as DOT here");

  std::string to = "json";
  auto* export_cmd = app.add_subcommand("export", "Write a system as DOT or canonical JSON");
  input_opt(export_cmd);
  export_cmd->add_option("--to", to, "dot or json")->check(CLI::IsMember({"dot", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return positive;
  } catch (const CLI::ParseError& e) {
    err << "glc: " << e.what() << "\n";
    return usage;
  }
  if (app.count("--depth")) opt.depth = depth;

  json report = {{"command", args}};
  auto emit = [&](const std::string& text) {
    if (opt.output.empty()) out << text;
    else write_file(opt.output, text);
  };
  auto finish = [&](int code, const json& body) {
    report.update(body);
    report["exit_code"] = code;
    try {
      emit(render(report, opt.format));
    } catch (const error& e) {
      err << "glc: " << e.what() << "\n";
      return static_cast<int>(usage);
    }
    return code;
  };

  try {
    if (*generate_cmd) {
      auto k = parse_kind(kind);
      if (!k) throw error(errc::invalid_spec, "unknown generator '" + kind + "'");
      gen.kind = *k;
      gen.depth = opt.depth.value_or(5);
      gen.seed = opt.seed;
      if (gen.kind == Kind::constant) gen.graph = named_graph(graph_name);
      auto sys = generate(gen);
      if (opt.output.empty()) {
        out << dump(system_to_json(sys));
        return positive;
      }
      write_file(opt.output, dump(system_to_json(sys)));
      opt.output.clear();
      return finish(positive, {{"verdict", "Generated"}, {"digest", digest(sys)}});
    }
    if (*validate_cmd) {
      auto o = cmd_validate(input);
      return finish(o.code, o.body);
    }

    auto sys = load_system(input);
    if (*export_cmd) {
      emit(to == "dot" ? system_to_dot(sys) : dump(system_to_json(sys)));
      return positive;
    }
    report["digest"] = digest(sys);
    Outcome o;
    if (*euler_cmd) o = cmd_euler(sys, opt, ef);
    else if (*parity_cmd) o = cmd_parity(sys, opt, pf);
    else if (*regions_cmd) {
      if (rf.machine && rf.u.empty()) throw error(errc::invalid_input, "--machine needs --u");
      o = cmd_regions(sys, opt, rf);
    } else if (*menger_cmd) o = cmd_menger(sys, opt, a, b);
    else if (*decompose_cmd) o = cmd_decompose(sys, opt);
    else if (*embed_cmd) o = cmd_embed(sys, opt, dot_dir);
    return finish(o.code, o.body);
  } catch (const Stop& s) {
    err << "glc: " << s.body["error"]["message"].get<std::string>() << "\n";
    return finish(s.code, s.body);
  } catch (const error& e) {
    err << "glc: " << e.what() << "\n";
    return finish(code_for(e.code()), {{"verdict", to_string(e.code())}, {"error", {{"code", to_string(e.code())}, {"message", e.what()}}}});
  }
}

}  // namespace glc::cli
