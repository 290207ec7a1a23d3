#include "gbd/cli.hpp"

#include <CLI11.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <ostream>

#include "gbd/errors.hpp"
#include "gbd/io.hpp"

namespace gbd {

namespace {

struct Config {
  std::string graph_file;
  std::size_t cycle = 0;
  std::size_t loops = 0;
  std::string seq_text;
  std::string seq_file;
  std::string extend = "repeat-last";
  std::string format = "json";
  std::size_t guard_paths = Limits{}.max_paths;
  std::size_t guard_dim = Limits{}.max_dim;

  std::size_t n = 0, k = 1, j = 0, j2 = 0, depth = 4;
  std::string seq2_text;
  std::string levels_text;
  std::string start;
  std::string apply;
  std::size_t repeat = 1;
  std::size_t orbit_depth = 0;
  std::string map_file;
  bool augmented = false;

  Limits limits() const {
    if (guard_paths == 0 || guard_dim == 0) throw InputError("guards must be positive");
    return {guard_paths, guard_dim};
  }

  std::shared_ptr<const DirectedMultigraph> graph() const {
    const int given = !graph_file.empty() + (cycle > 0) + (loops > 0);
    if (given != 1) throw InputError("give exactly one of --graph, --cycle, --loops");
    if (cycle > 0) return std::make_shared<const DirectedMultigraph>(build_cycle(cycle));
    if (loops > 0) return std::make_shared<const DirectedMultigraph>(build_bouquet(loops));
    return std::make_shared<const DirectedMultigraph>(graph_from_json(read_json_file(graph_file)));
  }

  DivisibilitySequence sequence(const std::string& text) const {
    if (!seq_file.empty() && &text == &seq_text) {
      if (!seq_text.empty()) throw InputError("give only one of --seq and --seq-file");
      return sequence_from_json(read_json_file(seq_file));
    }
    if (text.empty()) throw InputError("a divisibility sequence is required (--seq)");
    return DivisibilitySequence(parse_uint_list(text), parse_extend_policy(extend));
  }
  DivisibilitySequence sequence() const { return sequence(seq_text); }

  void require_format(std::initializer_list<const char*> allowed) const {
    for (const char* a : allowed)
      if (format == a) return;
    throw InputError("format '" + format + "' is not supported by this command");
  }
};

void add_graph_options(CLI::App* sub, Config& cfg) {
  sub->add_option("--graph", cfg.graph_file, "graph JSON file");
  sub->add_option("--cycle", cfg.cycle, "use the cycle C_j");
  sub->add_option("--loops", cfg.loops, "use the single-vertex graph with k loops");
}

void add_sequence_options(CLI::App* sub, Config& cfg) {
  sub->add_option("--seq", cfg.seq_text, "comma-separated prefix n_1,n_2,...");
  sub->add_option("--seq-file", cfg.seq_file, "sequence JSON file");
  sub->add_option("--extend", cfg.extend, "repeat-last | strict");
}

void add_common_options(CLI::App* sub, Config& cfg) {
  sub->add_option("--format", cfg.format, "json | dot | text");
  sub->add_option("--guard-paths", cfg.guard_paths, "maximum number of enumerated paths");
  sub->add_option("--guard-dim", cfg.guard_dim, "maximum matrix dimension");
}

std::string graph_output(const Config& cfg, const DirectedMultigraph& g, const Json& json, std::string_view name) {
  cfg.require_format({"json", "dot", "text"});
  if (cfg.format == "dot") return emit_dot(g, name);
  if (cfg.format == "text") {
    std::string out;
    for (const auto& r : g.edge_records()) out += r.id + ": " + r.src + " -> " + r.dst + "\n";
    return out;
  }
  return emit_report(json);
}

std::vector<std::size_t> parse_levels(const std::string& text) {
  std::vector<std::size_t> out;
  for (auto v : parse_uint_list(text)) out.push_back(v);
  return out;
}

FactorMap factor_map_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("source") || !doc.contains("target") || !doc.contains("vertex_map") ||
      !doc.contains("edge_map"))
    throw StructuralError("factor map file needs source, target, vertex_map and edge_map");
  FactorMap m;
  m.source = std::make_shared<const DirectedMultigraph>(graph_from_json(doc.at("source")));
  m.target = std::make_shared<const DirectedMultigraph>(graph_from_json(doc.at("target")));
  m.vertex_map.resize(m.source->num_vertices());
  m.edge_map.resize(m.source->num_edges());
  std::vector<bool> vseen(m.source->num_vertices()), eseen(m.source->num_edges());
  for (const auto& [k, v] : doc.at("vertex_map").items()) {
    if (!v.is_string()) throw StructuralError("vertex_map values must be strings");
    const auto from = m.source->vertex(k);
    m.vertex_map[from] = m.target->vertex(v.get<std::string>());
    vseen[from] = true;
  }
  for (const auto& [k, v] : doc.at("edge_map").items()) {
    if (!v.is_string()) throw StructuralError("edge_map values must be strings");
    const auto from = m.source->edge(k);
    m.edge_map[from] = m.target->edge(v.get<std::string>());
    eseen[from] = true;
  }
  for (VertexId v = 0; v < vseen.size(); ++v)
    if (!vseen[v]) throw StructuralError("vertex_map does not assign " + m.source->vertex_name(v));
  for (EdgeId e = 0; e < eseen.size(); ++e)
    if (!eseen[e]) throw StructuralError("edge_map does not assign " + m.source->edge_name(e));
  return m;
}

struct Outcome {
  std::string text;
  int code = kExitOk;
};

using Handler = std::function<Outcome(const Config&)>;

Outcome graph_check(const Config& cfg) {
  cfg.require_format({"json"});
  const auto g = cfg.graph();
  const auto report = validate_graph(*g);
  return {emit_report(to_json(*g, report)), report.admissible() ? kExitOk : kExitVerification};
}

Outcome graph_reduce(const Config& cfg) {
  const auto g = cfg.graph();
  const auto reduced = reduce_tilde(*g);
  return {graph_output(cfg, reduced, graph_to_json(reduced), "reduced")};
}

Outcome derive(const Config& cfg, DerivedKind kind) {
  if (cfg.n == 0) throw InputError("--n must be at least 1");
  const auto g = cfg.graph();
  const auto lim = cfg.limits();
  DerivedGraph d = kind == DerivedKind::Periodic ? build_periodic_graph(g, cfg.n, lim)
                   : kind == DerivedKind::Length ? build_length_graph(g, cfg.n, lim)
                                                 : build_augmented_graph(g, cfg.n, lim);
  return {graph_output(cfg, *d.graph, to_json(d), to_string(d.kind))};
}

Outcome cycle_decompose(const Config& cfg) {
  cfg.require_format({"json"});
  if (cfg.j == 0 || cfg.n == 0) throw InputError("--j and --n must be at least 1");
  return {emit_report(to_json(loop_decompose(cfg.j, cfg.n, cfg.limits())))};
}

Outcome factor_verify(const Config& cfg) {
  cfg.require_format({"json"});
  if (cfg.map_file.empty()) throw InputError("--map is required");
  const auto m = factor_map_from_json(read_json_file(cfg.map_file));
  const auto verdict = verify_factor_map(m);
  return {emit_report(to_json(verdict)), verdict.is_factor_map() ? kExitOk : kExitVerification};
}

Outcome factor_canonical(const Config& cfg) {
  cfg.require_format({"json"});
  if (cfg.n == 0 || cfg.k == 0) throw InputError("--n and --k must be at least 1");
  const auto g = cfg.graph();
  const auto c = cfg.augmented ? canonical_q(g, cfg.n, cfg.k, cfg.limits()) : canonical_m(g, cfg.n, cfg.k, cfg.limits());
  const auto verdict = verify_factor_map(c.map);
  Json doc;
  doc["map"] = to_json(c.map);
  doc["verdict"] = to_json(verdict);
  doc["source"] = to_json(*c.source);
  doc["target"] = to_json(*c.target);
  return {emit_report(doc), verdict.is_regular() ? kExitOk : kExitVerification};
}

Outcome factor_induced(const Config& cfg) {
  cfg.require_format({"json"});
  if (cfg.n == 0 || cfg.k == 0) throw InputError("--n and --k must be at least 1");
  const auto g = cfg.graph();
  const auto c = cfg.augmented ? canonical_q(g, cfg.n, cfg.k, cfg.limits()) : canonical_m(g, cfg.n, cfg.k, cfg.limits());
  return {emit_report(to_json(induced_generator_map(c.map)))};
}

Outcome odometer_orbit(const Config& cfg) {
  cfg.require_format({"json", "text"});
  const auto g = cfg.graph();
  const auto seq = cfg.sequence();
  if (cfg.start.empty()) throw InputError("--start is required");
  const auto start = tau(*g, parse_path(*g, cfg.start), seq);
  std::vector<EdgeId> edges;
  if (!cfg.apply.empty()) {
    std::vector<EdgeId> once;
    std::string_view rest = cfg.apply;
    while (true) {
      const auto comma = rest.find(',');
      once.push_back(g->edge(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    for (std::size_t r = 0; r < cfg.repeat; ++r) edges.insert(edges.end(), once.begin(), once.end());
  }
  const auto trace = orbit(*g, start, edges, seq);
  std::vector<std::string> rendered;
  for (const auto& y : trace) rendered.push_back(render(*g, y));
  if (cfg.format == "text") {
    std::string out;
    for (const auto& s : rendered) out += s + "\n";
    return {out};
  }
  Json doc;
  doc["orbit"] = rendered;
  doc["edges"] = Json::array();
  for (auto e : edges) doc["edges"].push_back(g->edge_name(e));
  doc["sequence"] = sequence_to_json(seq);
  return {emit_report(doc)};
}

Outcome odometer_simplicity(const Config& cfg) {
  cfg.require_format({"json"});
  const auto g = cfg.graph();
  const auto seq = cfg.sequence();
  Json doc = to_json(*g, sufficient_simplicity(*g, seq));
  int code = kExitOk;
  if (cfg.orbit_depth > 0) {
    const auto nl = no_loops_certificate(*g, seq, cfg.orbit_depth, cfg.limits());
    doc["no_loops"] = to_json(*g, nl);
    if (nl.loop_found) code = kExitVerification;
  }
  return {emit_report(doc), code};
}

Outcome ktheory_compute(const Config& cfg) {
  cfg.require_format({"json", "text"});
  const auto g = cfg.graph();
  const auto seq = cfg.sequence();
  const auto levels = parse_levels(cfg.levels_text.empty() ? "1,2,3" : cfg.levels_text);
  const auto report = k_groups(*g, seq, levels, cfg.limits());
  if (cfg.format == "text") {
    std::string out;
    for (const auto& l : report.levels) out += "# Delta level " + std::to_string(l.k) + "\n" + matrix_dump(l.delta);
    return {out};
  }
  return {emit_report(to_json(report))};
}

Outcome fock_verify(const Config& cfg) {
  cfg.require_format({"json"});
  if (cfg.n == 0) throw InputError("--n must be at least 1");
  const auto g = cfg.graph();
  const auto lim = cfg.limits();
  require_admissible(*g, "fock verify");
  FockSpace space(g, cfg.depth, lim);
  const auto gens = build_generators(space);

  RelationReport all;
  all.append(verify_generator_identities(space, gens));
  all.append(verify_tck(space, gens.L, gens.P, true));
  all.append(verify_tck_defect(space, gens));
  const auto periodic = periodic_generators(space, cfg.n, lim);
  all.append(verify_periodic_generators(space, periodic));
  for (const auto& z : {GaussianRational(1), GaussianRational(-1), GaussianRational::unit_i()})
    all.append(gauge_check(space, z, &periodic));
  all.append(verify_factor_consistency(space, cfg.n, 2, lim));

  Json doc = to_json(all);
  doc["dimension"] = space.dim();
  doc["depth"] = cfg.depth;
  doc["n"] = cfg.n;
  bool ok = all.all_hold();
  Json witnesses = Json::array();
  for (const auto& w : noninjectivity_witness(space, cfg.n, lim)) {
    witnesses.push_back({{"vertex", w.vertex},
                         {"toeplitz_defect_rank", w.toeplitz_defect_rank},
                         {"periodic_defect_zero", w.periodic_defect_zero}});
    ok = ok && w.periodic_defect_zero && w.toeplitz_defect_rank > 0;
  }
  doc["noninjectivity_witness"] = std::move(witnesses);
  if (cfg.depth >= cfg.n) {
    const auto an = theorem_an_unitary(space, cfg.n, lim);
    doc["theorem_an"] = to_json(an);
    ok = ok && an.bijective && an.mismatches == 0;
  }
  doc["all_hold"] = ok;
  return {emit_report(doc), ok ? kExitOk : kExitVerification};
}

Outcome classify_invariant(const Config& cfg) {
  cfg.require_format({"json"});
  return {emit_report(to_json(bd_invariant(cfg.j, cfg.sequence())))};
}

Outcome classify_iso(const Config& cfg) {
  cfg.require_format({"json"});
  if (cfg.seq2_text.empty() || cfg.j2 == 0) throw InputError("--j2 and --seq2 are required");
  const auto a = bd_invariant(cfg.j, cfg.sequence());
  const auto b = bd_invariant(cfg.j2, cfg.sequence(cfg.seq2_text));
  Json doc = to_json(bd_isomorphic(a, b));
  doc["left"] = to_json(a);
  doc["right"] = to_json(b);
  return {emit_report(doc)};
}

Outcome classify_simple(const Config& cfg) {
  cfg.require_format({"json"});
  return {emit_report(to_json(bd_simple(cfg.j, cfg.sequence())))};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Graph algebra toolkit: derived graphs, odometers, K-theory and Fock-space checks", "gbd"};
  app.require_subcommand(1);
  Handler chosen;

  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& desc, Handler h) {
    auto* sub = group->add_subcommand(name, desc);
    add_common_options(sub, cfg);
    sub->callback([&chosen, h] { chosen = h; });
    return sub;
  };

  auto* graph = app.add_subcommand("graph", "graph validation and reduction");
  graph->require_subcommand(1);
  add_graph_options(leaf(graph, "check", "check that the graph has no sinks and no sources", graph_check), cfg);
  add_graph_options(leaf(graph, "reduce", "restrict to vertices receiving infinitely many paths", graph_reduce), cfg);

  auto* derive_cmd = app.add_subcommand("derive", "derived graphs");
  derive_cmd->require_subcommand(1);
  for (auto [name, kind] : {std::pair{"en", DerivedKind::Periodic}, std::pair{"eqn", DerivedKind::Length},
                            std::pair{"bracket", DerivedKind::Augmented}}) {
    auto* sub = leaf(derive_cmd, name, std::string("build ") + to_string(kind), [kind](const Config& c) { return derive(c, kind); });
    add_graph_options(sub, cfg);
    sub->add_option("--n", cfg.n, "level n")->required();
  }

  auto* cycle = app.add_subcommand("cycle", "cycle graphs");
  cycle->require_subcommand(1);
  {
    auto* sub = leaf(cycle, "decompose", "split C_j(n) into loops", cycle_decompose);
    sub->add_option("--j", cfg.j, "cycle length")->required();
    sub->add_option("--n", cfg.n, "level")->required();
  }

  auto* factor = app.add_subcommand("factor", "factor maps");
  factor->require_subcommand(1);
  {
    auto* sub = leaf(factor, "verify", "check a factor map given as JSON", factor_verify);
    sub->add_option("--map", cfg.map_file, "factor map JSON file")->required();
    for (auto [name, h] : {std::pair{"canonical", Handler(factor_canonical)}, std::pair{"induced", Handler(factor_induced)}}) {
      auto* s = leaf(factor, name, name == std::string("canonical") ? "canonical map E(nk) -> E(n)" : "generator map of the canonical factor map", h);
      add_graph_options(s, cfg);
      s->add_option("--n", cfg.n, "coarse level")->required();
      s->add_option("--k", cfg.k, "refinement factor")->required();
      s->add_flag("--augmented", cfg.augmented, "use E[n] and the map q");
    }
  }

  auto* odo = app.add_subcommand("odometer", "odometer dynamics");
  odo->require_subcommand(1);
  {
    auto* sub = leaf(odo, "orbit", "apply odometer maps to tau(start)", odometer_orbit);
    add_graph_options(sub, cfg);
    add_sequence_options(sub, cfg);
    sub->add_option("--start", cfg.start, "start path, e.g. e2.e1 or a vertex")->required();
    sub->add_option("--apply", cfg.apply, "comma-separated edges, applied left to right");
    sub->add_option("--repeat", cfg.repeat, "repeat the edge list this many times");
    auto* simp = leaf(odo, "simplicity", "sufficient simplicity condition per supplied level", odometer_simplicity);
    add_graph_options(simp, cfg);
    add_sequence_options(simp, cfg);
    simp->add_option("--depth", cfg.orbit_depth, "also search sigma-orbits to this depth for loops");
  }

  auto* kt = app.add_subcommand("ktheory", "K-theory of the level matrices");
  kt->require_subcommand(1);
  {
    auto* sub = leaf(kt, "compute", "K0/K1 presentations and connecting maps", ktheory_compute);
    add_graph_options(sub, cfg);
    add_sequence_options(sub, cfg);
    sub->add_option("--levels", cfg.levels_text, "comma-separated levels (default 1,2,3)");
  }

  auto* fock = app.add_subcommand("fock", "truncated Fock-space checks");
  fock->require_subcommand(1);
  {
    auto* sub = leaf(fock, "verify", "run the operator identity suite", fock_verify);
    add_graph_options(sub, cfg);
    sub->add_option("--n", cfg.n, "period n")->required();
    sub->add_option("--depth", cfg.depth, "truncation depth N (default 4)");
  }

  auto* cls = app.add_subcommand("classify", "cycle-graph classification");
  cls->require_subcommand(1);
  {
    auto* inv = leaf(cls, "invariant", "l and the supernatural number", classify_invariant);
    inv->add_option("--j", cfg.j, "cycle length")->required();
    add_sequence_options(inv, cfg);
    auto* iso = leaf(cls, "iso", "compare two (j, sequence) pairs", classify_iso);
    iso->add_option("--j", cfg.j, "first cycle length")->required();
    iso->add_option("--j2", cfg.j2, "second cycle length")->required();
    add_sequence_options(iso, cfg);
    iso->add_option("--seq2", cfg.seq2_text, "second prefix")->required();
    auto* simple = leaf(cls, "simple", "simplicity of the cycle limit algebra", classify_simple);
    simple->add_option("--j", cfg.j, "cycle length")->required();
    add_sequence_options(simple, cfg);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitInput;
  }

  try {
    if (!chosen) throw InputError("no command selected");
    const auto outcome = chosen(cfg);
    out << outcome.text;
    return outcome.code;
  } catch (const ResourceError& e) {
    err << "resource guard: " << e.what() << "\n";
    return kExitResource;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const VerificationFailure& e) {
    err << "verification failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const Json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace gbd
