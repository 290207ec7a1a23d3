#include "gbd/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "gbd/errors.hpp"

namespace gbd {

namespace {

const Json& require_field(const Json& doc, const char* key, Json::value_t type, const char* what) {
  if (!doc.is_object() || !doc.contains(key)) throw StructuralError(std::string(what) + " is missing '" + key + "'");
  const auto& v = doc.at(key);
  if (v.type() != type) throw StructuralError(std::string(what) + " field '" + key + "' has the wrong type");
  return v;
}

}  // namespace

DirectedMultigraph graph_from_json(const Json& doc) {
  const auto& vs = require_field(doc, "vertices", Json::value_t::array, "graph");
  const auto& es = require_field(doc, "edges", Json::value_t::array, "graph");
  std::vector<std::string> vertices;
  for (const auto& v : vs) {
    if (!v.is_string()) throw StructuralError("vertex ids must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<EdgeRecord> edges;
  for (const auto& e : es) {
    EdgeRecord r;
    r.id = require_field(e, "id", Json::value_t::string, "edge").get<std::string>();
    r.src = require_field(e, "src", Json::value_t::string, "edge").get<std::string>();
    r.dst = require_field(e, "dst", Json::value_t::string, "edge").get<std::string>();
    edges.push_back(std::move(r));
  }
  return DirectedMultigraph(std::move(vertices), std::move(edges));
}

Json graph_to_json(const DirectedMultigraph& g) {
  Json doc;
  doc["vertices"] = Json::array();
  for (VertexId v = 0; v < g.num_vertices(); ++v) doc["vertices"].push_back(g.vertex_name(v));
  doc["edges"] = Json::array();
  for (const auto& r : g.edge_records()) doc["edges"].push_back({{"id", r.id}, {"src", r.src}, {"dst", r.dst}});
  return doc;
}

DivisibilitySequence sequence_from_json(const Json& doc) {
  const auto& prefix = require_field(doc, "prefix", Json::value_t::array, "sequence");
  std::vector<std::uint64_t> values;
  for (const auto& v : prefix) {
    if (!v.is_number_integer() || v.get<long long>() <= 0)
      throw InputError("sequence entries must be positive integers");
    values.push_back(v.get<std::uint64_t>());
  }
  ExtendPolicy policy = ExtendPolicy::RepeatLast;
  if (doc.contains("extend")) {
    if (!doc.at("extend").is_string()) throw InputError("sequence field 'extend' must be a string");
    policy = parse_extend_policy(doc.at("extend").get<std::string>());
  }
  return DivisibilitySequence(std::move(values), policy);
}

Json sequence_to_json(const DivisibilitySequence& seq) {
  Json doc;
  doc["prefix"] = Json::array();
  for (auto n : seq.prefix()) doc["prefix"].push_back(n);
  doc["extend"] = to_string(seq.policy());
  return doc;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<std::uint64_t> parse_uint_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty())
      throw InputError("'" + std::string(item) + "' is not a non-negative integer");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw InputError("empty integer list");
  return out;
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string emit_dot(const DirectedMultigraph& g, std::string_view name) {
  std::ostringstream out;
  out << "digraph " << dot_quote(std::string(name)) << " {\n";
  for (VertexId v = 0; v < g.num_vertices(); ++v) out << "  " << dot_quote(g.vertex_name(v)) << ";\n";
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    out << "  " << dot_quote(g.vertex_name(g.source(e))) << " -> " << dot_quote(g.vertex_name(g.range(e)))
        << " [label=" << dot_quote(g.edge_name(e)) << "];\n";
  out << "}\n";
  return out.str();
}

std::string matrix_dump(const IntegerMatrix& m) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j).get_str();
    out << '\n';
  }
  return out.str();
}

std::string emit_report(const Json& value) { return value.dump(2) + "\n"; }

Json to_json(const DirectedMultigraph& g, const ValidationReport& r) {
  Json doc;
  doc["admissible"] = r.admissible();
  doc["sinks"] = Json::array();
  doc["sources"] = Json::array();
  for (auto v : r.sinks) doc["sinks"].push_back(g.vertex_name(v));
  for (auto v : r.sources) doc["sources"].push_back(g.vertex_name(v));
  doc["vertices"] = g.num_vertices();
  doc["edges"] = g.num_edges();
  return doc;
}

Json to_json(const DerivedGraph& d) {
  Json doc;
  doc["kind"] = to_string(d.kind);
  doc["level"] = d.level;
  doc["graph"] = graph_to_json(*d.graph);
  return doc;
}

Json to_json(const LoopDecomposition& d) {
  Json doc;
  doc["j"] = d.j;
  doc["n"] = d.n;
  doc["l"] = d.l;
  doc["p"] = d.p;
  doc["omega"] = d.omega;
  doc["components"] = Json::array();
  const auto& g = *d.cycle_level.graph;
  for (const auto& c : d.components) {
    Json comp;
    comp["representative"] = c.representative;
    comp["vertex_cycle"] = Json::array();
    comp["edge_cycle"] = Json::array();
    for (auto v : c.vertex_cycle) comp["vertex_cycle"].push_back(g.vertex_name(v));
    for (auto e : c.edge_cycle) comp["edge_cycle"].push_back(g.edge_name(e));
    comp["length"] = c.edge_cycle.size();
    doc["components"].push_back(std::move(comp));
  }
  return doc;
}

Json to_json(const FactorMap& m) {
  Json doc;
  doc["vertex_map"] = Json::object();
  doc["edge_map"] = Json::object();
  for (VertexId v = 0; v < m.vertex_map.size(); ++v)
    doc["vertex_map"][m.source->vertex_name(v)] = m.target->vertex_name(m.vertex_map[v]);
  for (EdgeId e = 0; e < m.edge_map.size(); ++e)
    doc["edge_map"][m.source->edge_name(e)] = m.target->edge_name(m.edge_map[e]);
  return doc;
}

Json to_json(const FactorVerdict& v) {
  Json doc;
  doc["factor_map"] = v.is_factor_map();
  doc["regular"] = v.is_regular();
  for (auto axiom : {FactorAxiom::Endpoints, FactorAxiom::UniqueLifting, FactorAxiom::Regularity}) {
    Json list = Json::array();
    for (const auto& x : v.violations)
      if (x.axiom == axiom) list.push_back(x.detail);
    doc["violations"][to_string(axiom)] = std::move(list);
  }
  return doc;
}

Json to_json(const GeneratorMap& m) {
  Json doc;
  doc["injective"] = m.injective;
  doc["P"] = Json::object();
  doc["S"] = Json::object();
  for (VertexId v = 0; v < m.vertex_preimages.size(); ++v) {
    Json list = Json::array();
    for (auto u : m.vertex_preimages[v]) list.push_back(m.source->vertex_name(u));
    doc["P"][m.target->vertex_name(v)] = std::move(list);
  }
  for (EdgeId e = 0; e < m.edge_preimages.size(); ++e) {
    Json list = Json::array();
    for (auto f : m.edge_preimages[e]) list.push_back(m.source->edge_name(f));
    doc["S"][m.target->edge_name(e)] = std::move(list);
  }
  return doc;
}

Json to_json(const IntegerMatrix& m) {
  // Arbitrary-precision entries: numbers when they fit, strings otherwise.
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).fits_slong_p()) row.push_back(m(i, j).get_si());
      else row.push_back(m(i, j).get_str());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const FinitelyGeneratedAbelianGroup& g) {
  Json doc;
  doc["rank"] = g.rank;
  doc["torsion"] = Json::array();
  for (const auto& d : g.torsion) doc["torsion"].push_back(d.get_str());
  doc["name"] = g.to_string();
  return doc;
}

Json to_json(const DirectSystemReport& r) {
  Json doc;
  doc["levels"] = Json::array();
  for (const auto& l : r.levels) {
    Json lv;
    lv["k"] = l.k;
    lv["n_k"] = l.n;
    lv["dimension"] = l.dimension;
    lv["K0"] = to_json(l.k0);
    lv["K1"] = {{"rank", l.k1.rank}};
    lv["elementary_divisors"] = Json::array();
    for (const auto& d : l.snf.divisors) lv["elementary_divisors"].push_back(d.get_str());
    doc["levels"].push_back(std::move(lv));
  }
  doc["connecting"] = Json::array();
  for (const auto& c : r.maps)
    doc["connecting"].push_back({{"from", c.from}, {"to", c.to}, {"K0", to_json(c.k0)}, {"K1", to_json(c.k1)}});
  auto stab = [](const Stabilization& s) {
    Json j;
    j["constant"] = s.constant;
    if (s.limit.empty()) j["limit"] = nullptr;
    else j["limit"] = s.limit;
    return j;
  };
  doc["stabilization"] = {{"K0", stab(r.k0)}, {"K1", stab(r.k1)}};
  return doc;
}

Json to_json(const RelationReport& r) {
  Json doc;
  doc["all_hold"] = r.all_hold();
  doc["relations"] = Json::array();
  for (const auto& c : r.checks) {
    Json item;
    item["relation"] = c.relation;
    item["status"] = c.holds ? "pass" : "fail";
    item["residual-norm-zero"] = c.holds;
    if (c.counterexample) item["counterexample-basis-vector"] = *c.counterexample;
    doc["relations"].push_back(std::move(item));
  }
  return doc;
}

Json to_json(const TheoremAnReport& r) {
  Json doc;
  doc["blocks"] = r.blocks;
  doc["multiplicity"] = Json::object();
  const auto& base = *r.length_graph->base;
  for (VertexId x = 0; x < r.multiplicity.size(); ++x) doc["multiplicity"][base.vertex_name(x)] = r.multiplicity[x];
  doc["bijective"] = r.bijective;
  doc["cases"] = {{"zero", r.zero_cases}, {"projection", r.projection_cases}, {"shift", r.shift_cases}};
  doc["mismatches"] = r.mismatches;
  if (r.counterexample) doc["counterexample"] = *r.counterexample;
  return doc;
}

Json to_json(const SupernaturalNumber& s) {
  Json doc;
  doc["exponents"] = s.serialize();
  doc["provenance"] = to_string(s.provenance);
  doc["value"] = s.to_string();
  return doc;
}

Json to_json(const BDInvariant& inv) {
  Json doc;
  doc["j"] = inv.j;
  doc["l"] = inv.l;
  doc["l_exact"] = inv.l_exact;
  doc["gcd_trace"] = inv.gcd_trace;
  doc["delta"] = to_json(inv.delta);
  return doc;
}

Json to_json(const Verdict& v) { return {{"verdict", v.verdict}, {"witness", v.witness}}; }

Json to_json(const DirectedMultigraph& g, const SimplicityReport& r) {
  Json doc;
  doc["holds_at_all_supplied_levels"] = r.holds_at_all_supplied_levels;
  doc["note"] = "sufficient condition only, relative to the supplied levels";
  doc["levels"] = Json::array();
  for (const auto& l : r.levels) {
    Json lv;
    lv["k"] = l.level;
    lv["n_k"] = l.n;
    lv["holds"] = l.holds;
    lv["pairs"] = Json::array();
    for (const auto& p : l.pairs)
      lv["pairs"].push_back({{"from", g.vertex_name(p.from)}, {"to", g.vertex_name(p.to)}, {"reachable", p.reachable}});
    doc["levels"].push_back(std::move(lv));
  }
  return doc;
}

Json to_json(const DirectedMultigraph& g, const NoLoopsReport& r) {
  Json doc;
  doc["depth"] = r.depth;
  doc["points_explored"] = r.points_explored;
  doc["transitions"] = r.transitions;
  doc["truncated_by_level"] = r.truncated_by_level;
  doc["loop_found"] = r.loop_found;
  doc["verdict"] = r.loop_found ? "loop found" : "no loop up to depth";
  doc["counterexample"] = Json::array();
  for (const auto& y : r.counterexample) doc["counterexample"].push_back(render(g, y));
  return doc;
}

}  // namespace gbd
