#include "gbd/factor_map.hpp"

#include <numeric>

#include "gbd/errors.hpp"

namespace gbd {

FactorMap FactorMap::identity(std::shared_ptr<const DirectedMultigraph> g) {
  FactorMap m;
  m.vertex_map.resize(g->num_vertices());
  m.edge_map.resize(g->num_edges());
  std::iota(m.vertex_map.begin(), m.vertex_map.end(), 0);
  std::iota(m.edge_map.begin(), m.edge_map.end(), 0);
  m.source = g;
  m.target = std::move(g);
  return m;
}

std::string to_string(FactorAxiom axiom) {
  switch (axiom) {
    case FactorAxiom::Endpoints: return "endpoints";
    case FactorAxiom::UniqueLifting: return "unique-lifting";
    case FactorAxiom::Regularity: return "regularity";
  }
  return "?";
}

std::size_t FactorVerdict::count(FactorAxiom axiom) const {
  std::size_t c = 0;
  for (const auto& v : violations) c += v.axiom == axiom;
  return c;
}

namespace {

void require_total(const FactorMap& m) {
  if (!m.source || !m.target) throw StructuralError("factor map is missing a graph");
  const auto& f = *m.source;
  const auto& e = *m.target;
  if (m.vertex_map.size() != f.num_vertices() || m.edge_map.size() != f.num_edges())
    throw StructuralError("factor map is not total on the source graph");
  for (VertexId v : m.vertex_map)
    if (v >= e.num_vertices()) throw StructuralError("vertex map points outside the target graph");
  for (EdgeId x : m.edge_map)
    if (x >= e.num_edges()) throw StructuralError("edge map points outside the target graph");
}

}  // namespace

FactorVerdict verify_factor_map(const FactorMap& m) {
  require_total(m);
  const auto& F = *m.source;
  const auto& E = *m.target;
  FactorVerdict verdict;

  for (EdgeId f = 0; f < F.num_edges(); ++f) {
    const EdgeId img = m.edge_map[f];
    if (E.range(img) != m.vertex_map[F.range(f)])
      verdict.violations.push_back({FactorAxiom::Endpoints, "range of m1(" + F.edge_name(f) + ") = " +
                                                                E.edge_name(img) + " is not m0(r(" + F.edge_name(f) +
                                                                "))"});
    if (E.source(img) != m.vertex_map[F.source(f)])
      verdict.violations.push_back({FactorAxiom::Endpoints, "source of m1(" + F.edge_name(f) + ") = " +
                                                                E.edge_name(img) + " is not m0(s(" +
                                                                F.edge_name(f) + "))"});
  }

  // For each v in F^0: edges leaving v, grouped by image, must hit each edge
  // leaving m0(v) exactly once.
  std::vector<std::size_t> hits(E.num_edges(), 0);
  for (VertexId v = 0; v < F.num_vertices(); ++v) {
    const VertexId image = m.vertex_map[v];
    for (EdgeId f : F.out_edges(v)) ++hits[m.edge_map[f]];
    for (EdgeId target_edge : E.out_edges(image)) {
      if (hits[target_edge] != 1)
        verdict.violations.push_back({FactorAxiom::UniqueLifting,
                                      "edge " + E.edge_name(target_edge) + " has " +
                                          std::to_string(hits[target_edge]) + " lifts at vertex " +
                                          F.vertex_name(v)});
    }
    for (EdgeId f : F.out_edges(v)) hits[m.edge_map[f]] = 0;
  }

  for (VertexId v = 0; v < F.num_vertices(); ++v) {
    if (F.in_edges(v).empty() && !E.in_edges(m.vertex_map[v]).empty())
      verdict.violations.push_back({FactorAxiom::Regularity, "vertex " + F.vertex_name(v) +
                                                                 " receives no edge but its image " +
                                                                 E.vertex_name(m.vertex_map[v]) + " does"});
  }
  return verdict;
}

namespace {

void require_refinement(const DerivedGraph& fine, const DerivedGraph& coarse, DerivedKind kind) {
  if (fine.kind != kind || coarse.kind != kind)
    throw InputError("canonical factor map needs two " + to_string(kind) + " graphs");
  if (!(*fine.base == *coarse.base)) throw InputError("canonical factor map needs a common base graph");
  if (fine.level % coarse.level != 0)
    throw InputError("level " + std::to_string(coarse.level) + " does not divide " + std::to_string(fine.level));
}

FactorMap remainder_map(const DerivedGraph& fine, const DerivedGraph& coarse) {
  const auto& g = *fine.base;
  const std::size_t n = coarse.level;
  FactorMap m;
  m.source = fine.graph;
  m.target = coarse.graph;
  m.vertex_map.resize(fine.graph->num_vertices());
  m.edge_map.resize(fine.graph->num_edges());
  for (VertexId v = 0; v < fine.vertices.size(); ++v) {
    const auto& dv = fine.vertices[v];
    auto image = dv.is_copy ? coarse.copy_of(dv.path.source()) : coarse.vertex_of(remainder_head(g, dv.path, n));
    if (!image) throw VerificationFailure("remainder of a vertex label is not a coarse vertex");
    m.vertex_map[v] = *image;
  }
  for (EdgeId x = 0; x < fine.edges.size(); ++x) {
    const auto& de = fine.edges[x];
    if (de.is_copy) {
      m.edge_map[x] = coarse.graph->edge(pair_label(g.edge_name(*de.base_edge), copy_label(g.vertex_name(de.path.source()))));
      continue;
    }
    auto image = coarse.edge_of(*de.base_edge, remainder_head(g, de.path, n));
    if (!image) throw VerificationFailure("remainder of an edge label is not a coarse edge");
    m.edge_map[x] = *image;
  }
  return m;
}

}  // namespace

FactorMap canonical_m(const DerivedGraph& fine, const DerivedGraph& coarse) {
  require_refinement(fine, coarse, DerivedKind::Periodic);
  return remainder_map(fine, coarse);
}

FactorMap canonical_q(const DerivedGraph& fine, const DerivedGraph& coarse) {
  require_refinement(fine, coarse, DerivedKind::Augmented);
  return remainder_map(fine, coarse);
}

CanonicalFactor canonical_m(std::shared_ptr<const DirectedMultigraph> g, std::size_t n, std::size_t k,
                            const Limits& limits) {
  if (n == 0 || k == 0) throw InputError("canonical_m requires n, k >= 1");
  CanonicalFactor out;
  out.source = std::make_shared<const DerivedGraph>(build_periodic_graph(g, n * k, limits));
  out.target = std::make_shared<const DerivedGraph>(build_periodic_graph(g, n, limits));
  out.map = canonical_m(*out.source, *out.target);
  return out;
}

CanonicalFactor canonical_q(std::shared_ptr<const DirectedMultigraph> g, std::size_t n, std::size_t k,
                            const Limits& limits) {
  if (n == 0 || k == 0) throw InputError("canonical_q requires n, k >= 1");
  CanonicalFactor out;
  out.source = std::make_shared<const DerivedGraph>(build_augmented_graph(g, n * k, limits));
  out.target = std::make_shared<const DerivedGraph>(build_augmented_graph(g, n, limits));
  out.map = canonical_q(*out.source, *out.target);
  return out;
}

GeneratorMap induced_generator_map(const FactorMap& m) {
  auto verdict = verify_factor_map(m);
  if (!verdict.is_regular())
    throw InputError("induced generator map needs a regular factor map; first violation: " +
                     verdict.violations.front().detail);
  GeneratorMap out;
  out.source = m.source;
  out.target = m.target;
  out.vertex_preimages.resize(m.target->num_vertices());
  out.edge_preimages.resize(m.target->num_edges());
  for (VertexId u = 0; u < m.vertex_map.size(); ++u) out.vertex_preimages[m.vertex_map[u]].push_back(u);
  for (EdgeId f = 0; f < m.edge_map.size(); ++f) out.edge_preimages[m.edge_map[f]].push_back(f);
  out.injective = true;
  for (const auto& pre : out.vertex_preimages) out.injective = out.injective && !pre.empty();
  return out;
}

FactorMap compose(const FactorMap& second, const FactorMap& first) {
  if (!first.target || !second.source || !(*first.target == *second.source))
    throw InputError("cannot compose factor maps: intermediate graphs differ");
  FactorMap out;
  out.source = first.source;
  out.target = second.target;
  out.vertex_map.resize(first.vertex_map.size());
  out.edge_map.resize(first.edge_map.size());
  for (std::size_t v = 0; v < first.vertex_map.size(); ++v) out.vertex_map[v] = second.vertex_map.at(first.vertex_map[v]);
  for (std::size_t e = 0; e < first.edge_map.size(); ++e) out.edge_map[e] = second.edge_map.at(first.edge_map[e]);
  return out;
}

}  // namespace gbd
