#include "gbd/derived.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "gbd/errors.hpp"

namespace gbd {

std::string to_string(DerivedKind kind) {
  switch (kind) {
    case DerivedKind::Cycle: return "cycle";
    case DerivedKind::Periodic: return "E(n)";
    case DerivedKind::Length: return "E(=n)";
    case DerivedKind::Augmented: return "E[n]";
  }
  return "?";
}

std::string pair_label(const std::string& first, const std::string& second) {
  return "(" + first + "," + second + ")";
}

std::string copy_label(const std::string& vertex) { return "c(" + vertex + ")"; }

std::optional<VertexId> DerivedGraph::vertex_of(const Path& p) const {
  auto name = render(*base, p);
  if (!graph->has_vertex(name)) return std::nullopt;
  return graph->vertex(name);
}

std::optional<VertexId> DerivedGraph::copy_of(VertexId base_vertex) const {
  if (kind != DerivedKind::Augmented) return std::nullopt;
  auto name = copy_label(base->vertex_name(base_vertex));
  if (!graph->has_vertex(name)) return std::nullopt;
  return graph->vertex(name);
}

std::optional<EdgeId> DerivedGraph::edge_of(EdgeId e, const Path& w) const {
  auto name = pair_label(base->edge_name(e), render(*base, w));
  if (!graph->has_edge(name)) return std::nullopt;
  return graph->edge(name);
}

DirectedMultigraph build_cycle(std::size_t j) {
  if (j == 0) throw InputError("cycle length must be at least 1");
  std::vector<std::string> vertices;
  std::vector<EdgeRecord> edges;
  for (std::size_t i = 1; i <= j; ++i) {
    vertices.push_back("v" + std::to_string(i));
    edges.push_back({"e" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string(i % j + 1)});
  }
  return DirectedMultigraph(std::move(vertices), std::move(edges));
}

DirectedMultigraph build_bouquet(std::size_t k) {
  if (k == 0) throw InputError("bouquet needs at least one loop");
  std::vector<EdgeRecord> edges;
  for (std::size_t i = 1; i <= k; ++i) edges.push_back({"l" + std::to_string(i), "v", "v"});
  return DirectedMultigraph({"v"}, std::move(edges));
}

namespace {

void check_level(std::size_t n) {
  if (n == 0) throw InputError("level n must be at least 1");
}

// Attach provenance in the id order of the finished graph.
void index_provenance(DerivedGraph& out, const std::vector<std::string>& vnames,
                      std::vector<DerivedVertex> vprov, const std::vector<EdgeRecord>& erecs,
                      std::vector<DerivedEdge> eprov) {
  out.vertices.resize(vprov.size());
  for (std::size_t i = 0; i < vprov.size(); ++i) out.vertices[out.graph->vertex(vnames[i])] = std::move(vprov[i]);
  out.edges.resize(eprov.size());
  for (std::size_t i = 0; i < eprov.size(); ++i) out.edges[out.graph->edge(erecs[i].id)] = std::move(eprov[i]);
}

struct PeriodicParts {
  std::vector<std::string> vnames;
  std::vector<DerivedVertex> vprov;
  std::vector<EdgeRecord> erecs;
  std::vector<DerivedEdge> eprov;
};

PeriodicParts periodic_parts(const DirectedMultigraph& g, std::size_t n, const Limits& limits) {
  PeriodicParts parts;
  auto paths = enumerate_paths(g, PathMode::Below, n, limits);
  parts.vnames.reserve(paths.size());
  for (const auto& w : paths) {
    parts.vnames.push_back(render(g, w));
    parts.vprov.push_back({w, false});
  }
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& w = paths[i];
    for (EdgeId e : g.out_edges(w.range())) {
      std::string dst = w.length() + 1 < n ? render(g, w.extended(g, e)) : g.vertex_name(g.range(e));
      parts.erecs.push_back({pair_label(g.edge_name(e), parts.vnames[i]), parts.vnames[i], std::move(dst)});
      parts.eprov.push_back({e, w, false});
    }
  }
  return parts;
}

}  // namespace

DerivedGraph build_periodic_graph(std::shared_ptr<const DirectedMultigraph> base, std::size_t n,
                                  const Limits& limits) {
  check_level(n);
  require_admissible(*base, "E(n)");
  auto parts = periodic_parts(*base, n, limits);
  DerivedGraph out;
  out.kind = DerivedKind::Periodic;
  out.level = n;
  out.base = std::move(base);
  out.graph = std::make_shared<const DirectedMultigraph>(parts.vnames, parts.erecs);
  index_provenance(out, parts.vnames, std::move(parts.vprov), parts.erecs, std::move(parts.eprov));
  return out;
}

DerivedGraph build_length_graph(std::shared_ptr<const DirectedMultigraph> base, std::size_t n,
                                const Limits& limits) {
  check_level(n);
  require_admissible(*base, "E(=n)");
  const auto& g = *base;
  auto paths = enumerate_paths(g, PathMode::Exactly, n, limits);
  std::vector<std::string> vnames;
  std::vector<DerivedVertex> vprov;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    vnames.push_back(g.vertex_name(v));
    vprov.push_back({Path::trivial(v), false});
  }
  std::vector<EdgeRecord> erecs;
  std::vector<DerivedEdge> eprov;
  for (const auto& w : paths) {
    erecs.push_back({pair_label(render(g, w), g.vertex_name(w.source())), g.vertex_name(w.source()),
                     g.vertex_name(w.range())});
    eprov.push_back({std::nullopt, w, false});
  }
  DerivedGraph out;
  out.kind = DerivedKind::Length;
  out.level = n;
  out.base = std::move(base);
  out.graph = std::make_shared<const DirectedMultigraph>(vnames, erecs);
  index_provenance(out, vnames, std::move(vprov), erecs, std::move(eprov));
  return out;
}

DerivedGraph build_augmented_graph(std::shared_ptr<const DirectedMultigraph> base, std::size_t n,
                                   const Limits& limits) {
  check_level(n);
  require_admissible(*base, "E[n]");
  const auto& g = *base;
  auto parts = periodic_parts(g, n, limits);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    parts.vnames.push_back(copy_label(g.vertex_name(v)));
    parts.vprov.push_back({Path::trivial(v), true});
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const VertexId v = g.source(e);
    // Range is the length-one path e when n > 1, and r(e) when n = 1.
    std::string dst = n > 1 ? g.edge_name(e) : g.vertex_name(g.range(e));
    parts.erecs.push_back({pair_label(g.edge_name(e), copy_label(g.vertex_name(v))), copy_label(g.vertex_name(v)),
                           std::move(dst)});
    parts.eprov.push_back({e, Path::trivial(v), true});
  }
  DerivedGraph out;
  out.kind = DerivedKind::Augmented;
  out.level = n;
  out.base = std::move(base);
  out.graph = std::make_shared<const DirectedMultigraph>(parts.vnames, parts.erecs);
  index_provenance(out, parts.vnames, std::move(parts.vprov), parts.erecs, std::move(parts.eprov));
  return out;
}

// ---------------------------------------------------------------------------

bool is_isomorphism(const DirectedMultigraph& g1, const DirectedMultigraph& g2, const GraphIsomorphism& iso) {
  if (g1.num_vertices() != g2.num_vertices() || g1.num_edges() != g2.num_edges()) return false;
  if (iso.vertex_map.size() != g1.num_vertices() || iso.edge_map.size() != g1.num_edges()) return false;
  std::vector<bool> vhit(g2.num_vertices(), false), ehit(g2.num_edges(), false);
  for (VertexId v : iso.vertex_map) {
    if (v >= g2.num_vertices() || vhit[v]) return false;
    vhit[v] = true;
  }
  for (EdgeId e = 0; e < g1.num_edges(); ++e) {
    EdgeId f = iso.edge_map[e];
    if (f >= g2.num_edges() || ehit[f]) return false;
    ehit[f] = true;
    if (g2.source(f) != iso.vertex_map[g1.source(e)] || g2.range(f) != iso.vertex_map[g1.range(e)]) return false;
  }
  return true;
}

namespace {

class IsoSearch {
 public:
  IsoSearch(const DirectedMultigraph& g1, const DirectedMultigraph& g2) : g1_(g1), g2_(g2), n_(g1.num_vertices()) {
    a1_ = adjacency(g1_);
    a2_ = adjacency(g2_);
    order_ = search_order();
    map_.assign(n_, kFree);
    used_.assign(n_, false);
  }

  std::optional<std::vector<VertexId>> run() {
    if (extend(0)) return map_;
    return std::nullopt;
  }

 private:
  static constexpr VertexId kFree = ~VertexId{0};

  std::vector<std::uint32_t> adjacency(const DirectedMultigraph& g) const {
    std::vector<std::uint32_t> a(n_ * n_, 0);
    for (EdgeId e = 0; e < g.num_edges(); ++e) ++a[g.source(e) * n_ + g.range(e)];
    return a;
  }

  // BFS over the underlying undirected graph so each new vertex is usually
  // adjacent to an already placed one.
  std::vector<VertexId> search_order() const {
    std::vector<VertexId> order;
    std::vector<bool> seen(n_, false);
    for (VertexId root = 0; root < n_; ++root) {
      if (seen[root]) continue;
      seen[root] = true;
      order.push_back(root);
      for (std::size_t head = order.size() - 1; head < order.size(); ++head) {
        VertexId v = order[head];
        auto visit = [&](VertexId w) {
          if (!seen[w]) {
            seen[w] = true;
            order.push_back(w);
          }
        };
        for (EdgeId e : g1_.out_edges(v)) visit(g1_.range(e));
        for (EdgeId e : g1_.in_edges(v)) visit(g1_.source(e));
      }
    }
    return order;
  }

  bool compatible(VertexId u, VertexId cand) const {
    if (g1_.out_edges(u).size() != g2_.out_edges(cand).size()) return false;
    if (g1_.in_edges(u).size() != g2_.in_edges(cand).size()) return false;
    if (a1_[u * n_ + u] != a2_[cand * n_ + cand]) return false;
    for (VertexId w = 0; w < n_; ++w) {
      if (map_[w] == kFree) continue;
      if (a1_[u * n_ + w] != a2_[cand * n_ + map_[w]]) return false;
      if (a1_[w * n_ + u] != a2_[map_[w] * n_ + cand]) return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == n_) return true;
    VertexId u = order_[depth];
    for (VertexId cand = 0; cand < n_; ++cand) {
      if (used_[cand] || !compatible(u, cand)) continue;
      map_[u] = cand;
      used_[cand] = true;
      if (extend(depth + 1)) return true;
      map_[u] = kFree;
      used_[cand] = false;
    }
    return false;
  }

  const DirectedMultigraph& g1_;
  const DirectedMultigraph& g2_;
  std::size_t n_;
  std::vector<std::uint32_t> a1_, a2_;
  std::vector<VertexId> order_;
  std::vector<VertexId> map_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<GraphIsomorphism> graph_isomorphic(const DirectedMultigraph& g1, const DirectedMultigraph& g2,
                                                 std::size_t max_vertices) {
  if (g1.num_vertices() > max_vertices || g2.num_vertices() > max_vertices)
    throw ResourceError("graph isomorphism search limited to " + std::to_string(max_vertices) + " vertices");
  if (g1.num_vertices() != g2.num_vertices() || g1.num_edges() != g2.num_edges()) return std::nullopt;
  auto vmap = IsoSearch(g1, g2).run();
  if (!vmap) return std::nullopt;

  GraphIsomorphism iso;
  iso.vertex_map = *vmap;
  iso.edge_map.assign(g1.num_edges(), 0);
  // Parallel edges are matched in id order.
  for (VertexId u = 0; u < g1.num_vertices(); ++u) {
    std::vector<std::vector<EdgeId>> by_range2(g2.num_vertices());
    for (EdgeId f : g2.out_edges(iso.vertex_map[u])) by_range2[g2.range(f)].push_back(f);
    std::vector<std::size_t> cursor(g2.num_vertices(), 0);
    for (EdgeId e : g1.out_edges(u)) {
      VertexId target = iso.vertex_map[g1.range(e)];
      iso.edge_map[e] = by_range2[target][cursor[target]++];
    }
  }
  if (!is_isomorphism(g1, g2, iso)) throw VerificationFailure("isomorphism search produced an invalid map");
  return iso;
}

std::vector<std::vector<VertexId>> connected_components(const DirectedMultigraph& g) {
  std::vector<VertexId> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<VertexId(VertexId)> find = [&](VertexId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    VertexId a = find(g.source(e)), b = find(g.range(e));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<VertexId>> groups(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<VertexId>> out;
  for (auto& grp : groups)
    if (!grp.empty()) out.push_back(std::move(grp));
  return out;
}

DirectedMultigraph induced_subgraph(const DirectedMultigraph& g, const std::vector<VertexId>& vertices) {
  std::vector<bool> inside(g.num_vertices(), false);
  std::vector<std::string> names;
  for (VertexId v : vertices) {
    inside[v] = true;
    names.push_back(g.vertex_name(v));
  }
  std::vector<EdgeRecord> edges;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (inside[g.source(e)] && inside[g.range(e)])
      edges.push_back({g.edge_name(e), g.vertex_name(g.source(e)), g.vertex_name(g.range(e))});
  return DirectedMultigraph(std::move(names), std::move(edges));
}

// ---------------------------------------------------------------------------

LoopDecomposition loop_decompose(std::size_t j, std::size_t n, const Limits& limits) {
  if (j == 0 || n == 0) throw InputError("loop_decompose requires j, n >= 1");
  LoopDecomposition out;
  out.j = j;
  out.n = n;
  out.l = std::gcd(j, n);
  out.p = j / out.l * n;
  if (j * n > limits.max_paths)
    throw ResourceError("C_j(n) has " + std::to_string(j * n) + " vertices, above the guard of " +
                        std::to_string(limits.max_paths));

  auto cj = std::make_shared<const DirectedMultigraph>(build_cycle(j));
  out.cycle_level = build_periodic_graph(cj, n, limits);
  out.model_loop = build_periodic_graph(std::make_shared<const DirectedMultigraph>(build_cycle(1)), out.p, limits);
  const auto& g = *out.cycle_level.graph;

  // Classes of {1..j} under i -> i + r (mod j), r = n mod j; smallest member represents.
  const std::size_t r = n % j;
  std::vector<bool> marked(j + 1, false);
  for (std::size_t i = 1; i <= j; ++i) {
    if (marked[i]) continue;
    out.omega.push_back(i);
    std::size_t k = i;
    do {
      marked[k] = true;
      k = (k - 1 + r) % j + 1;
    } while (k != i);
  }

  auto components = connected_components(g);
  if (components.size() != out.l || out.omega.size() != out.l)
    throw VerificationFailure("C_" + std::to_string(j) + "(" + std::to_string(n) + ") has " +
                              std::to_string(components.size()) + " components and " +
                              std::to_string(out.omega.size()) + " residue classes; expected " +
                              std::to_string(out.l));
  std::vector<std::size_t> comp_of(g.num_vertices());
  for (std::size_t c = 0; c < components.size(); ++c)
    for (VertexId v : components[c]) comp_of[v] = c;
  std::vector<bool> covered(components.size(), false);

  const auto& model = *out.model_loop.graph;
  for (std::size_t i : out.omega) {
    LoopComponent comp;
    comp.representative = i;
    const VertexId start = g.vertex("v" + std::to_string(i));
    VertexId v = start;
    do {
      if (g.out_edges(v).size() != 1 || g.in_edges(v).size() != 1)
        throw VerificationFailure("vertex '" + g.vertex_name(v) + "' of C_j(n) is not on a simple loop");
      comp.vertex_cycle.push_back(v);
      comp.edge_cycle.push_back(g.out_edges(v).front());
      v = g.range(comp.edge_cycle.back());
    } while (v != start && comp.vertex_cycle.size() <= g.num_vertices());
    const std::size_t c = comp_of[start];
    if (comp.vertex_cycle.size() != out.p || components[c].size() != out.p || covered[c])
      throw VerificationFailure("loop through v" + std::to_string(i) + " has length " +
                                std::to_string(comp.vertex_cycle.size()) + ", expected " + std::to_string(out.p));
    covered[c] = true;

    // phi sends the base vertex of C_1(p) to v_i and walks both loops in step.
    comp.phi.vertex_map.assign(model.num_vertices(), 0);
    comp.phi.edge_map.assign(model.num_edges(), 0);
    VertexId mv = model.vertex("v1");
    for (std::size_t t = 0; t < out.p; ++t) {
      EdgeId me = model.out_edges(mv).front();
      comp.phi.vertex_map[mv] = comp.vertex_cycle[t];
      comp.phi.edge_map[me] = comp.edge_cycle[t];
      mv = model.range(me);
    }
    for (EdgeId me = 0; me < model.num_edges(); ++me) {
      EdgeId ce = comp.phi.edge_map[me];
      if (g.source(ce) != comp.phi.vertex_map[model.source(me)] || g.range(ce) != comp.phi.vertex_map[model.range(me)])
        throw VerificationFailure("phi is not a graph morphism on component of v" + std::to_string(i));
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

}  // namespace gbd
