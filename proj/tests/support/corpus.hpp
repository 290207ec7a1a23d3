#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gbd/graph.hpp"
#include "gbd/io.hpp"
#include "oracle.hpp"

#ifndef GBD_TEST_DATA_DIR
#error "GBD_TEST_DATA_DIR must point at tests/support"
#endif

namespace corpus {

inline std::string data_path(const std::string& rel) { return std::string(GBD_TEST_DATA_DIR) + "/" + rel; }

// Admissible graphs, at most 5 vertices and out-degree at most 3.
inline const std::vector<std::string>& names() {
  static const std::vector<std::string> list = {"cycle1", "cycle2",  "cycle3",   "cycle4",   "bouquet2",
                                                "bouquet3", "petal", "golden",   "full2",    "parallel",
                                                "chorded5", "disjoint", "mixed4"};
  return list;
}

inline std::string graph_file(const std::string& name) { return data_path("graphs/" + name + ".json"); }

inline std::shared_ptr<const gbd::DirectedMultigraph> load(const std::string& name) {
  return std::make_shared<const gbd::DirectedMultigraph>(gbd::graph_from_json(gbd::read_json_file(graph_file(name))));
}

inline oracle::Graph load_oracle(const std::string& name) { return oracle::load(graph_file(name)); }

// Random admissible graph: a random Hamiltonian cycle guarantees no sinks or
// sources, then extra edges up to out-degree 3.
inline gbd::DirectedMultigraph random_admissible(std::mt19937_64& rng, std::size_t max_vertices = 4) {
  const std::size_t nv = std::uniform_int_distribution<std::size_t>(1, max_vertices)(rng);
  std::vector<std::string> vs;
  for (std::size_t i = 0; i < nv; ++i) vs.push_back("x" + std::to_string(i));
  std::vector<std::size_t> perm(nv);
  for (std::size_t i = 0; i < nv; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<gbd::EdgeRecord> es;
  std::vector<std::size_t> outdeg(nv, 0);
  auto add = [&](std::size_t a, std::size_t b) {
    es.push_back({"y" + std::to_string(es.size()), vs[a], vs[b]});
    ++outdeg[a];
  };
  for (std::size_t i = 0; i < nv; ++i) add(perm[i], perm[(i + 1) % nv]);
  const std::size_t extra = std::uniform_int_distribution<std::size_t>(0, nv + 1)(rng);
  std::uniform_int_distribution<std::size_t> pick(0, nv - 1);
  for (std::size_t t = 0; t < extra; ++t) {
    const auto a = pick(rng), b = pick(rng);
    if (outdeg[a] < 3) add(a, b);
  }
  return gbd::DirectedMultigraph(vs, es);
}

inline oracle::Graph to_oracle(const gbd::DirectedMultigraph& g) {
  oracle::Graph o;
  for (gbd::VertexId v = 0; v < g.num_vertices(); ++v) o.vertices.push_back(g.vertex_name(v));
  for (const auto& r : g.edge_records()) o.edges.push_back({r.id, r.src, r.dst});
  return o;
}

// A random walk of the given length, as library path and oracle walk.
inline gbd::Path random_path(const gbd::DirectedMultigraph& g, std::size_t len, std::mt19937_64& rng) {
  gbd::VertexId at = std::uniform_int_distribution<gbd::VertexId>(0, g.num_vertices() - 1)(rng);
  std::vector<gbd::EdgeId> walk;
  for (std::size_t i = 0; i < len; ++i) {
    const auto out = g.out_edges(at);
    const auto e = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
    walk.push_back(e);
    at = g.range(e);
  }
  if (walk.empty()) return gbd::Path::trivial(at);
  return gbd::Path::from_walk(g, walk);
}

inline oracle::Walk to_walk(const gbd::DirectedMultigraph& g, const gbd::Path& p) {
  oracle::Walk w{g.vertex_name(p.source()), {}};
  for (auto e : p.walk()) w.edges.push_back(g.edge_name(e));
  return w;
}

}  // namespace corpus
