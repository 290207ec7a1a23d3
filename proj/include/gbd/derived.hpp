#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gbd/graph.hpp"

namespace gbd {

enum class DerivedKind {
  Cycle,      // C_j
  Periodic,   // E(n)
  Length,     // E(=n)
  Augmented,  // E[n]
};

std::string to_string(DerivedKind kind);

/// Provenance of a derived-graph vertex: a path of the base graph, or the
/// copy c(v) of a base vertex (E[n] only).
struct DerivedVertex {
  Path path;
  bool is_copy = false;
};

/// Provenance of a derived-graph edge:
///   E(n), E[n]: (e, w) with e = base_edge and w = path
///   E[n]:       (e, c(v)) with is_copy set and path = trivial(v)
///   E(=n):      (w, s(w)) with no base_edge and path = w, |w| = n
struct DerivedEdge {
  std::optional<EdgeId> base_edge;
  Path path;
  bool is_copy = false;
};

/// A graph built from a base graph, carrying vertex/edge provenance.
/// Identifiers are canonical strings: a vertex of E(n) is named by the
/// rendered path, an edge by "(e,w)"; copies are "c(v)"; E(=n) edges are "(w,x)".
struct DerivedGraph {
  DerivedKind kind = DerivedKind::Cycle;
  std::size_t level = 0;
  std::shared_ptr<const DirectedMultigraph> base;
  std::shared_ptr<const DirectedMultigraph> graph;
  std::vector<DerivedVertex> vertices;  // indexed by graph VertexId
  std::vector<DerivedEdge> edges;       // indexed by graph EdgeId

  /// The E(n)-part vertex whose label is `p` (a base-graph path).
  std::optional<VertexId> vertex_of(const Path& p) const;
  /// c(v) in E[n].
  std::optional<VertexId> copy_of(VertexId base_vertex) const;
  /// (e, w) in E(n) or E[n].
  std::optional<EdgeId> edge_of(EdgeId e, const Path& w) const;
};

std::string pair_label(const std::string& first, const std::string& second);
std::string copy_label(const std::string& vertex);

/// C_j with vertices v1..vj and edges e_i : v_i -> v_{i+1 mod j}.
DirectedMultigraph build_cycle(std::size_t j);

/// The single-vertex graph with k loops l1..lk at vertex v.
DirectedMultigraph build_bouquet(std::size_t k);

DerivedGraph build_periodic_graph(std::shared_ptr<const DirectedMultigraph> base, std::size_t n,
                                  const Limits& limits = {});
DerivedGraph build_length_graph(std::shared_ptr<const DirectedMultigraph> base, std::size_t n,
                                const Limits& limits = {});
DerivedGraph build_augmented_graph(std::shared_ptr<const DirectedMultigraph> base, std::size_t n,
                                   const Limits& limits = {});

/// Vertex and edge bijection g1 -> g2 preserving source and range.
struct GraphIsomorphism {
  std::vector<VertexId> vertex_map;
  std::vector<EdgeId> edge_map;
};

/// Checks that `iso` is a bijection preserving s and r.
bool is_isomorphism(const DirectedMultigraph& g1, const DirectedMultigraph& g2, const GraphIsomorphism& iso);

/// Backtracking search. Throws ResourceError if either graph has more than
/// `max_vertices` vertices.
std::optional<GraphIsomorphism> graph_isomorphic(const DirectedMultigraph& g1, const DirectedMultigraph& g2,
                                                 std::size_t max_vertices = 64);

/// Weakly connected components, each as a sorted vertex list; components are
/// ordered by their smallest vertex.
std::vector<std::vector<VertexId>> connected_components(const DirectedMultigraph& g);

/// The subgraph induced on `vertices` (all edges with both ends inside).
DirectedMultigraph induced_subgraph(const DirectedMultigraph& g, const std::vector<VertexId>& vertices);

struct LoopComponent {
  std::size_t representative = 0;      // i in Omega, 1-based
  std::vector<VertexId> vertex_cycle;  // starts at v_i, follows edges
  std::vector<EdgeId> edge_cycle;      // edge_cycle[t] leaves vertex_cycle[t]
  GraphIsomorphism phi;                // C_1(p) -> this component (in C_j(n) ids)
};

struct LoopDecomposition {
  std::size_t j = 0, n = 0;
  std::size_t l = 0;  // gcd(j, n)
  std::size_t p = 0;  // lcm(j, n)
  std::vector<std::size_t> omega;
  std::vector<LoopComponent> components;
  DerivedGraph cycle_level;    // C_j(n)
  DerivedGraph model_loop;     // C_1(p)
};

/// C_j(n) as a disjoint union of gcd(j, n) simple loops of length lcm(j, n).
/// Component structure is obtained by search and cross-checked against the
/// arithmetic; a mismatch raises VerificationFailure.
LoopDecomposition loop_decompose(std::size_t j, std::size_t n, const Limits& limits = {});

}  // namespace gbd
