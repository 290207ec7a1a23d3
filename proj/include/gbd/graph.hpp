#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gbd {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Size guards shared by every construction that enumerates paths or builds
/// matrices. Exceeding one raises ResourceError.
struct Limits {
  std::size_t max_paths = 50000;
  std::size_t max_dim = 3000;
};

struct EdgeRecord {
  std::string id;
  std::string src;
  std::string dst;

  bool operator==(const EdgeRecord&) const = default;
};

/// Finite directed multigraph E = (E^0, E^1, r, s).
///
/// Vertex and edge identifiers are opaque strings. Internally both are
/// renumbered in lexicographic order of their identifiers, so VertexId and
/// EdgeId orderings agree with identifier orderings. Parallel edges and loops
/// are allowed. Vertex ids and edge ids must be unique and the two id sets
/// disjoint, which keeps rendered path names unambiguous.
class DirectedMultigraph {
 public:
  DirectedMultigraph() = default;
  DirectedMultigraph(std::vector<std::string> vertices, std::vector<EdgeRecord> edges);

  std::size_t num_vertices() const { return vertex_names_.size(); }
  std::size_t num_edges() const { return edge_names_.size(); }

  const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }
  const std::string& edge_name(EdgeId e) const { return edge_names_[e]; }

  VertexId source(EdgeId e) const { return source_[e]; }
  VertexId range(EdgeId e) const { return range_[e]; }

  // Edges leaving / entering a vertex, in EdgeId order.
  std::span<const EdgeId> out_edges(VertexId v) const;
  std::span<const EdgeId> in_edges(VertexId v) const;

  bool has_vertex(std::string_view name) const;
  bool has_edge(std::string_view name) const;
  // Throw InputError naming the missing identifier.
  VertexId vertex(std::string_view name) const;
  EdgeId edge(std::string_view name) const;

  std::vector<EdgeRecord> edge_records() const;

  bool operator==(const DirectedMultigraph& other) const;

 private:
  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  std::vector<VertexId> source_;
  std::vector<VertexId> range_;
  std::vector<std::size_t> out_offset_, in_offset_;
  std::vector<EdgeId> out_list_, in_list_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, EdgeId> edge_index_;
};

/// A finite path. Edges are stored in walk order (first traversed first).
/// Printing follows the right-to-left convention: the walk e1 then e2 is
/// written "e2.e1". A trivial path is a vertex.
class Path {
 public:
  Path() = default;

  static Path trivial(VertexId v);
  // Validates composability; throws DomainError on a broken walk.
  static Path from_walk(const DirectedMultigraph& g, std::vector<EdgeId> walk);

  std::size_t length() const { return walk_.size(); }
  bool is_trivial() const { return walk_.empty(); }
  VertexId source() const { return source_; }
  VertexId range() const { return range_; }
  std::span<const EdgeId> walk() const { return walk_; }

  // e.w in printed order: walk along *this, then along e.
  Path extended(const DirectedMultigraph& g, EdgeId e) const;

  // Edges [first, first + count) of the walk, as a path. For count == 0 this
  // is the trivial path at the vertex reached after `first` steps.
  Path slice(const DirectedMultigraph& g, std::size_t first, std::size_t count) const;

  // Shortlex order on walks; trivial paths ordered by vertex.
  std::strong_ordering operator<=>(const Path& other) const;
  bool operator==(const Path& other) const = default;

  std::size_t hash() const;

 private:
  VertexId source_ = 0;
  VertexId range_ = 0;
  std::vector<EdgeId> walk_;
};

struct PathHash {
  std::size_t operator()(const Path& p) const { return p.hash(); }
};

/// outer . inner (walk inner, then outer). Throws DomainError unless
/// s(outer) == r(inner).
Path concat(const DirectedMultigraph& g, const Path& outer, const Path& inner);

std::string render(const DirectedMultigraph& g, const Path& p);
/// Inverse of render. Throws InputError on unknown ids or broken walks.
Path parse_path(const DirectedMultigraph& g, std::string_view text);

struct ValidationReport {
  std::vector<VertexId> sinks;    // no outgoing edge
  std::vector<VertexId> sources;  // no incoming edge
  bool admissible() const { return sinks.empty() && sources.empty(); }
};

ValidationReport validate_graph(const DirectedMultigraph& g);

/// Throws InputError unless g has no sinks and no sources.
void require_admissible(const DirectedMultigraph& g, std::string_view context);

/// The subgraph on vertices that receive infinitely many paths (reachable
/// from a cycle). Requires g to have no sinks.
DirectedMultigraph reduce_tilde(const DirectedMultigraph& g);

enum class PathMode { Exactly, Below };

struct PathCounts {
  std::vector<std::uint64_t> by_source;  // d_E(n, x)
  std::uint64_t total = 0;               // d_E(n); saturates at UINT64_MAX
};

/// d_E(n, x): paths of length < n starting at x.
PathCounts path_counts(const DirectedMultigraph& g, std::size_t n);
/// Paths of length exactly n, per source vertex.
PathCounts exact_path_counts(const DirectedMultigraph& g, std::size_t n);

/// Shortlex-ordered, duplicate-free E^{=n} or E^{<n}.
std::vector<Path> enumerate_paths(const DirectedMultigraph& g, PathMode mode, std::size_t n,
                                  const Limits& limits = {});

/// w = w(n) v_k ... v_1 with |v_i| = n and |w(n)| = |w| mod n.
struct Remainder {
  Path head;                   // w(n), the range-side segment
  std::vector<Path> segments;  // v_1 (traversed first) ... v_k
};

Remainder remainder(const DirectedMultigraph& g, const Path& w, std::size_t n);
/// Just w(n).
Path remainder_head(const DirectedMultigraph& g, const Path& w, std::size_t n);

}  // namespace gbd
