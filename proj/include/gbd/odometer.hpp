#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gbd/graph.hpp"
#include "gbd/sequence.hpp"

namespace gbd {

/// An eventually-vertex point (w_1, ..., w_m, v, v, ...) of the
/// {n_k}-compactification. Canonical: the last explicit block is never the
/// trivial path at the tail vertex.
struct OdometerPoint {
  std::vector<Path> blocks;
  VertexId tail = 0;

  /// y_i for i >= 1 (the trivial path at the tail beyond the explicit blocks).
  Path block(std::size_t i) const;
  /// r_E(y_1).
  VertexId range() const;

  bool operator==(const OdometerPoint&) const = default;
};

/// "(w_1, w_2, v, v, ...)" with each block rendered as a path.
std::string render(const DirectedMultigraph& g, const OdometerPoint& y);

/// Drops trailing blocks equal to the trivial path at the tail.
void canonicalize(OdometerPoint& y);

/// Throws DomainError if y is not a point: block lengths outside X_i,
/// incompatible neighbours, or not canonical.
void validate_point(const DirectedMultigraph& g, const DivisibilitySequence& seq, const OdometerPoint& y);

OdometerPoint tau(const DirectedMultigraph& g, const Path& w, const DivisibilitySequence& seq);

bool in_domain(const DirectedMultigraph& g, EdgeId e, const OdometerPoint& y);

/// Smallest i with |y_i| < n_i - n_{i-1}. Always finite for these points.
std::size_t carry_index(const OdometerPoint& y, const DivisibilitySequence& seq);

/// Throws DomainError if y is not in D_e, LevelError if the image needs a
/// level the sequence cannot provide.
OdometerPoint sigma(const DirectedMultigraph& g, EdgeId e, const OdometerPoint& y, const DivisibilitySequence& seq);

struct RangeMembership {
  bool member = false;
  std::optional<std::size_t> l;  // empty means l = infinity (when member)
  std::optional<Path> w_prime;   // y_l = e w'
};

RangeMembership in_range_class(const DirectedMultigraph& g, EdgeId e, const OdometerPoint& y,
                               const DivisibilitySequence& seq);

/// m_k^0(y) = w_1 w_2 ... w_k, a vertex of E(n_k).
Path level_window(const DirectedMultigraph& g, const OdometerPoint& y, std::size_t k);

/// (e w')(n_k), the range of (e, w') in E(n_k).
Path cylinder_step(const DirectedMultigraph& g, EdgeId e, const Path& w_prime, std::size_t k,
                   const DivisibilitySequence& seq);

/// Applies sigma for each edge in `edges` in order, returning the start and every image.
std::vector<OdometerPoint> orbit(const DirectedMultigraph& g, const OdometerPoint& start,
                                 const std::vector<EdgeId>& edges, const DivisibilitySequence& seq);

struct SimplicityPair {
  VertexId from = 0;
  VertexId to = 0;
  bool reachable = false;
};

struct SimplicityLevel {
  std::size_t level = 0;
  std::uint64_t n = 0;
  bool holds = false;
  std::vector<SimplicityPair> pairs;  // all ordered pairs, lexicographic
};

struct SimplicityReport {
  std::vector<SimplicityLevel> levels;  // one per supplied level
  bool holds_at_all_supplied_levels = false;
};

/// For each supplied n_k and each ordered pair (v, u): is there a path from
/// v to u whose length is a positive multiple of n_k? Decided by
/// reachability in E^0 x Z_{n_k}. Throws ResourceError if the product graph
/// has more than `max_states` states.
SimplicityReport sufficient_simplicity(const DirectedMultigraph& g, const DivisibilitySequence& seq,
                                       std::size_t max_states = 10'000'000);

struct NoLoopsReport {
  std::size_t depth = 0;
  std::size_t points_explored = 0;
  std::size_t transitions = 0;
  bool truncated_by_level = false;  // some sigma needed a level the sequence lacks
  bool loop_found = false;
  std::vector<OdometerPoint> counterexample;  // a cycle of points, if any
};

/// Explores all points reachable from tau(E^0) within `depth` sigma-steps and
/// searches the resulting transition graph for a directed cycle.
NoLoopsReport no_loops_certificate(const DirectedMultigraph& g, const DivisibilitySequence& seq, std::size_t depth,
                                   const Limits& limits = {});

}  // namespace gbd
