#include "gbd/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "gbd/errors.hpp"

namespace gbd {

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max()
                                                           : a + b;
}

void build_adjacency(std::size_t nv, const std::vector<VertexId>& key, std::vector<std::size_t>& offset,
                     std::vector<EdgeId>& list) {
  offset.assign(nv + 1, 0);
  for (VertexId v : key) ++offset[v + 1];
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  list.assign(key.size(), 0);
  std::vector<std::size_t> cursor(offset.begin(), offset.end() - 1);
  // Edge ids are visited in increasing order, so each bucket ends up sorted.
  for (EdgeId e = 0; e < key.size(); ++e) list[cursor[key[e]]++] = e;
}

}  // namespace

DirectedMultigraph::DirectedMultigraph(std::vector<std::string> vertices, std::vector<EdgeRecord> edges) {
  if (vertices.empty()) throw StructuralError("graph has no vertices");
  std::sort(vertices.begin(), vertices.end());
  if (auto dup = std::adjacent_find(vertices.begin(), vertices.end()); dup != vertices.end())
    throw StructuralError("duplicate vertex id '" + *dup + "'");
  std::sort(edges.begin(), edges.end(), [](const EdgeRecord& a, const EdgeRecord& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i].id == edges[i - 1].id) throw StructuralError("duplicate edge id '" + edges[i].id + "'");

  vertex_names_ = std::move(vertices);
  vertex_index_.reserve(vertex_names_.size());
  for (VertexId v = 0; v < vertex_names_.size(); ++v) vertex_index_.emplace(vertex_names_[v], v);

  edge_names_.reserve(edges.size());
  source_.reserve(edges.size());
  range_.reserve(edges.size());
  edge_index_.reserve(edges.size());
  for (auto& rec : edges) {
    auto s = vertex_index_.find(rec.src);
    auto r = vertex_index_.find(rec.dst);
    if (s == vertex_index_.end())
      throw StructuralError("edge '" + rec.id + "' has unknown source vertex '" + rec.src + "'");
    if (r == vertex_index_.end())
      throw StructuralError("edge '" + rec.id + "' has unknown range vertex '" + rec.dst + "'");
    if (vertex_index_.count(rec.id))
      throw StructuralError("edge id '" + rec.id + "' collides with a vertex id");
    edge_index_.emplace(rec.id, static_cast<EdgeId>(edge_names_.size()));
    edge_names_.push_back(std::move(rec.id));
    source_.push_back(s->second);
    range_.push_back(r->second);
  }
  build_adjacency(vertex_names_.size(), source_, out_offset_, out_list_);
  build_adjacency(vertex_names_.size(), range_, in_offset_, in_list_);
}

std::span<const EdgeId> DirectedMultigraph::out_edges(VertexId v) const {
  return {out_list_.data() + out_offset_[v], out_offset_[v + 1] - out_offset_[v]};
}

std::span<const EdgeId> DirectedMultigraph::in_edges(VertexId v) const {
  return {in_list_.data() + in_offset_[v], in_offset_[v + 1] - in_offset_[v]};
}

bool DirectedMultigraph::has_vertex(std::string_view name) const {
  return vertex_index_.count(std::string(name)) != 0;
}

bool DirectedMultigraph::has_edge(std::string_view name) const {
  return edge_index_.count(std::string(name)) != 0;
}

VertexId DirectedMultigraph::vertex(std::string_view name) const {
  auto it = vertex_index_.find(std::string(name));
  if (it == vertex_index_.end()) throw InputError("unknown vertex '" + std::string(name) + "'");
  return it->second;
}

EdgeId DirectedMultigraph::edge(std::string_view name) const {
  auto it = edge_index_.find(std::string(name));
  if (it == edge_index_.end()) throw InputError("unknown edge '" + std::string(name) + "'");
  return it->second;
}

std::vector<EdgeRecord> DirectedMultigraph::edge_records() const {
  std::vector<EdgeRecord> out;
  out.reserve(num_edges());
  for (EdgeId e = 0; e < num_edges(); ++e)
    out.push_back({edge_names_[e], vertex_names_[source_[e]], vertex_names_[range_[e]]});
  return out;
}

bool DirectedMultigraph::operator==(const DirectedMultigraph& other) const {
  return vertex_names_ == other.vertex_names_ && edge_names_ == other.edge_names_ && source_ == other.source_ &&
         range_ == other.range_;
}

// ---------------------------------------------------------------------------

Path Path::trivial(VertexId v) {
  Path p;
  p.source_ = p.range_ = v;
  return p;
}

Path Path::from_walk(const DirectedMultigraph& g, std::vector<EdgeId> walk) {
  if (walk.empty()) throw DomainError("from_walk needs at least one edge; use Path::trivial");
  for (std::size_t i = 0; i < walk.size(); ++i) {
    if (walk[i] >= g.num_edges()) throw DomainError("edge index out of range in walk");
    if (i > 0 && g.range(walk[i - 1]) != g.source(walk[i]))
      throw DomainError("edges '" + g.edge_name(walk[i - 1]) + "' and '" + g.edge_name(walk[i]) +
                        "' are not composable");
  }
  Path p;
  p.source_ = g.source(walk.front());
  p.range_ = g.range(walk.back());
  p.walk_ = std::move(walk);
  return p;
}

Path Path::extended(const DirectedMultigraph& g, EdgeId e) const {
  if (g.source(e) != range_)
    throw DomainError("edge '" + g.edge_name(e) + "' does not start at the range of the path");
  Path p = *this;
  p.walk_.push_back(e);
  p.range_ = g.range(e);
  return p;
}

Path Path::slice(const DirectedMultigraph& g, std::size_t first, std::size_t count) const {
  if (first + count > walk_.size()) throw DomainError("path slice out of bounds");
  if (count == 0) {
    if (first == walk_.size()) return trivial(range_);
    return trivial(g.source(walk_[first]));
  }
  Path p;
  p.walk_.assign(walk_.begin() + static_cast<std::ptrdiff_t>(first),
                 walk_.begin() + static_cast<std::ptrdiff_t>(first + count));
  p.source_ = g.source(p.walk_.front());
  p.range_ = g.range(p.walk_.back());
  return p;
}

std::strong_ordering Path::operator<=>(const Path& other) const {
  if (auto c = walk_.size() <=> other.walk_.size(); c != 0) return c;
  if (walk_.empty()) return source_ <=> other.source_;
  return std::lexicographical_compare_three_way(walk_.begin(), walk_.end(), other.walk_.begin(),
                                                other.walk_.end());
}

std::size_t Path::hash() const {
  std::size_t h = std::hash<std::uint64_t>{}((std::uint64_t{source_} << 32) | range_);
  for (EdgeId e : walk_) h ^= std::hash<std::uint32_t>{}(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

Path concat(const DirectedMultigraph& g, const Path& outer, const Path& inner) {
  if (outer.source() != inner.range())
    throw DomainError("cannot compose: source of outer path is '" + g.vertex_name(outer.source()) +
                      "' but inner path ends at '" + g.vertex_name(inner.range()) + "'");
  if (outer.is_trivial()) return inner;
  if (inner.is_trivial()) return outer;
  std::vector<EdgeId> walk(inner.walk().begin(), inner.walk().end());
  walk.insert(walk.end(), outer.walk().begin(), outer.walk().end());
  return Path::from_walk(g, std::move(walk));
}

std::string render(const DirectedMultigraph& g, const Path& p) {
  if (p.is_trivial()) return g.vertex_name(p.source());
  std::string out;
  auto walk = p.walk();
  for (auto it = walk.rbegin(); it != walk.rend(); ++it) {
    if (!out.empty()) out += '.';
    out += g.edge_name(*it);
  }
  return out;
}

Path parse_path(const DirectedMultigraph& g, std::string_view text) {
  if (g.has_vertex(text)) return Path::trivial(g.vertex(text));
  std::vector<EdgeId> printed;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto dot = text.find('.', start);
    auto token = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    if (token.empty()) throw InputError("malformed path '" + std::string(text) + "'");
    printed.push_back(g.edge(token));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  std::reverse(printed.begin(), printed.end());
  try {
    return Path::from_walk(g, std::move(printed));
  } catch (const DomainError& err) {
    throw InputError("path '" + std::string(text) + "': " + err.what());
  }
}

// ---------------------------------------------------------------------------

ValidationReport validate_graph(const DirectedMultigraph& g) {
  ValidationReport report;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (g.out_edges(v).empty()) report.sinks.push_back(v);
    if (g.in_edges(v).empty()) report.sources.push_back(v);
  }
  return report;
}

void require_admissible(const DirectedMultigraph& g, std::string_view context) {
  auto report = validate_graph(g);
  if (report.admissible()) return;
  std::string msg(context);
  msg += ": graph must have no sinks and no sources";
  if (!report.sinks.empty()) msg += " (sink '" + g.vertex_name(report.sinks.front()) + "')";
  if (!report.sources.empty()) msg += " (source '" + g.vertex_name(report.sources.front()) + "')";
  throw InputError(msg);
}

namespace {

// Iterative Tarjan; returns component index per vertex.
std::vector<std::size_t> strongly_connected_components(const DirectedMultigraph& g, std::size_t& count) {
  const std::size_t n = g.num_vertices();
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<VertexId> stack;
  std::size_t next_index = 0;
  count = 0;

  struct Frame {
    VertexId v;
    std::size_t edge_pos;
  };
  for (VertexId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      auto outs = g.out_edges(v);
      if (pos < outs.size()) {
        VertexId w = g.range(outs[pos++]);
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        VertexId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
      VertexId done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[done]);
    }
  }
  return comp;
}

}  // namespace

DirectedMultigraph reduce_tilde(const DirectedMultigraph& g) {
  auto report = validate_graph(g);
  if (!report.sinks.empty())
    throw InputError("reduce_tilde requires a graph without sinks; '" + g.vertex_name(report.sinks.front()) +
                     "' is a sink");
  std::size_t ncomp = 0;
  auto comp = strongly_connected_components(g, ncomp);
  std::vector<std::size_t> comp_size(ncomp, 0);
  for (auto c : comp) ++comp_size[c];
  std::vector<bool> cyclic(ncomp, false);
  for (std::size_t c = 0; c < ncomp; ++c) cyclic[c] = comp_size[c] > 1;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (g.source(e) == g.range(e)) cyclic[comp[g.source(e)]] = true;

  // Infinitely many paths end at v iff v is reachable from a cycle.
  std::vector<bool> keep(g.num_vertices(), false);
  std::vector<VertexId> frontier;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (cyclic[comp[v]]) {
      keep[v] = true;
      frontier.push_back(v);
    }
  while (!frontier.empty()) {
    VertexId v = frontier.back();
    frontier.pop_back();
    for (EdgeId e : g.out_edges(v)) {
      VertexId w = g.range(e);
      if (!keep[w]) {
        keep[w] = true;
        frontier.push_back(w);
      }
    }
  }

  std::vector<std::string> vertices;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (keep[v]) vertices.push_back(g.vertex_name(v));
  std::vector<EdgeRecord> edges;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (keep[g.source(e)] && keep[g.range(e)])
      edges.push_back({g.edge_name(e), g.vertex_name(g.source(e)), g.vertex_name(g.range(e))});
  return DirectedMultigraph(std::move(vertices), std::move(edges));
}

PathCounts exact_path_counts(const DirectedMultigraph& g, std::size_t n) {
  // c_L(x) = number of length-L paths starting at x.
  std::vector<std::uint64_t> current(g.num_vertices(), 1), next(g.num_vertices());
  for (std::size_t step = 0; step < n; ++step) {
    for (VertexId x = 0; x < g.num_vertices(); ++x) {
      std::uint64_t acc = 0;
      for (EdgeId e : g.out_edges(x)) acc = saturating_add(acc, current[g.range(e)]);
      next[x] = acc;
    }
    current.swap(next);
  }
  PathCounts out;
  out.by_source = current;
  for (auto c : current) out.total = saturating_add(out.total, c);
  return out;
}

PathCounts path_counts(const DirectedMultigraph& g, std::size_t n) {
  PathCounts out;
  out.by_source.assign(g.num_vertices(), 0);
  std::vector<std::uint64_t> current(g.num_vertices(), 1), next(g.num_vertices());
  for (std::size_t len = 0; len < n; ++len) {
    for (VertexId x = 0; x < g.num_vertices(); ++x) out.by_source[x] = saturating_add(out.by_source[x], current[x]);
    for (VertexId x = 0; x < g.num_vertices(); ++x) {
      std::uint64_t acc = 0;
      for (EdgeId e : g.out_edges(x)) acc = saturating_add(acc, current[g.range(e)]);
      next[x] = acc;
    }
    current.swap(next);
  }
  for (auto c : out.by_source) out.total = saturating_add(out.total, c);
  return out;
}

std::vector<Path> enumerate_paths(const DirectedMultigraph& g, PathMode mode, std::size_t n, const Limits& limits) {
  if (mode == PathMode::Below && n == 0) throw InputError("below-n enumeration requires n >= 1");
  const auto count = mode == PathMode::Below ? path_counts(g, n).total : exact_path_counts(g, n).total;
  if (count > limits.max_paths)
    throw ResourceError("path enumeration would produce " +
                        (count == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                            : std::to_string(count)) +
                        " paths, above the guard of " + std::to_string(limits.max_paths));

  std::vector<Path> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<Path> layer;
  for (VertexId v = 0; v < g.num_vertices(); ++v) layer.push_back(Path::trivial(v));
  const std::size_t last = mode == PathMode::Below ? n - 1 : n;
  for (std::size_t len = 0;; ++len) {
    if (mode == PathMode::Below || len == n) out.insert(out.end(), layer.begin(), layer.end());
    if (len == last) break;
    std::vector<Path> grown;
    for (const auto& p : layer)
      for (EdgeId e : g.out_edges(p.range())) grown.push_back(p.extended(g, e));
    std::sort(grown.begin(), grown.end());
    layer = std::move(grown);
  }
  return out;
}

Remainder remainder(const DirectedMultigraph& g, const Path& w, std::size_t n) {
  if (n == 0) throw InputError("remainder requires n >= 1");
  Remainder out;
  const std::size_t r = w.length() % n;
  const std::size_t k = w.length() / n;
  out.head = w.slice(g, k * n, r);
  out.segments.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.segments.push_back(w.slice(g, i * n, n));
  return out;
}

Path remainder_head(const DirectedMultigraph& g, const Path& w, std::size_t n) {
  if (n == 0) throw InputError("remainder requires n >= 1");
  const std::size_t r = w.length() % n;
  return w.slice(g, w.length() - r, r);
}

}  // namespace gbd
