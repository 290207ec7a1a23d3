#include "gbd/odometer.hpp"

#include <deque>
#include <map>
#include <unordered_map>

#include "gbd/errors.hpp"

namespace gbd {

Path OdometerPoint::block(std::size_t i) const {
  if (i == 0) throw DomainError("blocks are indexed from 1");
  return i <= blocks.size() ? blocks[i - 1] : Path::trivial(tail);
}

VertexId OdometerPoint::range() const { return blocks.empty() ? tail : blocks.front().range(); }

std::string render(const DirectedMultigraph& g, const OdometerPoint& y) {
  std::string out = "(";
  for (const auto& b : y.blocks) out += render(g, b) + ", ";
  out += g.vertex_name(y.tail) + ", " + g.vertex_name(y.tail) + ", ...)";
  return out;
}

void canonicalize(OdometerPoint& y) {
  while (!y.blocks.empty() && y.blocks.back().is_trivial() && y.blocks.back().source() == y.tail) y.blocks.pop_back();
}

void validate_point(const DirectedMultigraph& g, const DivisibilitySequence& seq, const OdometerPoint& y) {
  if (y.tail >= g.num_vertices()) throw DomainError("tail vertex out of range");
  for (std::size_t i = 1; i <= y.blocks.size(); ++i) {
    const auto& b = y.blocks[i - 1];
    const std::uint64_t len = b.length();
    if (len % seq.level(i - 1) != 0 || len >= seq.level(i))
      throw DomainError("block " + std::to_string(i) + " has length " + std::to_string(len) + ", outside X_" +
                        std::to_string(i));
    const VertexId next = i < y.blocks.size() ? y.blocks[i].range() : y.tail;
    if (b.source() != next)
      throw DomainError("block " + std::to_string(i) + " does not start where block " + std::to_string(i + 1) +
                        " ends");
  }
  if (!y.blocks.empty() && y.blocks.back().is_trivial() && y.blocks.back().source() == y.tail)
    throw DomainError("point is not in canonical form");
}

OdometerPoint tau(const DirectedMultigraph& g, const Path& w, const DivisibilitySequence& seq) {
  OdometerPoint y;
  y.tail = w.source();
  if (!w.is_trivial()) y.blocks = block_decompose(g, w, seq).blocks;
  canonicalize(y);
  return y;
}

bool in_domain(const DirectedMultigraph& g, EdgeId e, const OdometerPoint& y) { return y.range() == g.source(e); }

std::size_t carry_index(const OdometerPoint& y, const DivisibilitySequence& seq) {
  for (std::size_t i = 1; i <= y.blocks.size(); ++i) {
    if (y.blocks[i - 1].length() < seq.level(i) - seq.level(i - 1)) return i;
  }
  // Implicit blocks are trivial; only n_1 = n_0 = 1 can skip one.
  std::size_t i = y.blocks.size() + 1;
  while (seq.level(i) == seq.level(i - 1)) ++i;
  return i;
}

OdometerPoint sigma(const DirectedMultigraph& g, EdgeId e, const OdometerPoint& y, const DivisibilitySequence& seq) {
  if (!in_domain(g, e, y))
    throw DomainError("point is outside D_" + g.edge_name(e) + ": r(y_1) = " + g.vertex_name(y.range()) +
                      " but s(" + g.edge_name(e) + ") = " + g.vertex_name(g.source(e)));
  const std::size_t i = carry_index(y, seq);
  seq.level(i);  // the new block lives in X_i

  Path carried = y.block(i);
  for (std::size_t j = i - 1; j >= 1; --j) carried = concat(g, y.block(j), carried);
  carried = carried.extended(g, e);

  OdometerPoint out;
  out.tail = y.tail;
  out.blocks.assign(i - 1, Path::trivial(g.range(e)));
  out.blocks.push_back(std::move(carried));
  for (std::size_t j = i; j < y.blocks.size(); ++j) out.blocks.push_back(y.blocks[j]);
  canonicalize(out);
  return out;
}

RangeMembership in_range_class(const DirectedMultigraph& g, EdgeId e, const OdometerPoint& y,
                               const DivisibilitySequence& seq) {
  RangeMembership out;
  const VertexId re = g.range(e);
  for (std::size_t i = 1; i <= y.blocks.size(); ++i) {
    const auto& b = y.blocks[i - 1];
    if (b.is_trivial() && b.source() == re) continue;
    if (b.is_trivial() || b.walk().back() != e) return out;
    Path rest = b.slice(g, 0, b.length() - 1);
    if ((rest.length() + 1) % seq.level(i - 1) != 0) return out;
    out.member = true;
    out.l = i;
    out.w_prime = std::move(rest);
    return out;
  }
  out.member = y.tail == re;
  return out;
}

Path level_window(const DirectedMultigraph& g, const OdometerPoint& y, std::size_t k) {
  if (k == 0) throw DomainError("level windows start at k = 1");
  Path acc = y.block(k);
  for (std::size_t j = k - 1; j >= 1; --j) acc = concat(g, y.block(j), acc);
  return acc;
}

Path cylinder_step(const DirectedMultigraph& g, EdgeId e, const Path& w_prime, std::size_t k,
                   const DivisibilitySequence& seq) {
  const std::uint64_t n = seq.level(k);
  if (w_prime.length() >= n)
    throw DomainError("path of length " + std::to_string(w_prime.length()) + " is not a vertex of E(" +
                      std::to_string(n) + ")");
  if (w_prime.range() != g.source(e))
    throw DomainError("(" + g.edge_name(e) + ", " + render(g, w_prime) + ") is not an edge: r(w') = " +
                      g.vertex_name(w_prime.range()) + " but s(e) = " + g.vertex_name(g.source(e)));
  if (w_prime.length() + 1 < n) return w_prime.extended(g, e);
  return Path::trivial(g.range(e));
}

std::vector<OdometerPoint> orbit(const DirectedMultigraph& g, const OdometerPoint& start,
                                 const std::vector<EdgeId>& edges, const DivisibilitySequence& seq) {
  std::vector<OdometerPoint> out{start};
  for (EdgeId e : edges) out.push_back(sigma(g, e, out.back(), seq));
  return out;
}

SimplicityReport sufficient_simplicity(const DirectedMultigraph& g, const DivisibilitySequence& seq,
                                       std::size_t max_states) {
  require_admissible(g, "sufficient simplicity");
  SimplicityReport report;
  report.holds_at_all_supplied_levels = true;
  const std::size_t V = g.num_vertices();
  for (std::size_t k = 1; k <= seq.supplied_levels(); ++k) {
    const std::uint64_t n = seq.level(k);
    if (n > max_states / V)
      throw ResourceError("product graph at level " + std::to_string(k) + " has " + std::to_string(n) + " x " +
                          std::to_string(V) + " states, above the guard " + std::to_string(max_states));
    SimplicityLevel lvl;
    lvl.level = k;
    lvl.n = n;
    lvl.holds = true;
    std::vector<char> seen(V * n);
    std::vector<std::size_t> stack;
    for (VertexId v = 0; v < V; ++v) {
      std::fill(seen.begin(), seen.end(), 0);
      stack.clear();
      // Seed with the first step so the empty walk does not count.
      for (EdgeId x : g.out_edges(v)) {
        const std::size_t s = g.range(x) * n + (1 % n);
        if (!seen[s]) seen[s] = 1, stack.push_back(s);
      }
      while (!stack.empty()) {
        const std::size_t s = stack.back();
        stack.pop_back();
        const VertexId at = static_cast<VertexId>(s / n);
        const std::uint64_t phase = (s % n + 1) % n;
        for (EdgeId x : g.out_edges(at)) {
          const std::size_t t = g.range(x) * n + phase;
          if (!seen[t]) seen[t] = 1, stack.push_back(t);
        }
      }
      for (VertexId u = 0; u < V; ++u) {
        const bool ok = seen[u * n] != 0;
        lvl.pairs.push_back({v, u, ok});
        lvl.holds = lvl.holds && ok;
      }
    }
    report.holds_at_all_supplied_levels = report.holds_at_all_supplied_levels && lvl.holds;
    report.levels.push_back(std::move(lvl));
  }
  return report;
}

namespace {

std::string point_key(const OdometerPoint& y) {
  std::string key = std::to_string(y.tail);
  for (const auto& b : y.blocks) {
    key += '|';
    key += std::to_string(b.source());
    for (EdgeId e : b.walk()) key += ',' + std::to_string(e);
  }
  return key;
}

}  // namespace

NoLoopsReport no_loops_certificate(const DirectedMultigraph& g, const DivisibilitySequence& seq, std::size_t depth,
                                   const Limits& limits) {
  NoLoopsReport report;
  report.depth = depth;
  std::vector<OdometerPoint> points;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::vector<std::size_t>> succ;
  std::deque<std::pair<std::size_t, std::size_t>> queue;  // (point, depth reached)

  auto intern = [&](OdometerPoint y) -> std::pair<std::size_t, bool> {
    auto key = point_key(y);
    auto [it, fresh] = index.emplace(std::move(key), points.size());
    if (fresh) {
      if (points.size() >= limits.max_paths)
        throw ResourceError("no-loops search exceeded " + std::to_string(limits.max_paths) + " points");
      points.push_back(std::move(y));
      succ.emplace_back();
    }
    return {it->second, fresh};
  };

  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    auto [id, fresh] = intern(tau(g, Path::trivial(v), seq));
    if (fresh) queue.emplace_back(id, 0);
  }
  while (!queue.empty()) {
    auto [id, d] = queue.front();
    queue.pop_front();
    if (d == depth) continue;
    const VertexId at = points[id].range();
    for (EdgeId e : g.out_edges(at)) {
      OdometerPoint next;
      try {
        next = sigma(g, e, points[id], seq);
      } catch (const LevelError&) {
        report.truncated_by_level = true;
        continue;
      }
      auto [nid, fresh] = intern(std::move(next));
      succ[id].push_back(nid);
      ++report.transitions;
      if (fresh) queue.emplace_back(nid, d + 1);
    }
  }
  report.points_explored = points.size();

  // Kahn: anything left with positive in-degree lies on or after a cycle.
  std::vector<std::size_t> indeg(points.size(), 0);
  for (const auto& s : succ)
    for (auto t : s) ++indeg[t];
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (indeg[i] == 0) ready.push_back(i);
  std::size_t removed = 0;
  while (!ready.empty()) {
    auto i = ready.back();
    ready.pop_back();
    ++removed;
    for (auto t : succ[i])
      if (--indeg[t] == 0) ready.push_back(t);
  }
  if (removed == points.size()) return report;

  report.loop_found = true;
  // Every leftover point has a leftover predecessor; walk backwards until one repeats.
  std::vector<std::vector<std::size_t>> pred(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    for (auto t : succ[i]) pred[t].push_back(i);
  std::size_t cur = 0;
  while (indeg[cur] == 0) ++cur;
  std::map<std::size_t, std::size_t> visited;
  std::vector<std::size_t> trail;
  while (!visited.count(cur)) {
    visited[cur] = trail.size();
    trail.push_back(cur);
    for (auto p : pred[cur])
      if (indeg[p] > 0) {
        cur = p;
        break;
      }
  }
  for (std::size_t i = trail.size(); i-- > visited[cur];) report.counterexample.push_back(points[trail[i]]);
  return report;
}

}  // namespace gbd
