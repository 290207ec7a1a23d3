#pragma once

// Naive reference implementations used as test oracles. Everything here works
// on plain strings and vectors, straight from the definitions, and does not
// call into the library.

#include <gmpxx.h>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

struct Edge {
  std::string id, src, dst;
};

struct Graph {
  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  const Edge& edge(const std::string& id) const {
    for (const auto& e : edges)
      if (e.id == id) return e;
    throw std::runtime_error("oracle: no edge " + id);
  }
  std::vector<const Edge*> out(const std::string& v) const {
    std::vector<const Edge*> r;
    for (const auto& e : edges)
      if (e.src == v) r.push_back(&e);
    return r;
  }
};

inline Graph load(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("oracle: cannot open " + file);
  auto doc = nlohmann::json::parse(in);
  Graph g;
  for (const auto& v : doc["vertices"]) g.vertices.push_back(v.get<std::string>());
  for (const auto& e : doc["edges"]) g.edges.push_back({e["id"], e["src"], e["dst"]});
  return g;
}

inline Graph cycle(std::size_t j) {
  Graph g;
  for (std::size_t i = 1; i <= j; ++i) g.vertices.push_back("v" + std::to_string(i));
  for (std::size_t i = 1; i <= j; ++i)
    g.edges.push_back({"e" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string(i % j + 1)});
  return g;
}

// A path: start vertex plus edge ids in the order they are walked.
struct Walk {
  std::string start;
  std::vector<std::string> edges;

  std::size_t size() const { return edges.size(); }
  bool operator==(const Walk&) const = default;
  auto operator<=>(const Walk&) const = default;
};

inline std::string end_of(const Graph& g, const Walk& w) { return w.edges.empty() ? w.start : g.edge(w.edges.back()).dst; }

// Right-to-left: walking a then b prints "b.a".
inline std::string name(const Walk& w) {
  if (w.edges.empty()) return w.start;
  std::string s;
  for (auto it = w.edges.rbegin(); it != w.edges.rend(); ++it) s += (s.empty() ? "" : ".") + *it;
  return s;
}

// Sub-walk of `count` edges starting after `first` steps.
inline Walk cut(const Graph& g, const Walk& w, std::size_t first, std::size_t count) {
  Walk r;
  r.start = w.start;
  for (std::size_t i = 0; i < first; ++i) r.start = g.edge(w.edges[i]).dst;
  r.edges.assign(w.edges.begin() + first, w.edges.begin() + first + count);
  return r;
}

inline Walk join(const Walk& inner, const Walk& outer) {
  Walk r = inner;
  r.edges.insert(r.edges.end(), outer.edges.begin(), outer.edges.end());
  return r;
}

inline void all_walks_from(const Graph& g, Walk& cur, std::size_t len, std::vector<Walk>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (const auto* e : g.out(end_of(g, cur))) {
    cur.edges.push_back(e->id);
    all_walks_from(g, cur, len, out);
    cur.edges.pop_back();
  }
}

inline std::vector<Walk> walks_exactly(const Graph& g, std::size_t len) {
  std::vector<Walk> out;
  for (const auto& v : g.vertices) {
    Walk w{v, {}};
    all_walks_from(g, w, len, out);
  }
  return out;
}

inline std::vector<Walk> walks_below(const Graph& g, std::size_t n) {
  std::vector<Walk> out;
  for (std::size_t m = 0; m < n; ++m)
    for (auto& w : walks_exactly(g, m)) out.push_back(std::move(w));
  return out;
}

// w(n): the last |w| mod n edges walked.
inline Walk remainder(const Graph& g, const Walk& w, std::size_t n) {
  const std::size_t r = w.size() % n;
  return cut(g, w, w.size() - r, r);
}

// Levels n_0 = 1, n_1, ..., extended by repeating the last ratio. Repeats
// inside the prefix are dropped; n_1 = 1 is kept as a level of its own.
inline std::vector<std::uint64_t> levels(std::vector<std::uint64_t> prefix, std::size_t count) {
  std::vector<std::uint64_t> out{1};
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (i == 0 || prefix[i] != prefix[i - 1]) out.push_back(prefix[i]);
  const std::uint64_t m = out.size() >= 3 ? out.back() / out[out.size() - 2] : out.back();
  while (out.size() < count + 1) out.push_back(out.back() * m);
  return out;
}

// All tuples (l_1, ..., l_K) with l_i = multiple of n_{i-1}, l_i < n_i,
// summing to len. Search is exhaustive over the tuple space.
inline std::vector<std::vector<std::uint64_t>> block_length_solutions(std::uint64_t len,
                                                                      const std::vector<std::uint64_t>& lv) {
  std::vector<std::vector<std::uint64_t>> sols;
  std::size_t K = 1;
  while (K + 1 < lv.size() && lv[K] <= len) ++K;
  std::vector<std::uint64_t> cur;
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t sum) -> void {
    if (i > K) {
      if (sum == len) sols.push_back(cur);
      return;
    }
    for (std::uint64_t l = 0; l < lv[i] && sum + l <= len; l += lv[i - 1]) {
      cur.push_back(l);
      self(self, i + 1, sum + l);
      cur.pop_back();
    }
  };
  rec(rec, 1, 0);
  for (auto& s : sols)
    while (s.size() > 1 && s.back() == 0) s.pop_back();
  return sols;
}

// A point (w_1, ..., w_m, v, v, ...) with blocks as walks.
struct Point {
  std::vector<Walk> blocks;
  std::string tail;
  bool operator==(const Point&) const = default;
};

inline Walk block_at(const Point& y, std::size_t i) {
  return i <= y.blocks.size() ? y.blocks[i - 1] : Walk{y.tail, {}};
}

inline void trim(Point& y) {
  while (!y.blocks.empty() && y.blocks.back().edges.empty() && y.blocks.back().start == y.tail) y.blocks.pop_back();
}

// tau via the exhaustive block-length search.
inline Point tau(const Graph& g, const Walk& w, const std::vector<std::uint64_t>& lv) {
  const auto sols = block_length_solutions(w.size(), lv);
  if (sols.size() != 1) throw std::runtime_error("oracle: block decomposition not unique");
  Point y;
  y.tail = w.start;
  // w_1 is the range side: the last edges walked.
  std::size_t end = w.size();
  for (auto l : sols[0]) {
    y.blocks.push_back(cut(g, w, end - l, l));
    end -= l;
  }
  trim(y);
  return y;
}

// The odometer rule written out directly.
inline Point sigma(const Graph& g, const std::string& e, const Point& y, const std::vector<std::uint64_t>& lv) {
  std::size_t i = 1;
  while (block_at(y, i).size() >= lv[i] - lv[i - 1]) ++i;
  Walk acc{block_at(y, i).start, {}};
  for (std::size_t t = i; t >= 1; --t) acc = join(acc, block_at(y, t));
  // acc is w_1 w_2 ... w_i with w_i walked first.
  acc.edges.push_back(e);
  Point out;
  out.tail = y.tail;
  const std::string re = g.edge(e).dst;
  for (std::size_t t = 1; t < i; ++t) out.blocks.push_back({re, {}});
  out.blocks.push_back(acc);
  for (std::size_t t = i + 1; t <= y.blocks.size(); ++t) out.blocks.push_back(y.blocks[t - 1]);
  trim(out);
  return out;
}

inline std::string name(const Point& y) {
  std::string s = "(";
  for (const auto& b : y.blocks) s += name(b) + ", ";
  return s + y.tail + ", " + y.tail + ", ...)";
}

// Random eventually-vertex point built block by block from the deepest level
// down: each block is a walk ending where the previous (shallower) one starts.
inline Point random_point(const Graph& g, const std::vector<std::uint64_t>& lv, std::size_t max_blocks,
                          std::mt19937_64& rng) {
  std::vector<std::vector<const Edge*>> in(g.vertices.size());
  auto vindex = [&](const std::string& v) {
    return std::size_t(std::find(g.vertices.begin(), g.vertices.end(), v) - g.vertices.begin());
  };
  for (const auto& e : g.edges) in[vindex(e.dst)].push_back(&e);
  Point y;
  const std::size_t m = std::uniform_int_distribution<std::size_t>(0, max_blocks)(rng);
  // Choose the range of w_1, then grow every block backwards.
  std::string at = g.vertices[std::uniform_int_distribution<std::size_t>(0, g.vertices.size() - 1)(rng)];
  std::vector<Walk> blocks;
  for (std::size_t i = 1; i <= m; ++i) {
    const std::uint64_t choices = (lv[i] - 1) / lv[i - 1] + 1;
    const std::uint64_t len = lv[i - 1] * std::uniform_int_distribution<std::uint64_t>(0, choices - 1)(rng);
    std::vector<std::string> rev;
    std::string cur = at;
    for (std::uint64_t t = 0; t < len; ++t) {
      const auto& cands = in[vindex(cur)];
      const Edge* e = cands[std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng)];
      rev.push_back(e->id);
      cur = e->src;
    }
    blocks.push_back({cur, {rev.rbegin(), rev.rend()}});
    at = cur;
  }
  y.blocks = blocks;
  y.tail = at;
  trim(y);
  return y;
}

// m_k^0: w_1 w_2 ... w_k.
inline Walk window(const Point& y, std::size_t k) {
  Walk acc = block_at(y, k);
  for (std::size_t t = k - 1; t >= 1; --t) acc = join(acc, block_at(y, t));
  return acc;
}

// E(n) straight from the definition: (edge id, source label, range label).
struct Triple {
  std::string id, src, dst;
  auto operator<=>(const Triple&) const = default;
};

inline std::set<std::string> en_vertices(const Graph& g, std::size_t n) {
  std::set<std::string> out;
  for (const auto& w : walks_below(g, n)) out.insert(name(w));
  return out;
}

inline std::set<Triple> en_edges(const Graph& g, std::size_t n) {
  std::set<Triple> out;
  for (const auto& w : walks_below(g, n))
    for (const auto* e : g.out(end_of(g, w))) {
      std::string dst = w.size() + 1 < n ? name(join(w, Walk{end_of(g, w), {e->id}})) : e->dst;
      out.insert({"(" + e->id + "," + name(w) + ")", name(w), dst});
    }
  return out;
}

// Dense rational matrices for the operator oracles.
using Dense = std::vector<std::vector<mpq_class>>;

inline Dense zeros(std::size_t n) { return Dense(n, std::vector<mpq_class>(n)); }

inline Dense mul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense c = zeros(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

inline Dense transpose(const Dense& a) {
  Dense t = zeros(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline Dense add(const Dense& a, const Dense& b, int sign = 1) {
  Dense c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c[i][j] += sign * b[i][j];
  return c;
}

// Determinant by rational Gaussian elimination.
inline mpq_class det(Dense a) {
  const std::size_t n = a.size();
  mpq_class d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) std::swap(a[p], a[c]), d = -d;
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const mpq_class f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return d;
}

// Elementary divisors from determinantal divisors: d_k = gcd of k x k minors.
// Exponential in the size; meant for matrices up to about 6 x 6.
inline std::vector<mpz_class> elementary_divisors(const std::vector<std::vector<long>>& m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<mpz_class> dk{1};
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    mpz_class g = 0;
    std::vector<std::size_t> rs(k), cs(k);
    auto subsets = [](std::size_t n, std::size_t k) {
      std::vector<std::vector<std::size_t>> out;
      std::vector<std::size_t> cur;
      auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) {
          out.push_back(cur);
          return;
        }
        for (std::size_t i = start; i < n; ++i) cur.push_back(i), self(self, i + 1), cur.pop_back();
      };
      rec(rec, 0);
      return out;
    };
    for (const auto& r : subsets(rows, k))
      for (const auto& c : subsets(cols, k)) {
        Dense sub(k, std::vector<mpq_class>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[r[i]][c[j]];
        mpz_class v = det(sub).get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      }
    if (g == 0) break;
    dk.push_back(g);
  }
  std::vector<mpz_class> out;
  for (std::size_t k = 1; k < dk.size(); ++k) out.push_back(dk[k] / dk[k - 1]);
  return out;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace oracle
