#include "gbd/fock.hpp"

#include <map>
#include <set>

#include "gbd/errors.hpp"
#include "gbd/factor_map.hpp"

namespace gbd {

FockSpace::FockSpace(std::shared_ptr<const DirectedMultigraph> g, std::size_t depth, const Limits& limits)
    : graph_(std::move(g)), depth_(depth) {
  const auto counts = path_counts(*graph_, depth + 1);
  if (counts.total > limits.max_dim)
    throw ResourceError("Fock space of depth " + std::to_string(depth) + " has dimension " +
                        std::to_string(counts.total) + ", above the guard " + std::to_string(limits.max_dim));
  basis_ = enumerate_paths(*graph_, PathMode::Below, depth + 1, limits);
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
}

std::optional<std::size_t> FockSpace::index_of(const Path& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FockSpace::require_index(const Path& p) const {
  auto i = index_of(p);
  if (!i) throw VerificationFailure("path " + render(*graph_, p) + " is not a basis vector");
  return *i;
}

std::vector<bool> FockSpace::layers_up_to(std::size_t max_length) const {
  std::vector<bool> keep(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) keep[i] = basis_[i].length() <= max_length;
  return keep;
}

SparseMatrix left_shift(const FockSpace& space, EdgeId e) {
  const auto& g = space.graph();
  SparseMatrix m(space.dim(), space.dim());
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const auto& w = space.path(i);
    if (w.range() != g.source(e) || w.length() >= space.depth()) continue;
    m.set(space.require_index(w.extended(g, e)), i, 1);
  }
  return m;
}

SparseMatrix vertex_projection(const FockSpace& space, VertexId x) {
  SparseMatrix m(space.dim(), space.dim());
  for (std::size_t i = 0; i < space.dim(); ++i)
    if (space.path(i).range() == x) m.set(i, i, 1);
  return m;
}

SparseMatrix source_projection(const FockSpace& space, VertexId x) {
  SparseMatrix m(space.dim(), space.dim());
  for (std::size_t i = 0; i < space.dim(); ++i)
    if (space.path(i).source() == x) m.set(i, i, 1);
  return m;
}

SparseMatrix vertex_vector_projection(const FockSpace& space, VertexId x) {
  SparseMatrix m(space.dim(), space.dim());
  const auto i = space.require_index(Path::trivial(x));
  m.set(i, i, 1);
  return m;
}

FockGenerators build_generators(const FockSpace& space) {
  const auto& g = space.graph();
  FockGenerators gens;
  for (EdgeId e = 0; e < g.num_edges(); ++e) gens.L.push_back(left_shift(space, e));
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    gens.P.push_back(vertex_projection(space, x));
    gens.R.push_back(source_projection(space, x));
    gens.xi.push_back(vertex_vector_projection(space, x));
  }
  return gens;
}

RelationCheck RelationCheck::from_residual(std::string relation, const FockSpace& space, const SparseMatrix& residual) {
  RelationCheck c;
  c.relation = std::move(relation);
  c.residual_nonzeros = residual.nonzeros();
  c.holds = c.residual_nonzeros == 0;
  if (auto at = residual.first_nonzero()) c.counterexample = "xi_" + space.label(at->second);
  return c;
}

bool RelationReport::all_hold() const {
  for (const auto& c : checks)
    if (!c.holds) return false;
  return true;
}

void RelationReport::append(const RelationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

namespace {

// Folds many residuals into one check; the counterexample names the first failure.
class Accumulator {
 public:
  Accumulator(std::string relation, const FockSpace& space) : space_(space) { check_.relation = std::move(relation); check_.holds = true; }

  void add(const std::string& instance, const SparseMatrix& residual) {
    const auto nz = residual.nonzeros();
    check_.residual_nonzeros += nz;
    if (nz == 0 || !check_.holds) return;
    check_.holds = false;
    auto at = residual.first_nonzero();
    check_.counterexample = instance + " at xi_" + space_.label(at->second);
  }
  void fail(const std::string& instance) {
    if (!check_.holds) return;
    check_.holds = false;
    check_.counterexample = instance;
  }
  RelationCheck done() const { return check_; }

 private:
  const FockSpace& space_;
  RelationCheck check_;
};

}  // namespace

RelationReport verify_generator_identities(const FockSpace& space, const FockGenerators& gens) {
  const auto& g = space.graph();
  RelationReport report;
  SparseMatrix sum(space.dim(), space.dim());
  for (const auto& p : gens.P) sum = sum + p;
  report.add(RelationCheck::from_residual("sum_x P_x = I", space, sum - SparseMatrix::identity(space.dim())));

  SparseMatrix ranges(space.dim(), space.dim());
  for (const auto& l : gens.L) ranges = ranges + l * l.adjoint();
  const auto defect = SparseMatrix::identity(space.dim()) - ranges;
  Accumulator acc("xi_x xi_x^* = P_x (I - sum_e L_e L_e^*)", space);
  for (VertexId x = 0; x < g.num_vertices(); ++x) acc.add("x=" + g.vertex_name(x), gens.P[x] * defect - gens.xi[x]);
  report.add(acc.done());
  return report;
}

RelationReport verify_tck(const FockSpace& space, const std::vector<SparseMatrix>& S,
                          const std::vector<SparseMatrix>& P, bool compressed) {
  const auto& g = space.graph();
  if (S.size() != g.num_edges() || P.size() != g.num_vertices())
    throw InputError("family size does not match the graph");
  for (const auto* family : {&S, &P})
    for (const auto& m : *family)
      if (m.rows() != space.dim() || m.cols() != space.dim()) throw InputError("family matrix has the wrong dimension");

  RelationReport report;
  Accumulator proj("(1) P_x are mutually orthogonal projections", space);
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    proj.add("P_" + g.vertex_name(x) + "^2 - P", P[x] * P[x] - P[x]);
    proj.add("P_" + g.vertex_name(x) + "^* - P", P[x].adjoint() - P[x]);
    for (VertexId y = 0; y < g.num_vertices(); ++y)
      if (x != y) proj.add("P_" + g.vertex_name(x) + " P_" + g.vertex_name(y), P[x] * P[y]);
  }
  report.add(proj.done());

  std::vector<SparseMatrix> adj;
  for (const auto& s : S) adj.push_back(s.adjoint());

  Accumulator orth("(2) S_e^* S_f = 0 for e != f", space);
  for (EdgeId e = 0; e < S.size(); ++e)
    for (EdgeId f = 0; f < S.size(); ++f)
      if (e != f) orth.add("e=" + g.edge_name(e) + ", f=" + g.edge_name(f), adj[e] * S[f]);
  report.add(orth.done());

  const auto keep = space.layers_up_to(space.depth() == 0 ? 0 : space.depth() - 1);
  Accumulator iso(compressed ? "(3) S_e^* S_e = P_s(e) (compressed)" : "(3) S_e^* S_e = P_s(e)", space);
  for (EdgeId e = 0; e < S.size(); ++e) {
    auto r = adj[e] * S[e] - P[g.source(e)];
    iso.add("e=" + g.edge_name(e), compressed ? r.compress(keep) : r);
  }
  report.add(iso.done());

  Accumulator ineq("(4) sum_{r(e)=x} S_e S_e^* <= P_x", space);
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    SparseMatrix d = P[x];
    for (EdgeId e : g.in_edges(x)) d = d - S[e] * adj[e];
    if (!is_positive_semidefinite(d)) ineq.fail("x=" + g.vertex_name(x));
  }
  report.add(ineq.done());
  return report;
}

RelationReport verify_tck_defect(const FockSpace& space, const FockGenerators& gens) {
  const auto& g = space.graph();
  RelationReport report;
  Accumulator acc("P_x - sum_{r(e)=x} L_e L_e^* = xi_x xi_x^*", space);
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    SparseMatrix d = gens.P[x];
    for (EdgeId e : g.in_edges(x)) d = d - gens.L[e] * gens.L[e].adjoint();
    acc.add("x=" + g.vertex_name(x), d - gens.xi[x]);
  }
  report.add(acc.done());
  return report;
}

mpq_class PeriodicWeights::operator()(const Path& u) const {
  if (u.is_trivial()) throw InputError("weights are defined on non-trivial paths only");
  const std::size_t len = (u.length() - 1) % n + 1;
  const Path key = u.slice(*graph, u.length() - len, len);
  auto it = table.find(key);
  if (it == table.end()) throw InputError("missing weight for path " + render(*graph, key));
  return it->second;
}

void PeriodicWeights::validate() const {
  if (n == 0) throw InputError("weight period must be at least 1");
  for (std::size_t len = 1; len <= n; ++len)
    for (const auto& p : enumerate_paths(*graph, PathMode::Exactly, len))
      if (!table.count(p)) throw InputError("missing weight for path " + render(*graph, p));
}

std::vector<SparseMatrix> weighted_shift(const FockSpace& space, const WeightFunction& weight) {
  const auto& g = space.graph();
  std::vector<SparseMatrix> out;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    SparseMatrix m(space.dim(), space.dim());
    for (std::size_t i = 0; i < space.dim(); ++i) {
      const auto& w = space.path(i);
      if (w.range() != g.source(e) || w.length() >= space.depth()) continue;
      const Path ew = w.extended(g, e);
      m.set(space.require_index(ew), i, GaussianRational(weight(ew)));
    }
    out.push_back(std::move(m));
  }
  return out;
}

PolarFactor polar_factor(const FockSpace& space, EdgeId e, const WeightFunction& weight) {
  const auto& g = space.graph();
  PolarFactor pf;
  pf.L = left_shift(space, e);
  pf.W = SparseMatrix(space.dim(), space.dim());
  pf.w_positive = true;
  SparseMatrix t(space.dim(), space.dim());
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const auto& w = space.path(i);
    if (w.range() != g.source(e) || w.length() >= space.depth()) continue;
    const Path ew = w.extended(g, e);
    const mpq_class lambda = weight(ew);
    pf.W.set(i, i, GaussianRational(lambda));
    t.set(space.require_index(ew), i, GaussianRational(lambda));
    pf.w_positive = pf.w_positive && lambda > 0;
  }
  pf.reconstructs = t == pf.L * pf.W;
  return pf;
}

ModulusConjugation modulus_conjugation(const FockSpace& space, const WeightFunction& weight) {
  const auto& g = space.graph();
  // Shortlex order visits w before ew, so mu(w) is always ready.
  std::vector<int> mu(space.dim(), 1);
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const auto& u = space.path(i);
    if (u.is_trivial()) continue;
    const Path parent = u.slice(g, 0, u.length() - 1);
    const int s = sgn(weight(u));
    mu[i] = (s < 0 ? -1 : 1) * mu[space.require_index(parent)];
  }
  ModulusConjugation out;
  out.U = SparseMatrix(space.dim(), space.dim());
  for (std::size_t i = 0; i < space.dim(); ++i) out.U.set(i, i, mu[i]);
  const auto u_adj = out.U.adjoint();
  out.unitary = out.U * u_adj == SparseMatrix::identity(space.dim());
  out.weights_nonnegative = true;
  for (const auto& t : weighted_shift(space, weight)) {
    auto c = out.U * t * u_adj;
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (const auto& [j, v] : c.row(i)) out.weights_nonnegative = out.weights_nonnegative && v.is_real() && v.re >= 0;
    out.conjugated.push_back(std::move(c));
  }
  return out;
}

PeriodicGenerators periodic_generators(const FockSpace& space, std::size_t n, const Limits& limits) {
  const auto& g = space.graph();
  PeriodicGenerators gens;
  gens.en = std::make_shared<const DerivedGraph>(build_periodic_graph(space.graph_ptr(), n, limits));
  const auto& en = *gens.en;

  std::vector<VertexId> rem(space.dim());
  for (std::size_t i = 0; i < space.dim(); ++i) {
    auto v = en.vertex_of(remainder_head(g, space.path(i), n));
    if (!v) throw VerificationFailure("remainder is not a vertex of E(n)");
    rem[i] = *v;
  }
  gens.Q.assign(en.graph->num_vertices(), SparseMatrix(space.dim(), space.dim()));
  for (std::size_t i = 0; i < space.dim(); ++i) gens.Q[rem[i]].set(i, i, 1);

  gens.T.assign(en.graph->num_edges(), SparseMatrix(space.dim(), space.dim()));
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const auto& u = space.path(i);
    if (u.length() >= space.depth()) continue;
    for (EdgeId e : g.out_edges(u.range())) {
      auto x = en.edge_of(e, en.vertices[rem[i]].path);
      if (!x) throw VerificationFailure("(e, u(n)) is not an edge of E(n)");
      gens.T[*x].set(space.require_index(u.extended(g, e)), i, 1);
    }
  }
  return gens;
}

RelationReport verify_periodic_generators(const FockSpace& space, const PeriodicGenerators& gens) {
  const auto& en = *gens.en;
  const auto& eg = *en.graph;
  const std::size_t n = en.level;
  RelationReport report;

  const auto keep = space.layers_up_to(space.depth() == 0 ? 0 : space.depth() - 1);
  Accumulator iso("T_(e,w)^* T_(e,w) = Q_w (compressed)", space);
  for (EdgeId x = 0; x < eg.num_edges(); ++x)
    iso.add(eg.edge_name(x), (gens.T[x].adjoint() * gens.T[x] - gens.Q[eg.source(x)]).compress(keep));
  report.add(iso.done());

  Accumulator sum("sum_{r(e,w)=w0} T T^* = Q_w0 (minus xi xi^* when |w0| = 0)", space);
  Accumulator single("index set is a singleton when 0 < |w0| < n", space);
  for (VertexId w0 = 0; w0 < eg.num_vertices(); ++w0) {
    const auto& path = en.vertices[w0].path;
    SparseMatrix expect = gens.Q[w0];
    if (path.is_trivial()) expect = expect - vertex_vector_projection(space, path.source());
    else if (eg.in_edges(w0).size() != 1) single.fail(eg.vertex_name(w0));
    SparseMatrix acc(space.dim(), space.dim());
    for (EdgeId x : eg.in_edges(w0)) acc = acc + gens.T[x] * gens.T[x].adjoint();
    sum.add(eg.vertex_name(w0), acc - expect);
  }
  report.add(sum.done());
  if (n > 1) report.add(single.done());
  return report;
}

std::vector<std::size_t> q_rank_growth(std::shared_ptr<const DirectedMultigraph> g, std::size_t n, const Path& w,
                                       const std::vector<std::size_t>& depths, const Limits& limits) {
  std::vector<std::size_t> out;
  for (auto depth : depths) {
    FockSpace space(g, depth, limits);
    const auto gens = periodic_generators(space, n, limits);
    auto v = gens.en->vertex_of(w);
    if (!v) throw InputError("path " + render(*g, w) + " is not a vertex of E(" + std::to_string(n) + ")");
    out.push_back(projection_rank(gens.Q[*v]));
  }
  return out;
}

std::vector<NonInjectivityWitness> noninjectivity_witness(const FockSpace& space, std::size_t n,
                                                          const Limits& limits) {
  const auto gens = periodic_generators(space, n, limits);
  const auto& eg = *gens.en->graph;
  FockSpace toeplitz(gens.en->graph, 2, limits);
  const auto tg = build_generators(toeplitz);

  std::vector<NonInjectivityWitness> out;
  for (VertexId w0 = 0; w0 < eg.num_vertices(); ++w0) {
    const auto& path = gens.en->vertices[w0].path;
    if (path.is_trivial()) continue;
    NonInjectivityWitness wit;
    wit.vertex = eg.vertex_name(w0);
    SparseMatrix d = tg.P[w0];
    for (EdgeId f : eg.in_edges(w0)) d = d - tg.L[f] * tg.L[f].adjoint();
    wit.toeplitz_defect_rank = projection_rank(d);
    SparseMatrix q = gens.Q[w0];
    for (EdgeId x : eg.in_edges(w0)) q = q - gens.T[x] * gens.T[x].adjoint();
    wit.periodic_defect_zero = q.is_zero();
    out.push_back(std::move(wit));
  }
  return out;
}

std::vector<ShiftDecomposition> decompose_T_e(const FockSpace& space, const PeriodicWeights& weights,
                                              const PeriodicGenerators& gens) {
  const auto& g = space.graph();
  const auto& en = *gens.en;
  if (weights.n != en.level) throw InputError("weight period differs from the level of the generators");
  const auto shifts = weighted_shift(space, std::cref(weights));
  std::vector<ShiftDecomposition> out;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    ShiftDecomposition d;
    d.edge = e;
    SparseMatrix sum(space.dim(), space.dim());
    for (EdgeId x = 0; x < en.graph->num_edges(); ++x) {
      const auto& de = en.edges[x];
      if (de.base_edge != e) continue;
      const mpq_class lambda = weights(de.path.extended(g, e));
      d.terms.emplace_back(x, lambda);
      sum = sum + GaussianRational(lambda) * gens.T[x];
    }
    d.exact = sum == shifts[e];
    out.push_back(std::move(d));
  }
  return out;
}

RelationReport gauge_check(const FockSpace& space, const GaussianRational& z, const PeriodicGenerators* periodic) {
  if (!(power(z, 4) == GaussianRational(1)))
    throw InputError("gauge checks support z in {1, -1, i, -i} only, got " + z.to_string());
  const auto& g = space.graph();
  SparseMatrix u(space.dim(), space.dim());
  for (std::size_t i = 0; i < space.dim(); ++i) u.set(i, i, power(z, space.path(i).length()));
  const auto u_adj = u.adjoint();

  RelationReport report;
  Accumulator shifts("U_z L_e U_z^* = z L_e (z = " + z.to_string() + ")", space);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto l = left_shift(space, e);
    shifts.add("e=" + g.edge_name(e), u * l * u_adj - z * l);
  }
  report.add(shifts.done());
  if (periodic) {
    Accumulator ts("U_z T_(e,w) U_z^* = z T_(e,w) (z = " + z.to_string() + ")", space);
    const auto& eg = *periodic->en->graph;
    for (EdgeId x = 0; x < eg.num_edges(); ++x)
      ts.add(eg.edge_name(x), u * periodic->T[x] * u_adj - z * periodic->T[x]);
    report.add(ts.done());
  }
  return report;
}

TheoremAnReport theorem_an_unitary(const FockSpace& space, std::size_t n, const Limits& limits) {
  if (n == 0) throw InputError("level must be at least 1");
  if (space.depth() < n)
    throw InputError("depth " + std::to_string(space.depth()) + " is below the level " + std::to_string(n));
  const auto& g = space.graph();
  TheoremAnReport rep;
  rep.length_graph = std::make_shared<const DerivedGraph>(build_length_graph(space.graph_ptr(), n, limits));
  const auto& lg = *rep.length_graph->graph;

  const auto blocks = enumerate_paths(g, PathMode::Below, n, limits);
  std::unordered_map<Path, std::size_t, PathHash> block_index;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    block_index.emplace(blocks[b], b);
    rep.blocks.push_back(render(g, blocks[b]));
  }
  rep.multiplicity.assign(g.num_vertices(), 0);
  for (const auto& b : blocks) ++rep.multiplicity[b.source()];

  auto lg_edge = [&](const Path& segment) {
    return lg.edge(pair_label(render(g, segment), g.vertex_name(segment.source())));
  };
  using Image = std::pair<std::size_t, Path>;  // (block, E(=n) path)
  auto image_of = [&](const Path& u) -> Image {
    const auto r = remainder(g, u, n);
    const std::size_t b = block_index.at(r.head);
    if (r.segments.empty()) return {b, Path::trivial(lg.vertex(g.vertex_name(u.source())))};
    std::vector<EdgeId> walk;
    for (const auto& seg : r.segments) walk.push_back(lg_edge(seg));
    return {b, Path::from_walk(lg, std::move(walk))};
  };

  std::vector<Image> images(space.dim());
  std::set<Image> seen;
  bool ranges_ok = true;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    images[i] = image_of(space.path(i));
    seen.insert(images[i]);
    const auto& [b, y] = images[i];
    ranges_ok = ranges_ok && lg.vertex_name(y.range()) == g.vertex_name(blocks[b].source());
  }
  // Size of the target: pairs (w, y) with r(y) = s(w) and |w| + n|y| <= depth.
  std::size_t target = 0;
  const auto lg_paths = enumerate_paths(lg, PathMode::Below, space.depth() / n + 1, limits);
  for (const auto& w : blocks)
    for (const auto& y : lg_paths)
      if (lg.vertex_name(y.range()) == g.vertex_name(w.source()) && w.length() + n * y.length() <= space.depth())
        ++target;
  rep.bijective = ranges_ok && seen.size() == space.dim() && target == space.dim();

  const auto gens = periodic_generators(space, n, limits);
  const auto& en = *gens.en;
  std::vector<SparseMatrix> adjoints;
  for (const auto& t : gens.T) adjoints.push_back(t.adjoint());
  for (EdgeId x = 0; x < en.graph->num_edges(); ++x) {
    const EdgeId e = *en.edges[x].base_edge;
    const Path& v = en.edges[x].path;
    for (const auto& w : blocks) {
      if (!(w == v)) ++rep.zero_cases;
      else if (v.length() + 1 < n) ++rep.projection_cases;
      else ++rep.shift_cases;
    }
    for (std::size_t i = 0; i < space.dim(); ++i) {
      const auto& u = space.path(i);
      if (u.length() + 1 > space.depth()) continue;
      const auto& [b, y] = images[i];
      std::optional<Image> predicted;
      if (blocks[b] == v) {
        const Path ev = v.extended(g, e);
        if (v.length() + 1 < n) predicted = Image{block_index.at(ev), y};
        else predicted = Image{block_index.at(Path::trivial(g.range(e))), y.extended(lg, lg_edge(ev))};
      }
      std::optional<Image> actual;
      const auto& col = adjoints[x].row(i);
      if (!col.empty()) actual = images[col.begin()->first];
      if (predicted != actual) {
        ++rep.mismatches;
        if (!rep.counterexample)
          rep.counterexample = en.graph->edge_name(x) + " on xi_" + space.label(i);
      }
    }
  }
  return rep;
}

RelationReport verify_factor_consistency(const FockSpace& space, std::size_t n, std::size_t k,
                                         const Limits& limits) {
  const auto coarse = periodic_generators(space, n, limits);
  const auto fine = periodic_generators(space, n * k, limits);
  const auto m = canonical_m(*fine.en, *coarse.en);
  const auto mu = induced_generator_map(m);

  RelationReport report;
  Accumulator ts("i(T_(e,w)) = sum_{w'(n)=w} T_(e,w')", space);
  for (EdgeId x = 0; x < coarse.T.size(); ++x) {
    SparseMatrix sum(space.dim(), space.dim());
    for (EdgeId f : mu.edge_preimages[x]) sum = sum + fine.T[f];
    ts.add(coarse.en->graph->edge_name(x), sum - coarse.T[x]);
  }
  report.add(ts.done());
  Accumulator qs("i(Q_w) = sum_{w'(n)=w} Q_w'", space);
  for (VertexId v = 0; v < coarse.Q.size(); ++v) {
    SparseMatrix sum(space.dim(), space.dim());
    for (VertexId u : mu.vertex_preimages[v]) sum = sum + fine.Q[u];
    qs.add(coarse.en->graph->vertex_name(v), sum - coarse.Q[v]);
  }
  report.add(qs.done());
  return report;
}

}  // namespace gbd
