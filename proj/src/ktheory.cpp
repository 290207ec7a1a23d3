#include "gbd/ktheory.hpp"

#include <unordered_map>

#include "gbd/derived.hpp"
#include "gbd/errors.hpp"

namespace gbd {

std::string FinitelyGeneratedAbelianGroup::to_string() const {
  std::string out;
  if (rank == 1) out = "Z";
  else if (rank > 1) out = "Z^" + std::to_string(rank);
  for (const auto& d : torsion) {
    if (!out.empty()) out += " + ";
    out += "Z/" + d.get_str();
  }
  return out.empty() ? "0" : out;
}

namespace {

using PathIndex = std::unordered_map<Path, std::size_t, PathHash>;

PathIndex index_of(const std::vector<Path>& basis) {
  PathIndex idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
  return idx;
}

std::vector<std::string> labels_of(const DirectedMultigraph& g, const std::vector<Path>& basis) {
  std::vector<std::string> out;
  out.reserve(basis.size());
  for (const auto& p : basis) out.push_back(render(g, p));
  return out;
}

}  // namespace

std::vector<Path> level_basis(const DirectedMultigraph& g, const DivisibilitySequence& seq, std::size_t k,
                              const Limits& limits) {
  const std::uint64_t n = seq.level(k);
  const auto counts = path_counts(g, n);
  if (counts.total > limits.max_dim)
    throw ResourceError("level " + std::to_string(k) + " has dimension " + std::to_string(counts.total) +
                        ", above the guard " + std::to_string(limits.max_dim));
  return enumerate_paths(g, PathMode::Below, n, limits);
}

IntegerMatrix delta_matrix(const DirectedMultigraph& g, const DivisibilitySequence& seq, std::size_t k,
                           const Limits& limits) {
  const auto basis = level_basis(g, seq, k, limits);
  const auto idx = index_of(basis);
  auto base = std::make_shared<const DirectedMultigraph>(g);
  const auto en = build_periodic_graph(base, seq.level(k), limits);

  IntegerMatrix delta = IntegerMatrix::identity(basis.size());
  for (EdgeId x = 0; x < en.graph->num_edges(); ++x) {
    const std::size_t from = idx.at(en.vertices[en.graph->source(x)].path);
    const std::size_t to = idx.at(en.vertices[en.graph->range(x)].path);
    delta(from, to) -= 1;  // -A^T
  }
  delta.row_labels = labels_of(g, basis);
  delta.col_labels = delta.row_labels;
  return delta;
}

std::vector<mpz_class> z_action(const std::vector<mpz_class>& f, const DirectedMultigraph& g,
                                const DivisibilitySequence& seq, std::size_t k, const Limits& limits) {
  const auto delta = delta_matrix(g, seq, k, limits);
  if (f.size() != delta.cols())
    throw InputError("function has " + std::to_string(f.size()) + " coordinates but level " + std::to_string(k) +
                     " has dimension " + std::to_string(delta.cols()));
  auto df = delta * f;
  for (std::size_t i = 0; i < f.size(); ++i) df[i] = f[i] - df[i];
  return df;
}

IntegerMatrix inclusion_matrix(const DirectedMultigraph& g, const DivisibilitySequence& seq, std::size_t from,
                               std::size_t to, const Limits& limits) {
  if (to < from) throw InputError("inclusion goes from a lower level to a higher one");
  const auto coarse = level_basis(g, seq, from, limits);
  const auto fine = level_basis(g, seq, to, limits);
  const auto idx = index_of(coarse);
  const std::uint64_t n = seq.level(from);
  IntegerMatrix m(fine.size(), coarse.size());
  for (std::size_t i = 0; i < fine.size(); ++i) m(i, idx.at(remainder_head(g, fine[i], n))) = 1;
  m.row_labels = labels_of(g, fine);
  m.col_labels = labels_of(g, coarse);
  return m;
}

namespace {

std::vector<std::size_t> iota_range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out;
  for (std::size_t i = lo; i < hi; ++i) out.push_back(i);
  return out;
}

void check_unimodular(const IntegerMatrix& m, const char* name) {
  if (abs(determinant(m)) != 1) throw VerificationFailure(std::string("SNF transform ") + name + " is not unimodular");
}

}  // namespace

LevelPresentation level_presentation(const DirectedMultigraph& g, const DivisibilitySequence& seq, std::size_t k,
                                     const Limits& limits) {
  LevelPresentation p;
  p.k = k;
  p.n = seq.level(k);
  p.delta = delta_matrix(g, seq, k, limits);
  p.dimension = p.delta.rows();
  p.snf = smith_normal_form(p.delta);
  const std::size_t m = p.dimension;
  const std::size_t r = p.snf.rank();

  // Free coordinates: rows of U killing Im(Delta). Their span is the saturated
  // left kernel, so the Hermite basis of it is presentation independent.
  if (r < m) {
    auto free_rows = iota_range(r, m);
    const auto h = hermite_normal_form(p.snf.U.submatrix(free_rows, iota_range(0, m)));
    if (h.rows() != free_rows.size()) throw VerificationFailure("free rows of U are dependent");
    for (std::size_t i = 0; i < free_rows.size(); ++i)
      for (std::size_t j = 0; j < m; ++j) p.snf.U(free_rows[i], j) = h(i, j);
  }
  if (!(p.snf.U * p.delta * p.snf.V == p.snf.D)) throw VerificationFailure("U * Delta * V != D");
  check_unimodular(p.snf.U, "U");
  check_unimodular(p.snf.V, "V");
  p.u_inverse = unimodular_inverse(p.snf.U);

  for (std::size_t i = 0; i < r; ++i) {
    if (p.snf.divisors[i] == 1) continue;
    p.coker_positions.push_back(i);
    p.coker_moduli.push_back(p.snf.divisors[i]);
    p.k0.torsion.push_back(p.snf.divisors[i]);
  }
  for (std::size_t i = r; i < m; ++i) {
    p.coker_positions.push_back(i);
    p.coker_moduli.push_back(0);
  }
  p.k0.rank = m - r;
  p.k1.rank = m - r;

  if (r < m) {
    const auto kernel = p.snf.V.submatrix(iota_range(0, m), iota_range(r, m));
    p.kernel_basis = hermite_normal_form(kernel.transpose()).transpose();
  } else {
    p.kernel_basis = IntegerMatrix(m, 0);
  }
  if (!(p.delta * p.kernel_basis).is_zero()) throw VerificationFailure("kernel basis is not killed by Delta");
  return p;
}

namespace {

ConnectingMap connect(const DirectedMultigraph& g, const DivisibilitySequence& seq, const LevelPresentation& a,
                      const LevelPresentation& b, const Limits& limits) {
  ConnectingMap c;
  c.from = a.k;
  c.to = b.k;
  const auto iota = inclusion_matrix(g, seq, a.k, b.k, limits);
  if (!(iota * a.delta == b.delta * iota))
    throw VerificationFailure("inclusion from level " + std::to_string(a.k) + " to " + std::to_string(b.k) +
                              " does not intertwine Delta");

  const auto full = b.snf.U * iota * a.u_inverse;
  c.k0 = full.submatrix(b.coker_positions, a.coker_positions);
  c.k0.row_labels.clear();
  c.k0.col_labels.clear();
  for (std::size_t i = 0; i < c.k0.rows(); ++i) {
    const auto& d = b.coker_moduli[i];
    if (d == 0) continue;
    for (std::size_t j = 0; j < c.k0.cols(); ++j) mpz_fdiv_r(c.k0(i, j).get_mpz_t(), c.k0(i, j).get_mpz_t(), d.get_mpz_t());
  }

  if (a.kernel_basis.cols() == 0) {
    c.k1 = IntegerMatrix(b.kernel_basis.cols(), 0);
  } else if (b.kernel_basis.cols() == 0) {
    if (!(iota * a.kernel_basis).is_zero()) throw VerificationFailure("kernel maps outside a zero kernel");
    c.k1 = IntegerMatrix(0, a.kernel_basis.cols());
  } else if (!solve_integer(b.kernel_basis, iota * a.kernel_basis, c.k1)) {
    throw VerificationFailure("inclusion does not map kernel into kernel");
  }
  c.k1.row_labels.clear();
  c.k1.col_labels.clear();
  return c;
}

std::string name_limit(const FinitelyGeneratedAbelianGroup& group, const IntegerMatrix& map) {
  if (group.rank == 0 && group.torsion.empty()) return "0";
  if (map.is_zero()) return "0";
  if (map == IntegerMatrix::identity(map.rows())) return group.to_string();
  if (group.torsion.empty() && group.rank == 1) {
    mpz_class m = abs(map(0, 0));
    return "Z[1/" + m.get_str() + "]";
  }
  return "";
}

// The first level is allowed to differ; the pattern is read from the second
// requested level on and needs at least two connecting maps there to count.
Stabilization diagnose(const std::vector<FinitelyGeneratedAbelianGroup>& groups,
                       const std::vector<const IntegerMatrix*>& maps) {
  Stabilization s;
  if (maps.size() < 2) return s;
  s.constant = true;
  for (std::size_t i = 2; i < groups.size(); ++i) s.constant = s.constant && groups[i] == groups[1];
  for (std::size_t i = 2; i < maps.size(); ++i) s.constant = s.constant && *maps[i] == *maps[1];
  if (s.constant) s.limit = name_limit(groups.back(), *maps.back());
  return s;
}

}  // namespace

DirectSystemReport k_groups(const DirectedMultigraph& g, const DivisibilitySequence& seq,
                            const std::vector<std::size_t>& levels, const Limits& limits) {
  require_admissible(g, "K-theory");
  if (levels.empty()) throw InputError("no levels requested");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] == 0) throw InputError("levels start at 1");
    if (i > 0 && levels[i] <= levels[i - 1]) throw InputError("levels must be strictly increasing");
  }
  DirectSystemReport report;
  for (auto k : levels) report.levels.push_back(level_presentation(g, seq, k, limits));
  for (std::size_t i = 0; i + 1 < report.levels.size(); ++i)
    report.maps.push_back(connect(g, seq, report.levels[i], report.levels[i + 1], limits));

  std::vector<FinitelyGeneratedAbelianGroup> g0, g1;
  std::vector<const IntegerMatrix*> m0, m1;
  for (const auto& l : report.levels) g0.push_back(l.k0), g1.push_back(l.k1);
  for (const auto& c : report.maps) m0.push_back(&c.k0), m1.push_back(&c.k1);
  report.k0 = diagnose(g0, m0);
  report.k1 = diagnose(g1, m1);
  return report;
}

}  // namespace gbd
