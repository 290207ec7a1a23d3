#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "gbd/derived.hpp"
#include "gbd/errors.hpp"
#include "gbd/ktheory.hpp"
#include "gbd/odometer.hpp"

using namespace gbd;

namespace {

std::vector<std::vector<long>> as_longs(const IntegerMatrix& m) {
  std::vector<std::vector<long>> out(m.rows(), std::vector<long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_si();
  return out;
}

void check_snf(const IntegerMatrix& a) {
  const auto s = smith_normal_form(a);
  CHECK(s.U * a * s.V == s.D);
  CHECK(abs(determinant(s.U)) == 1);
  CHECK(abs(determinant(s.V)) == 1);
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) CHECK(s.D(i, j) == 0);
  for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
  if (a.rows() <= 5 && a.cols() <= 5) CHECK(s.divisors == oracle::elementary_divisors(as_longs(a)));
}

// Renames every identifier so that the lexicographic order is scrambled.
DirectedMultigraph relabel(const DirectedMultigraph& g) {
  std::vector<std::string> vs;
  auto vn = [&](VertexId v) { return "z" + std::to_string(g.num_vertices() - v) + "_" + g.vertex_name(v); };
  for (VertexId v = 0; v < g.num_vertices(); ++v) vs.push_back(vn(v));
  std::vector<EdgeRecord> es;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    es.push_back({"q" + std::to_string(g.num_edges() - e) + "_" + g.edge_name(e), vn(g.source(e)), vn(g.range(e))});
  return DirectedMultigraph(vs, es);
}

}  // namespace

TEST_CASE("delta examples") {
  const auto c1 = build_cycle(1);
  CHECK(delta_matrix(c1, DivisibilitySequence({2}), 1) == IntegerMatrix::from_rows({{1, -1}, {-1, 1}}));
  CHECK(delta_matrix(build_bouquet(2), DivisibilitySequence({1}), 1) == IntegerMatrix::from_rows({{-1}}));
  const DivisibilitySequence s({2, 4, 8});
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto d = delta_matrix(c1, s, k);
    for (std::size_t i = 0; i < d.rows(); ++i) {
      mpz_class sum = 0;
      for (std::size_t j = 0; j < d.cols(); ++j) sum += d(i, j);
      CHECK(sum == 0);
    }
  }
}

TEST_CASE("z_action agrees with pointwise sigma evaluation") {
  std::mt19937_64 rng(17);
  for (const auto& name : corpus::names()) {
    CAPTURE(name);
    const auto g = corpus::load(name);
    const auto og = corpus::load_oracle(name);
    const std::vector<std::uint64_t> prefix{2, 4};
    const DivisibilitySequence seq(prefix);
    const auto lv = oracle::levels(prefix, 12);
    for (std::size_t k = 1; k <= 2; ++k) {
      const auto basis = level_basis(*g, seq, k);
      std::map<std::string, std::size_t> index;
      for (std::size_t i = 0; i < basis.size(); ++i) index[render(*g, basis[i])] = i;
      for (std::size_t b = 0; b < basis.size(); ++b) {
        std::vector<mpz_class> f(basis.size(), 0);
        f[b] = 1;
        const auto zf = z_action(f, *g, seq, k);
        // delta column agrees with f - [Z] f
        const auto d = delta_matrix(*g, seq, k);
        for (std::size_t i = 0; i < basis.size(); ++i) CHECK(d(i, b) == f[i] - zf[i]);
        for (int t = 0; t < 100; ++t) {
          const auto y = oracle::random_point(og, lv, 4, rng);
          mpz_class pointwise = 0;
          for (const auto& e : og.edges) {
            // y is in D_e when r(y_1) = s(e)
            if (oracle::end_of(og, oracle::block_at(y, 1)) != e.src) continue;
            const auto z = oracle::sigma(og, e.id, y, lv);
            if (index.at(oracle::name(oracle::window(z, k))) == b) pointwise += 1;
          }
          CHECK(pointwise == zf[index.at(oracle::name(oracle::window(y, k)))]);
        }
      }
    }
  }
}

TEST_CASE("z_action basics") {
  const auto c1 = build_cycle(1);
  const DivisibilitySequence s({2, 4});
  for (std::size_t k = 1; k <= 2; ++k) {
    const auto n = level_basis(c1, s, k).size();
    CHECK(z_action(std::vector<mpz_class>(n, 1), c1, s, k) == std::vector<mpz_class>(n, 1));
    CHECK(z_action(std::vector<mpz_class>(n, 0), c1, s, k) == std::vector<mpz_class>(n, 0));
  }
  CHECK_THROWS_AS(z_action(std::vector<mpz_class>(3, 0), c1, s, 1), InputError);
}

TEST_CASE("inclusion matrices") {
  const auto c1 = build_cycle(1);
  const DivisibilitySequence s({2, 4, 8});
  const auto i12 = inclusion_matrix(c1, s, 1);
  // columns v, e1 ; rows v, e1, e1.e1, e1.e1.e1
  CHECK(i12 == IntegerMatrix::from_rows({{1, 0}, {0, 1}, {1, 0}, {0, 1}}));
  for (std::size_t k = 1; k <= 2; ++k) {
    const auto m = inclusion_matrix(c1, s, k);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpz_class sum = 0;
      for (std::size_t i = 0; i < m.rows(); ++i) sum += m(i, j);
      CHECK(sum == 2);
    }
  }
  for (const auto& name : corpus::names()) {
    const auto g = corpus::load(name);
    const DivisibilitySequence seq({1, 2, 4});
    for (std::size_t k = 1; k <= 2; ++k) {
      const auto i = inclusion_matrix(*g, seq, k);
      CHECK(i * delta_matrix(*g, seq, k) == delta_matrix(*g, seq, k + 1) * i);
    }
  }
}

TEST_CASE("smith normal form examples") {
  const auto a = IntegerMatrix::from_rows({{1, -1}, {-1, 1}});
  const auto s = smith_normal_form(a);
  CHECK(s.D == IntegerMatrix::from_rows({{1, 0}, {0, 0}}));
  CHECK(smith_normal_form(IntegerMatrix::identity(3)).D == IntegerMatrix::identity(3));
  CHECK(smith_normal_form(IntegerMatrix::from_rows({{2, 0}, {0, 3}})).divisors == std::vector<mpz_class>{1, 6});
  check_snf(a);
  check_snf(IntegerMatrix::from_rows({{0, 0}, {0, 0}}));
  check_snf(IntegerMatrix::from_rows({{4, 6, 8}, {6, 9, 12}}));
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 150; ++t) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    std::vector<std::vector<long>> rows(r, std::vector<long>(c));
    for (auto& row : rows)
      for (auto& x : row) x = static_cast<long>(rng() % 13) - 6;
    check_snf(IntegerMatrix::from_rows(rows));
  }
}

TEST_CASE("hermite form, inverse and integer solve") {
  const auto h = hermite_normal_form(IntegerMatrix::from_rows({{2, 4}, {4, 2}, {0, 0}}));
  CHECK(h == IntegerMatrix::from_rows({{2, 4}, {0, 6}}));
  const auto u = IntegerMatrix::from_rows({{2, 1}, {1, 1}});
  CHECK(u * unimodular_inverse(u) == IntegerMatrix::identity(2));
  CHECK_THROWS_AS(unimodular_inverse(IntegerMatrix::from_rows({{2, 0}, {0, 1}})), VerificationFailure);
  IntegerMatrix x;
  CHECK(solve_integer(IntegerMatrix::from_rows({{1}, {1}}), IntegerMatrix::from_rows({{3}, {3}}), x));
  CHECK(x == IntegerMatrix::from_rows({{3}}));
  CHECK_FALSE(solve_integer(IntegerMatrix::from_rows({{2}}), IntegerMatrix::from_rows({{3}}), x));
}

TEST_CASE("k groups of the dyadic cycle") {
  const auto r = k_groups(build_cycle(1), DivisibilitySequence({2, 4, 8, 16}), {1, 2, 3, 4});
  REQUIRE(r.levels.size() == 4);
  for (const auto& l : r.levels) {
    CHECK(l.k0 == FinitelyGeneratedAbelianGroup{1, {}});
    CHECK(l.k1 == FinitelyGeneratedAbelianGroup{1, {}});
  }
  for (const auto& m : r.maps) {
    CHECK(m.k1 == IntegerMatrix::from_rows({{1}}));
    CHECK(abs(m.k0(0, 0)) == 2);
  }
  CHECK(r.k0.constant);
  CHECK(r.k1.limit == "Z");
}

TEST_CASE("k groups of the 2-loop bouquet") {
  const auto r = k_groups(build_bouquet(2), DivisibilitySequence({1}), {1});
  CHECK(r.levels.at(0).k0.to_string() == "0");
  CHECK(r.levels.at(0).k1.to_string() == "0");
  // the level-k cokernel is Z/(2^{n_k} - 1)
  const auto r2 = k_groups(build_bouquet(2), DivisibilitySequence({2, 4, 8}), {1, 2, 3});
  CHECK(r2.levels[0].k0.to_string() == "Z/3");
  CHECK(r2.levels[1].k0.to_string() == "Z/15");
  CHECK(r2.levels[2].k0.to_string() == "Z/255");
}

TEST_CASE("k groups are invariant under relabeling") {
  for (const auto& name : corpus::names()) {
    CAPTURE(name);
    const auto g = corpus::load(name);
    const auto h = relabel(*g);
    const DivisibilitySequence seq({1, 2, 4});
    const auto a = k_groups(*g, seq, {1, 2, 3});
    const auto b = k_groups(h, seq, {1, 2, 3});
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(a.levels[i].k0 == b.levels[i].k0);
      CHECK(a.levels[i].k1 == b.levels[i].k1);
    }
  }
}

TEST_CASE("k_groups preconditions") {
  const auto c1 = build_cycle(1);
  CHECK_THROWS_AS(k_groups(c1, DivisibilitySequence({2, 4}), {2, 1}), InputError);
  CHECK_THROWS_AS(k_groups(c1, DivisibilitySequence({2, 4}), {0}), InputError);
  CHECK_THROWS_AS(k_groups(DirectedMultigraph({"x", "y"}, {{"t", "x", "y"}}), DivisibilitySequence({2}), {1}),
                  InputError);
  CHECK_THROWS_AS(k_groups(build_bouquet(3), DivisibilitySequence({16}), {1}), ResourceError);
}
