#include "gbd/integer_matrix.hpp"

#include <utility>

#include "gbd/errors.hpp"

namespace gbd {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows.front().size();
  IntegerMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  t.row_labels = col_labels;
  t.col_labels = row_labels;
  return t;
}

bool IntegerMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

bool IntegerMatrix::operator==(const IntegerMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntegerMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntegerMatrix::add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& c) {
  if (c == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += c * (*this)(src, j);
}

void IntegerMatrix::add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& c) {
  if (c == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += c * (*this)(i, src);
}

void IntegerMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntegerMatrix::negate_col(std::size_t c) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

IntegerMatrix IntegerMatrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  IntegerMatrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
  if (!row_labels.empty())
    for (auto r : rows) s.row_labels.push_back(row_labels[r]);
  if (!col_labels.empty())
    for (auto c : cols) s.col_labels.push_back(col_labels[c]);
  return s;
}

std::vector<std::vector<std::string>> IntegerMatrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_, std::vector<std::string>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j).get_str();
  return out;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product dimension mismatch");
  IntegerMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  c.row_labels = a.row_labels;
  c.col_labels = b.col_labels;
  return c;
}

IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix difference dimension mismatch");
  IntegerMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

std::vector<mpz_class> operator*(const IntegerMatrix& a, const std::vector<mpz_class>& x) {
  if (a.cols() != x.size()) throw InputError("matrix-vector dimension mismatch");
  std::vector<mpz_class> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

mpz_class determinant(const IntegerMatrix& a) {
  if (a.rows() != a.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntegerMatrix m = a;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

SmithDecomposition smith_normal_form(const IntegerMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithDecomposition out{IntegerMatrix::identity(m), IntegerMatrix::identity(n), a, {}};
  auto& D = out.D;
  auto& U = out.U;
  auto& V = out.V;
  D.row_labels.clear();
  D.col_labels.clear();

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    bool found = false;
    while (true) {
      // Smallest non-zero entry of the trailing block as pivot.
      std::size_t pi = 0, pj = 0;
      found = false;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (D(i, j) != 0 && (!found || abs(D(i, j)) < abs(D(pi, pj)))) pi = i, pj = j, found = true;
      if (!found) break;
      D.swap_rows(t, pi), U.swap_rows(t, pi);
      D.swap_cols(t, pj), V.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        D.add_row_multiple(i, t, -q), U.add_row_multiple(i, t, -q);
        clean = clean && D(i, t) == 0;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        D.add_col_multiple(j, t, -q), V.add_col_multiple(j, t, -q);
        clean = clean && D(t, j) == 0;
      }
      if (!clean) continue;

      // The pivot must divide the rest of the block for the divisor chain.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      D.add_row_multiple(t, bad, 1), U.add_row_multiple(t, bad, 1);
    }
    if (!found) break;
    if (D(t, t) < 0) D.negate_row(t), U.negate_row(t);
    out.divisors.push_back(D(t, t));
  }
  return out;
}

IntegerMatrix hermite_normal_form(const IntegerMatrix& a) {
  IntegerMatrix h = a;
  h.row_labels.clear();
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    while (true) {
      std::size_t best = h.rows();
      std::size_t nonzero = 0;
      for (std::size_t i = r; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        ++nonzero;
        if (best == h.rows() || abs(h(i, c)) < abs(h(best, c))) best = i;
      }
      if (nonzero == 0) break;
      h.swap_rows(r, best);
      if (nonzero == 1) break;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
        h.add_row_multiple(i, r, -q);
      }
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) h.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
      h.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  std::vector<std::size_t> keep(r), all(h.cols());
  for (std::size_t i = 0; i < r; ++i) keep[i] = i;
  for (std::size_t j = 0; j < h.cols(); ++j) all[j] = j;
  return h.submatrix(keep, all);
}

IntegerMatrix unimodular_inverse(const IntegerMatrix& a) {
  if (a.rows() != a.cols()) throw VerificationFailure("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<mpq_class> m(n * 2 * n);
  auto at = [&](std::size_t i, std::size_t j) -> mpq_class& { return m[i * 2 * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) at(i, j) = a(i, j);
    at(i, n + i) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && at(p, c) == 0) ++p;
    if (p == n) throw VerificationFailure("matrix is singular, not unimodular");
    if (p != c)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(at(p, j), at(c, j));
    const mpq_class piv = at(c, c);
    for (std::size_t j = c; j < 2 * n; ++j) at(c, j) /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || at(i, c) == 0) continue;
      const mpq_class f = at(i, c);
      for (std::size_t j = c; j < 2 * n; ++j) at(i, j) -= f * at(c, j);
    }
  }
  IntegerMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const mpq_class& v = at(i, n + j);
      if (v.get_den() != 1) throw VerificationFailure("inverse has a non-integer entry; matrix is not unimodular");
      inv(i, j) = v.get_num();
    }
  return inv;
}

bool solve_integer(const IntegerMatrix& b, const IntegerMatrix& c, IntegerMatrix& x) {
  if (b.rows() != c.rows()) throw InputError("solve: row count mismatch");
  const auto snf = smith_normal_form(b);
  const IntegerMatrix uc = snf.U * c;
  const std::size_t r = snf.rank();
  if (r != b.cols()) throw InputError("solve: coefficient matrix lacks full column rank");
  IntegerMatrix y(b.cols(), c.cols());
  for (std::size_t i = 0; i < uc.rows(); ++i)
    for (std::size_t j = 0; j < uc.cols(); ++j) {
      if (i >= r) {
        if (uc(i, j) != 0) return false;
        continue;
      }
      if (!mpz_divisible_p(uc(i, j).get_mpz_t(), snf.divisors[i].get_mpz_t())) return false;
      mpz_divexact(y(i, j).get_mpz_t(), uc(i, j).get_mpz_t(), snf.divisors[i].get_mpz_t());
    }
  x = snf.V * y;
  return true;
}

}  // namespace gbd
