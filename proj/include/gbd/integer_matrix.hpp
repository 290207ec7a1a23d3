#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace gbd {

/// Dense matrix of arbitrary-precision integers with optional row/column labels.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  IntegerMatrix transpose() const;
  bool is_zero() const;
  /// Entries only; labels are ignored.
  bool operator==(const IntegerMatrix& other) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += c * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& c);
  void add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& c);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  IntegerMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  std::vector<std::vector<std::string>> to_strings() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpz_class> data_;
};

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b);
std::vector<mpz_class> operator*(const IntegerMatrix& a, const std::vector<mpz_class>& x);

/// Fraction-free Gaussian elimination.
mpz_class determinant(const IntegerMatrix& a);

struct SmithDecomposition {
  IntegerMatrix U, V, D;             // U * A * V = D
  std::vector<mpz_class> divisors;   // the non-zero diagonal of D, d_1 | d_2 | ...
  std::size_t rank() const { return divisors.size(); }
};

SmithDecomposition smith_normal_form(const IntegerMatrix& a);

/// Row-style Hermite normal form of the row lattice: positive pivots, entries
/// above each pivot reduced into [0, pivot), zero rows dropped.
IntegerMatrix hermite_normal_form(const IntegerMatrix& a);

/// Exact inverse of a square matrix with determinant +-1. Throws
/// VerificationFailure if the matrix is not unimodular.
IntegerMatrix unimodular_inverse(const IntegerMatrix& a);

/// Solves B * X = C exactly for integer X when B has full column rank.
/// Returns false if no integer solution exists.
bool solve_integer(const IntegerMatrix& b, const IntegerMatrix& c, IntegerMatrix& x);

}  // namespace gbd
