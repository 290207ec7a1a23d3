#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gbd {

/// a + b i with a, b rational.
struct GaussianRational {
  mpq_class re, im;

  GaussianRational() = default;
  GaussianRational(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long r) : re(r), im(0) {}

  static GaussianRational unit_i() { return {0, 1}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  GaussianRational conj() const { return {re, -im}; }
  std::string to_string() const;

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  /// Division by a non-zero value.
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
  GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
  GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) { return a.re == b.re && a.im == b.im; }
};

/// z^k for integer k >= 0.
GaussianRational power(const GaussianRational& z, std::size_t k);

/// Sparse exact matrix; explicit zeros are never stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}
  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  GaussianRational get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const GaussianRational& v);
  void add(std::size_t i, std::size_t j, const GaussianRational& v);
  const std::map<std::size_t, GaussianRational>& row(std::size_t i) const { return data_[i]; }

  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }
  /// First stored entry in row-major order.
  std::optional<std::pair<std::size_t, std::size_t>> first_nonzero() const;

  SparseMatrix adjoint() const;
  /// P A P where P projects onto the coordinates with keep[i] set.
  SparseMatrix compress(const std::vector<bool>& keep) const;
  bool is_hermitian() const { return *this == adjoint(); }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator*(const GaussianRational& c, const SparseMatrix& a);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::map<std::size_t, GaussianRational>> data_;
};

/// Exact positive semidefiniteness of a Hermitian matrix (false if not Hermitian).
bool is_positive_semidefinite(const SparseMatrix& a);

/// Rank of a Hermitian idempotent: its trace. Throws if not a projection.
std::size_t projection_rank(const SparseMatrix& p);

}  // namespace gbd
