#include "gbd/exact.hpp"

#include "gbd/errors.hpp"

namespace gbd {

std::string GaussianRational::to_string() const {
  if (im == 0) return re.get_str();
  if (re == 0) return im == 1 ? "i" : im == -1 ? "-i" : im.get_str() + "i";
  return re.get_str() + (im < 0 ? "" : "+") + im.get_str() + "i";
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  const mpq_class norm = b.re * b.re + b.im * b.im;
  if (norm == 0) throw InputError("division by zero");
  const GaussianRational num = a * b.conj();
  return {num.re / norm, num.im / norm};
}

GaussianRational power(const GaussianRational& z, std::size_t k) {
  GaussianRational out(1);
  for (std::size_t i = 0; i < k; ++i) out = out * z;
  return out;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace(i, GaussianRational(1));
  return m;
}

GaussianRational SparseMatrix::get(std::size_t i, std::size_t j) const {
  auto it = data_[i].find(j);
  return it == data_[i].end() ? GaussianRational() : it->second;
}

void SparseMatrix::set(std::size_t i, std::size_t j, const GaussianRational& v) {
  if (i >= rows_ || j >= cols_) throw InputError("matrix index out of range");
  if (v.is_zero()) data_[i].erase(j);
  else data_[i][j] = v;
}

void SparseMatrix::add(std::size_t i, std::size_t j, const GaussianRational& v) {
  if (v.is_zero()) return;
  set(i, j, get(i, j) + v);
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

std::optional<std::pair<std::size_t, std::size_t>> SparseMatrix::first_nonzero() const {
  for (std::size_t i = 0; i < rows_; ++i)
    if (!data_[i].empty()) return std::make_pair(i, data_[i].begin()->first);
  return std::nullopt;
}

SparseMatrix SparseMatrix::adjoint() const {
  SparseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) t.data_[j].emplace(i, v.conj());
  return t;
}

SparseMatrix SparseMatrix::compress(const std::vector<bool>& keep) const {
  if (keep.size() != rows_ || keep.size() != cols_) throw InputError("compression mask has the wrong size");
  SparseMatrix c(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (!keep[i]) continue;
    for (const auto& [j, v] : data_[i])
      if (keep[j]) c.data_[i].emplace(j, v);
  }
  return c;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
  SparseMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    auto& out = c.data_[i];
    for (const auto& [k, av] : a.data_[i])
      for (const auto& [j, bv] : b.data_[k]) out[j] += av * bv;
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  }
  return c;
}

namespace {

SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, bool subtract) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix sum dimension mismatch");
  SparseMatrix c = a;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (const auto& [j, v] : b.row(i)) c.add(i, j, subtract ? -v : v);
  return c;
}

}  // namespace

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, false); }
SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, true); }

SparseMatrix operator*(const GaussianRational& c, const SparseMatrix& a) {
  SparseMatrix out(a.rows_, a.cols_);
  if (c.is_zero()) return out;
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (const auto& [j, v] : a.data_[i]) out.data_[i].emplace(j, c * v);
  return out;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool is_positive_semidefinite(const SparseMatrix& a) {
  if (a.rows() != a.cols() || !a.is_hermitian()) return false;
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (!a.row(i).empty()) support.push_back(i);
  const std::size_t n = support.size();
  std::vector<GaussianRational> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = a.get(support[i], support[j]);

  // Symmetric Gaussian elimination: every pivot must be >= 0, and a zero
  // pivot must have a zero row.
  for (std::size_t k = 0; k < n; ++k) {
    const auto piv = m[k * n + k].re;
    if (piv < 0) return false;
    if (piv == 0) {
      for (std::size_t j = k + 1; j < n; ++j)
        if (!m[k * n + j].is_zero()) return false;
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i * n + k].is_zero()) continue;
      const GaussianRational f = m[i * n + k] / GaussianRational(piv);
      for (std::size_t j = k; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
    }
  }
  return true;
}

std::size_t projection_rank(const SparseMatrix& p) {
  if (!(p * p == p) || !p.is_hermitian()) throw VerificationFailure("matrix is not an orthogonal projection");
  mpq_class trace = 0;
  for (std::size_t i = 0; i < p.rows(); ++i) trace += p.get(i, i).re;
  if (trace.get_den() != 1) throw VerificationFailure("projection has non-integer trace");
  return trace.get_num().get_ui();
}

}  // namespace gbd
