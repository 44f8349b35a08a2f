#include "nakai/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace nakai {

bool is_zero_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error("matrix dimension mismatch");
  Matrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (o(k, j) != 0) r(i, j) += a * o(k, j);
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix dimension mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix dimension mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

Matrix Matrix::operator*(const Rational& c) const {
  Matrix r = *this;
  for (auto& x : r.a_) x *= c;
  return r;
}

Vector Matrix::operator*(const Vector& v) const {
  if (v.size() != cols_) throw Error("matrix dimension mismatch");
  Vector r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != 0 && v[j] != 0) r[i] += (*this)(i, j) * v[j];
  return r;
}

bool Matrix::is_zero() const { return is_zero_vector(a_); }

std::vector<std::size_t> Matrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && (*this)(p, c) == 0) ++p;
    if (p == rows_) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
    Rational inv = 1 / (*this)(r, c);
    for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || (*this)(i, c) == 0) continue;
      Rational f = (*this)(i, c);
      for (std::size_t j = c; j < cols_; ++j)
        if ((*this)(r, j) != 0) (*this)(i, j) -= f * (*this)(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t Matrix::rank() const {
  Matrix m = *this;
  return m.rref().size();
}

std::vector<Vector> Matrix::nullspace() const {
  Matrix m = *this;
  auto pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  Subspace out(cols_);
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols_);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    out.add(std::move(v));
  }
  return out.basis();
}

Vector Subspace::reduce(Vector v) const {
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const Rational f = v[pivots_[k]];
    if (f == 0) continue;
    const Vector& b = basis_[k];
    for (std::size_t j = pivots_[k]; j < n_; ++j)
      if (b[j] != 0) v[j] -= f * b[j];
  }
  return v;
}

bool Subspace::add(Vector v) {
  if (v.size() != n_) throw Error("subspace dimension mismatch");
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < n_ && v[p] == 0) ++p;
  if (p == n_) return false;
  Rational inv = 1 / v[p];
  for (std::size_t j = p; j < n_; ++j) v[j] *= inv;
  for (auto& b : basis_) {
    const Rational f = b[p];
    if (f == 0) continue;
    for (std::size_t j = p; j < n_; ++j)
      if (v[j] != 0) b[j] -= f * v[j];
  }
  basis_.push_back(std::move(v));
  pivots_.push_back(p);
  // Keep basis_ ordered by pivot so reduce() sweeps left to right.
  for (std::size_t k = basis_.size() - 1; k > 0 && pivots_[k - 1] > pivots_[k]; --k) {
    std::swap(basis_[k - 1], basis_[k]);
    std::swap(pivots_[k - 1], pivots_[k]);
  }
  return true;
}

bool Subspace::contains(const Vector& v) const {
  if (v.size() != n_) throw Error("subspace dimension mismatch");
  return is_zero_vector(reduce(v));
}

std::vector<Vector> Subspace::basis() const { return basis_; }

bool Subspace::contains_subspace(const Subspace& other) const {
  for (const auto& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

}  // namespace nakai
