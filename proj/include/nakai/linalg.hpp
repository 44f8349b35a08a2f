#pragma once

#include <cstddef>
#include <vector>

#include "nakai/polynomial.hpp"

namespace nakai {

using Vector = std::vector<Rational>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Rational& c) const;
  Vector operator*(const Vector& v) const;
  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool is_zero() const;
  Vector flatten() const { return a_; }

  // In-place reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  // Basis of {v : A v = 0}, returned in reduced row echelon form.
  std::vector<Vector> nullspace() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> a_;
};

// Incrementally maintained subspace of Q^n with a reduced echelon basis.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : n_(ambient) {}

  std::size_t ambient() const { return n_; }
  std::size_t dimension() const { return basis_.size(); }
  // Returns true when v enlarged the span.
  bool add(Vector v);
  bool contains(const Vector& v) const;
  // Fully reduced basis sorted by pivot column.
  std::vector<Vector> basis() const;
  bool contains_subspace(const Subspace& other) const;

 private:
  Vector reduce(Vector v) const;
  std::size_t n_;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

bool is_zero_vector(const Vector& v);

}  // namespace nakai
