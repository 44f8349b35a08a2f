#pragma once

#include <map>
#include <vector>

#include "nakai/derivation.hpp"
#include "nakai/linalg.hpp"
#include "nakai/quotient.hpp"

namespace nakai {

using MultiIndex = Monomial;

struct MultiIndexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

// Multi-indices with 1 <= |alpha| <= m: by total degree, then lex descending.
std::vector<MultiIndex> multi_indices(std::size_t n, unsigned m, bool include_zero = false);

// binomial(beta, alpha) = prod_i binomial(beta_i, alpha_i); zero unless alpha <= beta.
Rational multi_binomial(const MultiIndex& beta, const MultiIndex& alpha);

// Divided-power derivative d^(alpha) = (1/alpha!) d^alpha.
Polynomial divided_derivative(const Polynomial& p, const MultiIndex& alpha);

// sum_alpha c_alpha d^(alpha) with coefficients in a quotient.
class DiffOperator {
 public:
  DiffOperator() = default;
  DiffOperator(QuotientPtr q, unsigned order) : q_(std::move(q)), order_(order) {}

  static DiffOperator multiplication(const QuotientPtr& q, const Polynomial& p);
  static DiffOperator from_derivation(const Derivation& d);
  static DiffOperator from_terms(const QuotientPtr& q, const std::vector<std::pair<MultiIndex, Polynomial>>& terms);

  const QuotientPtr& parent() const { return q_; }
  unsigned order() const { return order_; }
  const std::map<MultiIndex, Polynomial, MultiIndexLess>& terms() const { return c_; }
  Polynomial coefficient(const MultiIndex& alpha) const;
  void add_term(const MultiIndex& alpha, const Polynomial& c);
  bool is_zero() const { return c_.empty(); }

  Coset apply(const Polynomial& p) const;
  // Polynomial-level action before normal form; used by composition checks.
  Polynomial apply_raw(const Polynomial& p) const;

  DiffOperator operator+(const DiffOperator& o) const;
  DiffOperator operator-(const DiffOperator& o) const;
  DiffOperator operator*(const Rational& c) const;
  // Left multiplication by an element of the quotient.
  DiffOperator times(const Polynomial& a) const;

 private:
  void check(const DiffOperator& o) const;
  QuotientPtr q_;
  unsigned order_ = 0;
  std::map<MultiIndex, Polynomial, MultiIndexLess> c_;
};

DiffOperator compose(const DiffOperator& d1, const DiffOperator& d2);
DiffOperator commutator(const DiffOperator& d1, const DiffOperator& d2);
DiffOperator shift(const DiffOperator& d, const MultiIndex& beta);
DiffOperator phi(const DiffOperator& d, const MultiIndex& beta);
DiffOperator power(const DiffOperator& d, unsigned k);

// Conditions shift(D, beta)(g_j) = 0 for |beta| <= m - 1 and c_0(D) = 0.
bool in_der_m(const DiffOperator& d, const std::vector<Polynomial>& gens, unsigned m);
std::vector<DiffOperator> solve_der_m(const QuotientPtr& q, const std::vector<Polynomial>& gens, unsigned m);

// (Phi(D, e_1), ..., Phi(D, e_n)); requires D in Der^2(A).
DerivationTuple theta2(const DiffOperator& d, const std::vector<Polynomial>& gens);
bool d2_compatible(const DerivationTuple& t);

Matrix operator_matrix(const DiffOperator& d);

// Subspace of dim(q) x dim(q) matrices, flattened row-major.
struct MatrixSpan {
  QuotientPtr q;
  Subspace span;
  bool contains(const Matrix& m) const { return span.contains(m.flatten()); }
  std::size_t dimension() const { return span.dimension(); }
};

MatrixSpan matrix_span(const QuotientPtr& q, const std::vector<Matrix>& generators);
MatrixSpan der1_span(const QuotientPtr& q, const std::vector<Polynomial>& gens);
MatrixSpan der2_span(const QuotientPtr& q, const std::vector<Polynomial>& gens);
MatrixSpan der_m_span(const QuotientPtr& q, const std::vector<Polynomial>& gens, unsigned m);
bool in_der2(const DiffOperator& d, const MatrixSpan& span);

}  // namespace nakai
