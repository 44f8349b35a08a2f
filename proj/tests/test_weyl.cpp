#include <gtest/gtest.h>

#include "nakai/remark1.hpp"
#include "nakai/weyl.hpp"
#include "support.hpp"

using namespace nakai;
using nakai::test::P;

namespace {

using Algebra = test::SmallAlgebra;
using test::small_algebras;

Algebra algebra(const std::string& name, std::vector<std::string> vars, const std::vector<std::string>& gens) {
  return test::small_algebra(name, std::move(vars), gens);
}

DiffOperator partial(const QuotientPtr& q, const MultiIndex& a) {
  return DiffOperator::from_terms(q, {{a, Polynomial::constant(q->ring(), 1)}});
}

DiffOperator random_in(std::mt19937_64& rng, const QuotientPtr& q, const std::vector<DiffOperator>& basis) {
  DiffOperator out(q, 2);
  for (const auto& b : basis) out = out + b * test::small_rational(rng, 3);
  auto m = test::random_polynomial(rng, q->ring(), 0, 2, 2);
  return out + DiffOperator::multiplication(q, m);
}

}  // namespace

TEST(Weyl, MultiIndicesAndBinomials) {
  EXPECT_EQ(multi_indices(2, 2).size(), 5u);
  EXPECT_EQ(multi_indices(2, 2, true).size(), 6u);
  EXPECT_EQ(multi_indices(3, 2).size(), 9u);
  EXPECT_EQ(multi_binomial(Monomial{3, 2}, Monomial{1, 1}), 6);
  EXPECT_EQ(multi_binomial(Monomial{1, 2}, Monomial{2, 0}), 0);
  auto r = make_ring({"x", "y"});
  EXPECT_EQ(divided_derivative(P(r, "x^3*y"), Monomial{2, 0}), P(r, "3*x*y"));
  EXPECT_EQ(divided_derivative(P(r, "x^3*y"), Monomial{0, 0}), P(r, "x^3*y"));
}

TEST(Weyl, ShiftAndPhiExamples) {
  auto a = small_algebras()[0];
  auto d2 = partial(a.q, Monomial{2, 0});
  auto d1 = partial(a.q, Monomial{1, 0});
  EXPECT_EQ(shift(d2, Monomial{1, 0}).terms(), d1.terms());
  EXPECT_EQ(shift(d2, Monomial{0, 0}).terms(), d2.terms());
  EXPECT_TRUE(phi(d1, Monomial{1, 0}).is_zero());
  auto with_constant = d2 + DiffOperator::multiplication(a.q, P(a.q->ring(), "x"));
  EXPECT_EQ(phi(with_constant, Monomial{0, 0}).terms(), d2.terms());
}

TEST(Weyl, ShiftMatchesDerTwoConditions) {
  auto a = small_algebras()[0];
  for (const auto& d : solve_der_m(a.q, a.gens, 2))
    for (std::size_t i = 0; i < 2; ++i)
      for (const auto& g : a.gens) EXPECT_TRUE(shift(d, MultiIndex::var(i)).apply(g).is_zero());
}

TEST(Weyl, CompositionIsAssociativeAndCoherent) {
  std::mt19937_64 rng(53);
  for (const auto& a : small_algebras()) {
    SCOPED_TRACE(a.name);
    auto basis = solve_der_m(a.q, a.gens, 2);
    for (int k = 0; k < 8; ++k) {
      auto d1 = random_in(rng, a.q, basis);
      auto d2 = random_in(rng, a.q, basis);
      auto d3 = random_in(rng, a.q, basis);
      auto left = compose(compose(d1, d2), d3);
      auto right = compose(d1, compose(d2, d3));
      EXPECT_EQ(operator_matrix(left), operator_matrix(right));
      EXPECT_EQ(operator_matrix(compose(d1, d2)), operator_matrix(d1) * operator_matrix(d2));
      EXPECT_EQ(compose(d1, d2).order(), d1.order() + d2.order());
      auto m1 = operator_matrix(d1), m2 = operator_matrix(d2);
      EXPECT_EQ(operator_matrix(commutator(d1, d2)), m1 * m2 - m2 * m1);
    }
  }
}

TEST(Weyl, FiltrationProperties) {
  for (const auto& a : small_algebras()) {
    SCOPED_TRACE(a.name);
    auto der1 = solve_der_m(a.q, a.gens, 1);
    auto span1 = der_m_span(a.q, a.gens, 1);
    for (const auto& d : der1) EXPECT_TRUE(in_der_m(d, a.gens, 1));
    for (const auto& d : der1)
      for (const auto& e : der1) {
        EXPECT_TRUE(in_der_m(compose(d, e), a.gens, 2));
        EXPECT_TRUE(span1.contains(operator_matrix(commutator(d, e))));
      }
  }
}

TEST(Weyl, DerOneAgreesWithKernel) {
  for (const auto& a : small_algebras()) {
    auto from_ops = der_m_span(a.q, a.gens, 1);
    std::vector<Matrix> ms;
    for (const auto& d : der1_kernel(a.q, a.gens)) ms.push_back(operator_matrix(DiffOperator::from_derivation(d)));
    auto from_kernel = matrix_span(a.q, ms);
    EXPECT_TRUE(from_ops.span.contains_subspace(from_kernel.span));
    EXPECT_TRUE(from_kernel.span.contains_subspace(from_ops.span));
  }
}

TEST(Weyl, DerTwoOnLineQuotientIgnoresX) {
  auto a = algebra("x, y^3", {"x", "y"}, {"x", "y^3"});
  auto ops = solve_der_m(a.q, a.gens, 2);
  EXPECT_FALSE(ops.empty());
  for (const auto& d : ops)
    for (const auto& [alpha, c] : d.terms()) EXPECT_EQ(alpha[0], 0u);
}

TEST(Weyl, OperatorMatrices) {
  for (const auto& a : small_algebras()) {
    std::size_t n = a.q->dimension();
    auto one = DiffOperator::multiplication(a.q, Polynomial::constant(a.q->ring(), 1));
    EXPECT_EQ(operator_matrix(one), Matrix::identity(n));
    Matrix m = operator_matrix(DiffOperator::multiplication(a.q, Polynomial::variable(a.q->ring(), 0)));
    Matrix pw = Matrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) pw = pw * m;
    EXPECT_TRUE(pw.is_zero());
    std::mt19937_64 rng(59);
    auto d = random_in(rng, a.q, solve_der_m(a.q, a.gens, 2));
    auto p = a.q->reduce(test::random_polynomial(rng, a.q->ring(), 0, 3, 4));
    EXPECT_EQ(operator_matrix(d) * a.q->coords(p), d.apply(p).coords());
  }
}

TEST(Weyl, EulerIsDiagonalOnMonomialBasis) {
  auto a = small_algebras()[0];
  auto r = a.q->ring();
  auto e = DiffOperator::from_terms(a.q, {{Monomial{1, 0}, P(r, "2/3*x")}, {Monomial{0, 1}, P(r, "y")}});
  Matrix m = operator_matrix(e);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j) EXPECT_EQ(m(i, j), 0);
  EXPECT_EQ(m(0, 0), 0);
}

TEST(Weyl, ThetaTwoExactness) {
  for (const auto& a : small_algebras()) {
    EXPECT_TRUE(test::theta2_exact(a)) << a.name;
    for (const auto& d : solve_der_m(a.q, a.gens, 2)) {
      auto t = theta2(d, a.gens);
      for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j) EXPECT_TRUE(t[i].coefficient(j) == t[j].coefficient(i));
    }
    for (const auto& d : solve_der_m(a.q, a.gens, 1))
      for (const auto& part : theta2(d, a.gens)) EXPECT_TRUE(part.is_zero());
  }
}

TEST(Weyl, ThetaTwoRejectsNonDerivations) {
  auto a = small_algebras()[0];
  auto bad = partial(a.q, Monomial{2, 0});
  EXPECT_THROW(theta2(bad, a.gens), NotADerivation);
}

TEST(Weyl, CompatibilityPredicate) {
  auto a = small_algebras()[0];
  auto r = a.q->ring();
  DerivationTuple zero{Derivation::zero(a.q), Derivation::zero(a.q)};
  EXPECT_TRUE(d2_compatible(zero));
  DerivationTuple bad{Derivation(a.q, {P(r, "0"), P(r, "1")}), Derivation::zero(a.q)};
  EXPECT_FALSE(d2_compatible(bad));
}

TEST(Weyl, SmallDerTwoSitsInsideDerTwo) {
  for (const auto& a : small_algebras()) {
    auto small = der2_span(a.q, a.gens);
    auto full = der_m_span(a.q, a.gens, 2);
    EXPECT_TRUE(full.span.contains_subspace(small.span));
    for (const auto& d : solve_der_m(a.q, a.gens, 1)) EXPECT_TRUE(in_der2(d, small));
  }
}

TEST(DFiveDerivations, Report) {
  auto r = run_remark1();
  EXPECT_EQ(r.algebra_dimension, 5u);
  EXPECT_EQ(r.der1_dimension, 5u);
  EXPECT_TRUE(r.der1_listed_ok);
  EXPECT_EQ(r.der2_small_dimension, 8u);
  EXPECT_EQ(r.der2_dimension, 11u);
  EXPECT_EQ(r.listed_extras_distinct, 3u);
  EXPECT_TRUE(r.listed_span_matches);
  EXPECT_EQ(r.pe, "(-8/3*x^2)*d_x^(2) + (-8*y^2)*d_y^(2)");
  EXPECT_FALSE(r.identity_first_order);
  EXPECT_TRUE(r.identity_second_order);
  EXPECT_TRUE(r.pe_in_Der2);
  EXPECT_FALSE(r.pe_in_der2);
}
