#include <gtest/gtest.h>

#include "nakai/derivation.hpp"
#include "nakai/weyl.hpp"
#include "support.hpp"

using namespace nakai;
using nakai::test::P;
using nakai::test::perturbed_theta;
using nakai::test::random_combination;

namespace {

RingPtr xy() { return make_ring({"x", "y"}); }
RingPtr xyz() { return make_ring({"x", "y", "z"}); }

Polynomial e12(const RingPtr& r) { return P(r, "x^3 + y^7 + x*y^5"); }
Polynomial q10(const RingPtr& r) { return P(r, "x^3 + y^4 + y*z^2 + x*y^3"); }

bool kills_generators(const Derivation& d, const std::vector<Polynomial>& gens) {
  for (const auto& g : gens) {
    Polynomial acc(g.ring());
    for (std::size_t s = 0; s < d.nvars(); ++s) acc += d.coeffs[s] * partial_derivative(g, s);
    if (!d.parent->contains(acc)) return false;
  }
  return true;
}

}  // namespace

TEST(Der1Kernel, E12AtUnitModulus) {
  auto r = xy();
  Polynomial f = e12(r);
  auto q = tjurina_quotient(f);
  auto kernel = hess_kernel(q, f);
  EXPECT_EQ(kernel.size(), 14u);
  for (const auto& d : kernel) EXPECT_TRUE(kills_generators(d, q->generators()));
  std::vector<std::vector<Polynomial>> vs;
  for (const auto& d : kernel) vs.push_back(d.coeffs);
  vs.push_back({P(r, "y^4"), P(r, "-6/5*x")});
  EXPECT_EQ(span_dimension(q, vs), 14u);
  EXPECT_TRUE(kills_generators(Derivation::zero(q), q->generators()));
}

TEST(Der1Kernel, VectorsOutsideSpanFailSomeGenerator) {
  std::mt19937_64 rng(31);
  auto r = xy();
  Polynomial f = e12(r);
  auto q = tjurina_quotient(f);
  auto kernel = hess_kernel(q, f);
  std::vector<std::vector<Polynomial>> vs;
  for (const auto& d : kernel) vs.push_back(d.coeffs);
  int outside = 0;
  for (int k = 0; k < 30; ++k) {
    std::vector<Polynomial> v{q->reduce(test::random_polynomial(rng, r, 0, 4, 3)),
                              q->reduce(test::random_polynomial(rng, r, 0, 4, 3))};
    auto with = vs;
    with.push_back(v);
    bool in_span = span_dimension(q, with) == kernel.size();
    EXPECT_EQ(kills_generators(Derivation(q, v), q->generators()), in_span);
    outside += !in_span;
  }
  EXPECT_GT(outside, 0);
}

TEST(Der1Kernel, BasisIsDeterministic) {
  auto r = xyz();
  auto q1 = tjurina_quotient(q10(r));
  auto q2 = tjurina_quotient(q10(r));
  auto k1 = hess_kernel(q1, q10(r));
  auto k2 = hess_kernel(q2, q10(r));
  ASSERT_EQ(k1.size(), k2.size());
  for (std::size_t i = 0; i < k1.size(); ++i) EXPECT_EQ(k1[i].coeffs, k2[i].coeffs);
}

TEST(ComponentIdeal, BoundsFromKernelComponents) {
  auto r = xy();
  Polynomial f = e12(r);
  auto q = tjurina_quotient(f);
  Ideal base(tjurina_generators(f));
  auto k2 = component_ideal(hess_kernel(q, f), 1, base);
  for (const auto& g : k2.generators) EXPECT_EQ(g.constant_term(), 0);
  auto empty = component_ideal({}, 0, base);
  EXPECT_TRUE(empty.generators.empty());
  EXPECT_EQ(empty.ideal.generators.size(), base.generators.size());

  auto r3 = xyz();
  Polynomial g = q10(r3);
  auto q3 = tjurina_quotient(g);
  auto k1 = component_ideal(hess_kernel(q3, g), 0, Ideal(tjurina_generators(g)));
  std::vector<Polynomial> bound = tjurina_generators(g);
  for (const char* s : {"z^2", "y^3", "x*z", "x*y"}) bound.push_back(P(r3, s));
  auto qb = artinian_quotient(bound);
  for (const auto& gen : k1.generators) EXPECT_TRUE(qb->contains(gen));
}

TEST(EulerHamiltonian, Formulas) {
  auto r = xy();
  Polynomial f = P(r, "x^2 + y^2");
  WeightVector w{{make_rational(1, 2), make_rational(1, 2)}, 1};
  auto gens = euler_hamiltonian(f, w);
  ASSERT_EQ(gens.size(), 2u);
  EXPECT_EQ(gens[0].coeffs[0], P(r, "x/2"));
  EXPECT_EQ(gens[0].coeffs[1], P(r, "y/2"));
  EXPECT_EQ(gens[1].coeffs[0], P(r, "-2*y"));
  EXPECT_EQ(gens[1].coeffs[1], P(r, "2*x"));
  EXPECT_THROW(euler_hamiltonian(e12(r), w), PreconditionError);

  auto r3 = xyz();
  Polynomial e6 = P(r3, "x^3 + y^3 + z^3 + x*y*z");
  auto third = make_rational(1, 3);
  auto g6 = euler_hamiltonian(e6, {{third, third, third}, 1});
  EXPECT_EQ(g6[0].apply(e6), e6);
  for (std::size_t k = 1; k < g6.size(); ++k) EXPECT_TRUE(g6[k].apply(e6).is_zero());
  std::mt19937_64 rng(2);
  auto any = test::random_polynomial(rng, r3, 2, 5, 6);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) EXPECT_TRUE(hamiltonian(any, i, j).apply(any).is_zero());
}

TEST(Descent, EulerAndHamiltonianOnWeightedCatalogBranches) {
  std::size_t checked = 0;
  for (const auto& cc : test::concrete_cases()) {
    if (!cc.weights) continue;
    SCOPED_TRACE(cc.spec->id + " / " + cc.branch->condition_text);
    Hypersurface h(cc.f);
    for (const auto& d : euler_hamiltonian(cc.f, *cc.weights)) EXPECT_TRUE(check_descent(d.coeffs, h));
    ++checked;
  }
  EXPECT_GE(checked, 17u);
}

TEST(Descent, PartialDerivativeIsNotADerivationOfTheHypersurface) {
  auto r = xy();
  EXPECT_THROW(check_descent({P(r, "1"), P(r, "0")}, e12(r)), NotADerivation);
}

TEST(Lift, BetaRowsOfE12) {
  auto cc = test::first_case("E12", Route::Beta);
  Hypersurface h(cc.f);
  for (const auto& row : cc.beta) {
    auto lifted = lift_derivation(row, h);
    EXPECT_TRUE(h.in_principal(PolyDerivation{lifted}.apply(cc.f)));
  }
  auto r = cc.f.ring();
  EXPECT_THROW(lift_derivation({P(r, "1"), P(r, "0")}, h), NotLiftable);
  // Already tangent: zero correction is acceptable, the result must stay tangent.
  auto euler_like = hamiltonian(cc.f, 0, 1).coeffs;
  EXPECT_TRUE(h.in_principal(PolyDerivation{lift_derivation(euler_like, h)}.apply(cc.f)));
}

TEST(Symmetrizer, RandomTuplesWithInjectedDefects) {
  std::mt19937_64 rng(41);
  auto r2 = xy();
  auto r3 = xyz();
  int tuples = 0;
  for (const Polynomial& f : {e12(r2), q10(r3)}) {
    Hypersurface h(f);
    auto kernel = hess_kernel(h.tjurina(), f);
    for (int k = 0; k < 25; ++k, ++tuples) {
      auto t = perturbed_theta(rng, h, kernel);
      auto s = symmetrize_tuple(t, h);
      EXPECT_TRUE(symmetric_mod_f(s, h));
      for (std::size_t i = 0; i < h.nvars(); ++i)
        for (std::size_t j = i + 1; j < h.nvars(); ++j) {
          EXPECT_TRUE(h.tjurina()->contains(defect(s, i, j)));
          EXPECT_TRUE(h.tjurina()->contains(defect(t, i, j)));
        }
      // The coset form of the same operation.
      DerivationTuple dt;
      for (const auto& d : t) dt.push_back(d.on(h.tjurina()));
      auto ds = symmetrize_tuple(dt, f);
      for (std::size_t i = 0; i < h.nvars(); ++i)
        for (std::size_t j = i + 1; j < h.nvars(); ++j)
          EXPECT_TRUE(ds[i].coefficient(j) == ds[j].coefficient(i));
    }
  }
  EXPECT_GE(tuples, 50);
}

TEST(Symmetrizer, HandExamples) {
  auto r = xy();
  Polynomial f = e12(r);
  Hypersurface h(f);
  PolyDerivationTuple sym{PolyDerivation{{P(r, "x"), P(r, "y^2")}}, PolyDerivation{{P(r, "y^2"), P(r, "x*y")}}};
  auto same = symmetrize_tuple(sym, h);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(same[i].coeffs, sym[i].coeffs);

  PolyDerivationTuple t{PolyDerivation{{P(r, "0"), P(r, "0")}},
                        PolyDerivation{{partial_derivative(f, 1), P(r, "0")}}};
  auto s = apply_pij(t, 0, 1, h);
  EXPECT_TRUE(h.in_principal(defect(s, 0, 1)));

  PolyDerivationTuple bad{PolyDerivation{{P(r, "0"), P(r, "1")}}, PolyDerivation{{P(r, "0"), P(r, "0")}}};
  EXPECT_THROW(symmetrize_tuple(bad, h), NotInJacobianIdeal);
}

TEST(Symmetrizer, SingleStepKeepsOtherDefects) {
  std::mt19937_64 rng(43);
  auto r = xyz();
  Polynomial f = q10(r);
  Hypersurface h(f);
  auto kernel = hess_kernel(h.tjurina(), f);
  for (int k = 0; k < 10; ++k) {
    auto t = perturbed_theta(rng, h, kernel);
    auto s = apply_pij(t, 0, 2, h);
    for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 2}})
      EXPECT_TRUE(h.tjurina()->contains(defect(s, a, b) - defect(t, a, b)));
    EXPECT_TRUE(h.in_principal(defect(s, 0, 2)));
  }
}

TEST(ThetaOfProducts, DiagonalOfThetaOfProductLiesInSquaredComponents) {
  std::mt19937_64 rng(47);
  auto r2 = xy();
  auto r3 = xyz();
  for (const Polynomial& f : {e12(r2), q10(r3), P(r2, "x^3*y + y^5 + x*y^4")})
    EXPECT_EQ(test::product_diagonal_failures(rng, f, 50), 0u) << f.to_string();
}

TEST(Soundness, LiftedBetaRowsDescendAndAreSymmetricModJacobian) {
  for (const char* id : {"E12", "Z11", "Q10", "W12"}) {
    auto cc = test::first_case(id, Route::Beta);
    SCOPED_TRACE(id);
    Hypersurface h(cc.f);
    PolyDerivationTuple rows;
    for (const auto& row : cc.beta) {
      auto lifted = lift_derivation(row, h);
      EXPECT_TRUE(check_descent(lifted, h));
      rows.push_back(PolyDerivation{lifted});
    }
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = i + 1; j < rows.size(); ++j) EXPECT_TRUE(h.tjurina()->contains(defect(rows, i, j)));
  }
}

TEST(WeightedComponentIdeal, OmitsOwnPartial) {
  auto r = xyz();
  Polynomial f = P(r, "x^3 + y^4 + y*z^2");
  auto id = weighted_component_ideal(f, 1);
  ASSERT_EQ(id.generators.size(), 3u);
  EXPECT_EQ(id.generators[0], P(r, "y"));
  EXPECT_EQ(id.generators[1], P(r, "3*x^2"));
  EXPECT_EQ(id.generators[2], P(r, "2*y*z"));
}
