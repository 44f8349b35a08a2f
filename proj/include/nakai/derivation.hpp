#pragma once

#include <optional>
#include <vector>

#include "nakai/groebner.hpp"
#include "nakai/quotient.hpp"

namespace nakai {

// First-order derivation sum_s coeffs[s] * d/dx_s with coefficients in a quotient.
struct Derivation {
  QuotientPtr parent;
  std::vector<Polynomial> coeffs;  // normal-form representatives

  Derivation() = default;
  Derivation(QuotientPtr q, std::vector<Polynomial> c);
  static Derivation zero(const QuotientPtr& q);

  std::size_t nvars() const { return coeffs.size(); }
  Coset coefficient(std::size_t s) const { return Coset(parent, coeffs[s]); }
  Coset apply(const Polynomial& p) const;
  Vector coords() const;
  bool is_zero() const;
};

using DerivationTuple = std::vector<Derivation>;

// Derivation with polynomial coefficients, used where reasoning happens in the
// power-series ring rather than a finite quotient.
struct PolyDerivation {
  std::vector<Polynomial> coeffs;

  Polynomial apply(const Polynomial& p) const;
  Derivation on(const QuotientPtr& q) const;
  PolyDerivation operator+(const PolyDerivation& o) const;
  PolyDerivation operator-(const PolyDerivation& o) const;
  PolyDerivation scaled(const Polynomial& c) const;
};

using PolyDerivationTuple = std::vector<PolyDerivation>;

// Kernel of alpha -> (sum_s alpha_s dg_j/dx_s)_j on q^n, as an RREF basis with
// coordinates ordered (quotient basis index, variable index).
std::vector<Derivation> der1_kernel(const QuotientPtr& q, const std::vector<Polynomial>& gens);
std::vector<Derivation> hess_kernel(const QuotientPtr& q, const Polynomial& f);

// Dimension of the span of the given coefficient vectors inside q^n.
std::size_t span_dimension(const QuotientPtr& q, const std::vector<std::vector<Polynomial>>& vectors);

struct ComponentIdeal {
  std::size_t index = 0;
  std::vector<Polynomial> generators;  // i-th components of the kernel basis
  Ideal ideal;                         // generators plus the base ideal
};

ComponentIdeal component_ideal(const std::vector<Derivation>& kernel, std::size_t i, const Ideal& base);

// Data shared by the operations that reason modulo (f) in the local ring.
// Membership in (f) is decided in (f) + m^N with N one more than the degree at
// which the Tjurina algebra stabilizes; m^{N-1} already lies in (f, J(f)).
class Hypersurface {
 public:
  explicit Hypersurface(Polynomial f, unsigned d_cap = kDefaultDCap);

  const Polynomial& f() const { return f_; }
  const RingPtr& ring() const { return f_.ring(); }
  std::size_t nvars() const { return f_.nvars(); }
  const std::vector<Polynomial>& jacobian() const { return jac_; }
  const QuotientPtr& tjurina() const { return tjurina_; }
  unsigned membership_degree() const { return n_; }

  bool in_principal(const Polynomial& p) const;
  // Cofactors of p with respect to [f, f_x1, ..., f_xn] modulo m^N; empty when
  // p is not in (f) + J(f) + m^N.
  std::optional<std::vector<Polynomial>> divide_by_tjurina(const Polynomial& p) const;
  // Cofactors of p with respect to [f] followed by f_xi f_xj (i <= j).
  std::optional<std::vector<Polynomial>> divide_by_f_jac_squared(const Polynomial& p) const;
  const QuotientPtr& f_jac_squared_quotient() const;

 private:
  Polynomial f_;
  unsigned d_cap_;
  std::vector<Polynomial> jac_;
  QuotientPtr tjurina_;
  unsigned n_;
  GroebnerBasis principal_;
  mutable std::optional<GroebnerBasis> tjurina_cof_;
  mutable std::optional<GroebnerBasis> squared_cof_;
  mutable QuotientPtr squared_q_;
};

// Euler derivation followed by D_ij = f_xi d/dx_j - f_xj d/dx_i for i < j.
std::vector<PolyDerivation> euler_hamiltonian(const Polynomial& f, const WeightVector& w);
PolyDerivation hamiltonian(const Polynomial& f, std::size_t i, std::size_t j);

bool check_descent(const std::vector<Polynomial>& coeffs, const Hypersurface& h);
bool check_descent(const std::vector<Polynomial>& coeffs, const Polynomial& f);

std::vector<Polynomial> lift_derivation(const std::vector<Polynomial>& coeffs, const Hypersurface& h);
std::vector<Polynomial> lift_derivation(const std::vector<Polynomial>& coeffs, const Polynomial& f);

// d_i(x_j) - d_j(x_i)
Polynomial defect(const PolyDerivationTuple& t, std::size_t i, std::size_t j);
// One P_ij step; throws NotInJacobianIdeal when the (i,j) defect is not in (f) + J(f).
PolyDerivationTuple apply_pij(const PolyDerivationTuple& t, std::size_t i, std::size_t j, const Hypersurface& h);
PolyDerivationTuple symmetrize_tuple(const PolyDerivationTuple& t, const Hypersurface& h);
DerivationTuple symmetrize_tuple(const DerivationTuple& t, const Polynomial& f);
// True when every defect lies in (f) (checked modulo m^N).
bool symmetric_mod_f(const PolyDerivationTuple& t, const Hypersurface& h);

// (x_i, f_x1, ..., omit f_xi, ..., f_xn): the ideal I_i for weighted homogeneous f.
Ideal weighted_component_ideal(const Polynomial& f, std::size_t i);

}  // namespace nakai
