#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "nakai/groebner.hpp"
#include "nakai/linalg.hpp"
#include "nakai/polynomial.hpp"

namespace nakai {

constexpr unsigned kDefaultDCap = 30;

struct Ideal {
  RingPtr ring;
  std::vector<Polynomial> generators;

  Ideal() = default;
  explicit Ideal(std::vector<Polynomial> gens);
};

enum class IdealOp { Sum, Product, Square };
Ideal ideal_ops(const Ideal& a, const Ideal& b, IdealOp op);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

class ArtinianQuotient;
using QuotientPtr = std::shared_ptr<const ArtinianQuotient>;

// Q[x] / (I + m^D) at a degree D where the local colength has stabilized.
class ArtinianQuotient {
 public:
  ArtinianQuotient(std::vector<Polynomial> gens, unsigned degree, GroebnerBasis basis);

  const RingPtr& ring() const { return gb_.ring; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  unsigned truncation_degree() const { return degree_; }
  const GroebnerBasis& groebner_basis() const { return gb_; }
  // Standard monomials, degrevlex ascending.
  const std::vector<Monomial>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }
  // -1 when m is not a standard monomial.
  int basis_index(const Monomial& m) const;

  Vector coords(const Polynomial& p) const;
  Polynomial from_coords(const Vector& v) const;
  Polynomial reduce(const Polynomial& p) const;
  bool contains(const Polynomial& p) const;
  // Matrix of a -> NF(p * a) on the standard basis.
  Matrix multiplication_matrix(const Polynomial& p) const;

 private:
  const Vector& monomial_coords(const Monomial& m) const;

  std::vector<Polynomial> gens_;
  unsigned degree_;
  GroebnerBasis gb_;
  std::vector<Monomial> basis_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
  mutable std::unordered_map<Monomial, Vector, MonomialHash> nf_cache_;
  Vector zero_;
};

// Least D <= d_cap with dim P/(I + m^D) == dim P/(I + m^{D+1}).
QuotientPtr artinian_quotient(const std::vector<Polynomial>& gens, unsigned d_cap = kDefaultDCap);
QuotientPtr artinian_quotient(const Ideal& ideal, unsigned d_cap = kDefaultDCap);

class Coset {
 public:
  Coset() = default;
  Coset(QuotientPtr parent, const Polynomial& p);

  const Polynomial& rep() const { return rep_; }
  const QuotientPtr& parent() const { return parent_; }
  bool is_zero() const { return rep_.is_zero(); }
  Vector coords() const { return parent_->coords(rep_); }

  Coset operator+(const Coset& o) const;
  Coset operator-(const Coset& o) const;
  Coset operator-() const;
  Coset operator*(const Coset& o) const;
  Coset operator*(const Rational& c) const;
  bool operator==(const Coset& o) const { return rep_ == o.rep_; }
  bool operator!=(const Coset& o) const { return !(*this == o); }

 private:
  void check(const Coset& o) const;
  QuotientPtr parent_;
  Polynomial rep_;
};

Coset normal_form(const Polynomial& p, const QuotientPtr& q);
bool contains(const Ideal& ideal, const Polynomial& p, unsigned d_cap = kDefaultDCap);
bool is_unit(const Coset& c);

std::vector<Polynomial> tjurina_generators(const Polynomial& f);
QuotientPtr tjurina_quotient(const Polynomial& f, unsigned d_cap = kDefaultDCap);
QuotientPtr milnor_quotient(const Polynomial& f, unsigned d_cap = kDefaultDCap);
std::size_t milnor_number(const Polynomial& f, unsigned d_cap = kDefaultDCap);
std::size_t tjurina_number(const Polynomial& f, unsigned d_cap = kDefaultDCap);

// All monomials of total degree < d, degrevlex ascending.
std::vector<Monomial> monomials_below(std::size_t nvars, unsigned d);

// Ideal of a quotient ring R given by generators, held as a Q-subspace of R.
class QuotientIdeal {
 public:
  QuotientIdeal(QuotientPtr q, const std::vector<Polynomial>& gens);
  bool contains(const Polynomial& p) const;
  std::size_t codimension() const { return q_->dimension() - span_.dimension(); }

 private:
  QuotientPtr q_;
  Subspace span_;
};

}  // namespace nakai
