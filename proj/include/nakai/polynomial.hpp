#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "nakai/errors.hpp"

namespace nakai {

using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
std::string to_string(const Rational& r);

constexpr std::size_t kMaxVars = 8;

// Exponent vector; slots past the ring's variable count stay zero.
class Monomial {
 public:
  Monomial() { e_.fill(0); }
  Monomial(std::initializer_list<unsigned> exps);

  static Monomial var(std::size_t i, unsigned e = 1);

  unsigned operator[](std::size_t i) const { return e_[i]; }
  void set(std::size_t i, unsigned e);
  unsigned degree() const { return deg_; }

  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  // Requires divisor | *this.
  Monomial operator/(const Monomial& divisor) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  std::size_t hash() const;

 private:
  std::array<std::uint16_t, kMaxVars> e_;
  std::uint32_t deg_ = 0;
};

// degrevlex with x_1 > x_2 > ... > x_n; returns <0, 0, >0.
int degrevlex_cmp(const Monomial& a, const Monomial& b);

struct DegRevLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return degrevlex_cmp(a, b) > 0; }
};

struct DegRevLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return degrevlex_cmp(a, b) < 0; }
};

// The single monomial order supported; kept as a type so call sites name it.
struct MonomialOrder {
  enum class Kind { DegRevLex };
  Kind kind = Kind::DegRevLex;
};

class Ring {
 public:
  explicit Ring(std::vector<std::string> names);
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  // -1 when absent.
  int index_of(const std::string& name) const;
  bool same_as(const Ring& other) const { return this == &other || names_ == other.names_; }

 private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names);

struct Term {
  Monomial m;
  Rational c;
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, std::size_t i);
  static Polynomial term(RingPtr ring, const Monomial& m, const Rational& c);
  // Terms may be unsorted and contain duplicates or zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  std::size_t nvars() const { return ring_ ? ring_->size() : 0; }
  // Sorted by degrevlex, largest first.
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const Term& lead() const { return terms_.front(); }
  const Monomial& lm() const { return terms_.front().m; }
  const Rational& lc() const { return terms_.front().c; }
  // -1 for the zero polynomial.
  int degree() const;
  // Smallest total degree of a term; -1 for zero.
  int min_degree() const;
  Rational coeff(const Monomial& m) const;
  Rational constant_term() const { return coeff(Monomial()); }

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  // *this += c * m * p
  void add_scaled(const Polynomial& p, const Rational& c, const Monomial& m);
  Polynomial mul_term(const Monomial& m, const Rational& c) const;
  // Drops every term of total degree >= deg.
  Polynomial truncated(unsigned deg) const;
  Polynomial monic() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void check_ring(const Polynomial& o) const;
  RingPtr ring_;
  std::vector<Term> terms_;
};

Polynomial pow(const Polynomial& p, unsigned k);

Polynomial partial_derivative(const Polynomial& p, std::size_t i);
std::vector<Polynomial> jacobian_ideal(const Polynomial& f);
std::vector<std::vector<Polynomial>> hessian(const Polynomial& f);

// Substitutes the bound names and moves the result into target. Every variable
// of p that is not a variable of target must be bound.
Polynomial specialize(const Polynomial& p, const std::map<std::string, Rational>& bindings,
                      const RingPtr& target);

// Re-expresses p over a ring whose names include all variables occurring in p.
Polynomial change_ring(const Polynomial& p, const RingPtr& target);

struct WeightVector {
  std::vector<Rational> weights;
  Rational target = 1;
};

bool weighted_degree_check(const Polynomial& f, const WeightVector& w);

std::string monomial_to_string(const Monomial& m, const Ring& ring);

}  // namespace nakai
