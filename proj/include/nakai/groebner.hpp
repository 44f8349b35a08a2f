#pragma once

#include <vector>

#include "nakai/polynomial.hpp"

namespace nakai {

struct GroebnerBasis {
  RingPtr ring;
  MonomialOrder order;
  bool reduced = false;
  // 0 means none; otherwise every monomial of degree >= truncation lies in the
  // ideal and the basis contains the minimal such monomials explicitly.
  unsigned truncation = 0;
  std::vector<Polynomial> elements;
  // When tracked: elements[k] == sum_j cofactors[k][j] * divisors[j], modulo
  // terms of degree >= truncation.
  bool tracks_cofactors = false;
  std::vector<Polynomial> divisors;
  std::vector<std::vector<Polynomial>> cofactors;

  // Index of an element whose leading monomial divides m, or -1.
  int find_divisor(const Monomial& m) const;
  bool is_standard(const Monomial& m) const { return find_divisor(m) < 0; }
};

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, MonomialOrder order = {}, unsigned truncation = 0,
                         bool track_cofactors = false);

// Full normal form with respect to a Groebner basis.
Polynomial reduce(const Polynomial& p, const GroebnerBasis& basis);

struct Division {
  std::vector<Polynomial> cofactors;
  Polynomial remainder;
};

// p == sum cofactors[j] * divisors[j] + remainder (modulo m^truncation when the
// basis is truncated). The basis must track cofactors against the same divisors.
Division extended_divide(const Polynomial& p, const std::vector<Polynomial>& divisors, const GroebnerBasis& basis);

// True when p - sum c_j d_j - r has no term of degree below the truncation.
bool verify_division(const Polynomial& p, const std::vector<Polynomial>& divisors, const Division& d,
                     unsigned truncation);

}  // namespace nakai
