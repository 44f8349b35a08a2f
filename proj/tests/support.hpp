#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "nakai/catalog.hpp"
#include "nakai/derivation.hpp"
#include "nakai/weyl.hpp"
#include "nakai/expr.hpp"
#include "nakai/polynomial.hpp"

namespace nakai::test {

inline Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(s, r); }

inline Rational small_rational(std::mt19937_64& rng, int span = 5) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, 3);
  return make_rational(num(rng), den(rng));
}

inline std::vector<Monomial> all_monomials(std::size_t n, unsigned max_deg) {
  std::vector<Monomial> out;
  std::vector<unsigned> e(n, 0);
  auto rec = [&](auto& self, std::size_t i, unsigned left) -> void {
    if (i == n) {
      Monomial m;
      for (std::size_t k = 0; k < n; ++k) m.set(k, e[k]);
      out.push_back(m);
      return;
    }
    for (unsigned d = 0; d <= left; ++d) {
      e[i] = d;
      self(self, i + 1, left - d);
    }
    e[i] = 0;
  };
  rec(rec, 0, max_deg);
  return out;
}

// Random polynomial with terms of degree in [min_deg, max_deg].
inline Polynomial random_polynomial(std::mt19937_64& rng, const RingPtr& r, unsigned min_deg, unsigned max_deg,
                                    std::size_t terms) {
  auto mons = all_monomials(r->size(), max_deg);
  std::vector<Monomial> pool;
  for (const auto& m : mons)
    if (m.degree() >= min_deg) pool.push_back(m);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::vector<Term> ts;
  for (std::size_t k = 0; k < terms; ++k) ts.push_back({pool[pick(rng)], small_rational(rng)});
  return Polynomial::from_terms(r, ts);
}

// Degree-bounded linear algebra model of Q[x]/(I + m^D): the span of all
// products m*g truncated below D, kept in echelon form with columns keyed by
// monomial exponent strings. Shares no code with the quotient engine.
class MacaulayOracle {
 public:
  MacaulayOracle(const std::vector<Polynomial>& gens, unsigned degree) : n_(gens.front().nvars()), d_(degree) {
    if (d_ == 0) return;
    auto mons = all_monomials(n_, d_ - 1);
    for (const auto& g : gens)
      for (const auto& m : mons) add(row_of(g.mul_term(m, 1)));
    monomials_ = mons.size();
  }

  std::size_t quotient_dimension() const { return monomials_ - rows_.size(); }

  bool contains(const Polynomial& p) const { return reduce(row_of(p)).empty(); }

 private:
  using Key = std::vector<unsigned>;
  using Row = std::map<Key, Rational>;

  Row row_of(const Polynomial& p) const {
    Row r;
    for (const auto& t : p.terms()) {
      if (t.m.degree() >= d_) continue;
      Key k(n_);
      for (std::size_t i = 0; i < n_; ++i) k[i] = t.m[i];
      r[k] += t.c;
    }
    for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
    return r;
  }

  Row reduce(Row r) const {
    for (auto it = r.begin(); it != r.end();) {
      auto piv = rows_.find(it->first);
      if (piv == rows_.end()) {
        ++it;
        continue;
      }
      Rational c = it->second;
      Key k = it->first;
      for (const auto& [key, v] : piv->second) {
        Rational& slot = r[key];
        slot -= c * v;
      }
      for (auto jt = r.begin(); jt != r.end();) jt = jt->second == 0 ? r.erase(jt) : std::next(jt);
      it = r.upper_bound(k);
    }
    return r;
  }

  void add(Row r) {
    r = reduce(std::move(r));
    if (r.empty()) return;
    Rational lead = r.begin()->second;
    for (auto& [k, v] : r) v /= lead;
    rows_.emplace(r.begin()->first, std::move(r));
  }

  std::size_t n_;
  unsigned d_;
  std::size_t monomials_ = 1;
  std::map<Key, Row> rows_;
};

struct RandomIdeal {
  RingPtr ring;
  std::vector<Polynomial> gens;
};

// One to three variables. Pure powers keep the colength finite; the other
// generators are arbitrary of degree <= 4.
inline RandomIdeal random_ideal(std::mt19937_64& rng) {
  static const std::vector<std::vector<std::string>> names{{"x"}, {"x", "y"}, {"x", "y", "z"}};
  std::discrete_distribution<std::size_t> nv({1, 2, 3});
  RandomIdeal out;
  out.ring = make_ring(names[nv(rng)]);
  std::size_t n = out.ring->size();
  std::uniform_int_distribution<unsigned> pw(2, 4);
  for (std::size_t i = 0; i < n; ++i) out.gens.push_back(Polynomial::term(out.ring, Monomial::var(i, pw(rng)), 1));
  std::uniform_int_distribution<std::size_t> extra(1, 3);
  std::uniform_int_distribution<std::size_t> terms(1, 4);
  std::uniform_int_distribution<unsigned> low(1, 2);
  for (std::size_t k = extra(rng); k > 0; --k)
    out.gens.push_back(random_polynomial(rng, out.ring, low(rng), 4, terms(rng)));
  return out;
}

inline Derivation random_combination(std::mt19937_64& rng, const std::vector<Derivation>& basis) {
  Derivation out = Derivation::zero(basis.front().parent);
  for (const auto& b : basis) {
    Rational c = small_rational(rng, 3);
    for (std::size_t s = 0; s < out.nvars(); ++s) out.coeffs[s] += b.coeffs[s] * c;
  }
  for (auto& c : out.coeffs) c = out.parent->reduce(c);
  return out;
}

// theta_2 of D1 D2 for kernel elements D1, D2, followed by J(f)-multiples
// added above the diagonal.
inline PolyDerivationTuple perturbed_theta(std::mt19937_64& rng, const Hypersurface& h,
                                           const std::vector<Derivation>& kernel) {
  auto d1 = random_combination(rng, kernel);
  auto d2 = random_combination(rng, kernel);
  auto prod = compose(DiffOperator::from_derivation(d1), DiffOperator::from_derivation(d2));
  auto t = theta2(prod, h.tjurina()->generators());
  PolyDerivationTuple out;
  for (const auto& d : t) out.push_back(PolyDerivation{d.coeffs});
  std::size_t n = h.nvars();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (const auto& fx : h.jacobian()) out[i].coeffs[j] += random_polynomial(rng, h.ring(), 0, 2, 2) * fx;
  return out;
}

// Membership of theta_2(D1 D2)_i(x_i) in K_i^2 + (f) + J(f) for random kernel
// pairs; also checks the product formula for every component. Returns the
// number of failing pairs.
inline std::size_t product_diagonal_failures(std::mt19937_64& rng, const Polynomial& f, std::size_t pairs) {
  auto q = tjurina_quotient(f);
  auto gens = tjurina_generators(f);
  auto kernel = hess_kernel(q, f);
  if (kernel.empty()) return 0;
  Ideal base(gens);
  std::size_t n = f.nvars();
  std::vector<QuotientIdeal> squares;
  for (std::size_t i = 0; i < n; ++i) {
    auto k = component_ideal(kernel, i, base);
    std::vector<Polynomial> prods;
    for (const auto& a : k.generators)
      for (const auto& b : k.generators) prods.push_back(a * b);
    squares.emplace_back(q, prods);
  }
  std::size_t failures = 0;
  for (std::size_t pair = 0; pair < pairs; ++pair) {
    auto d1 = random_combination(rng, kernel);
    auto d2 = random_combination(rng, kernel);
    auto t = theta2(compose(DiffOperator::from_derivation(d1), DiffOperator::from_derivation(d2)), gens);
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Polynomial expect = d1.coeffs[i] * d2.coeffs[j] + d1.coeffs[j] * d2.coeffs[i];
        if (!q->contains(t[i].coeffs[j] - expect)) ok = false;
      }
      if (!squares[i].contains(t[i].coeffs[i])) ok = false;
    }
    failures += !ok;
  }
  return failures;
}

struct SmallAlgebra {
  std::string name;
  QuotientPtr q;
  std::vector<Polynomial> gens;
};

inline SmallAlgebra small_algebra(const std::string& name, std::vector<std::string> vars,
                                  const std::vector<std::string>& gens) {
  auto r = make_ring(std::move(vars));
  std::vector<Polynomial> g;
  for (const auto& s : gens) g.push_back(P(r, s));
  return {name, artinian_quotient(g), g};
}

// The D5 Tjurina algebra first, then three further local algebras.
inline std::vector<SmallAlgebra> small_algebras() {
  return {small_algebra("D5 Tjurina", {"x", "y"}, {"4*x^3 + y^2", "x*y"}),
          small_algebra("x^3", {"x"}, {"x^3"}),
          small_algebra("x^2, y^2", {"x", "y"}, {"x^2", "y^2"}),
          small_algebra("x^2 + y^3, xy", {"x", "y"}, {"x^2 + y^3", "x*y"})};
}

// ker(theta_2) on Der^2 equals Der^1, compared as spans of operator matrices.
inline bool theta2_exact(const SmallAlgebra& a) {
  auto der2 = solve_der_m(a.q, a.gens, 2);
  std::size_t n = a.q->ring()->size();
  Matrix theta(n * a.q->dimension() * n, der2.size());
  for (std::size_t k = 0; k < der2.size(); ++k) {
    auto t = theta2(der2[k], a.gens);
    std::size_t row = 0;
    for (const auto& d : t)
      for (const auto& c : d.coords()) theta(row++, k) = c;
  }
  std::vector<Matrix> kernel_ops;
  for (const auto& v : theta.nullspace()) {
    DiffOperator d(a.q, 2);
    for (std::size_t k = 0; k < der2.size(); ++k)
      if (v[k] != 0) d = d + der2[k] * v[k];
    kernel_ops.push_back(operator_matrix(d));
  }
  auto ker = matrix_span(a.q, kernel_ops);
  auto der1 = der_m_span(a.q, a.gens, 1);
  return ker.span.contains_subspace(der1.span) && der1.span.contains_subspace(ker.span);
}

inline const std::vector<CaseSpec>& catalog() {
  static const std::vector<CaseSpec> c = load_catalog();
  return c;
}

// Every (case, branch, structural value) point in range, one specialization
// per trial.
inline std::vector<ConcreteCase> concrete_cases(std::size_t trials = 1, StructuralRange range = {2, 2},
                                                std::uint64_t seed = 0, bool use_printed = false) {
  std::vector<ConcreteCase> out;
  for (const auto& c : catalog()) {
    std::vector<std::map<std::string, long>> points;
    if (c.structural) {
      for (long v : structural_values(c, range)) points.push_back({{c.structural->name, v}});
    } else {
      points.push_back({});
    }
    for (const auto& pt : points)
      for (std::size_t b : expand_family(c, pt))
        for (std::size_t t = 0; t < trials; ++t)
          out.push_back(instantiate(c, specialize_case(c, b, pt, seed, t), use_printed));
  }
  return out;
}

inline ConcreteCase first_case(const std::string& id, Route route) {
  for (auto& cc : concrete_cases())
    if (cc.spec->id == id && cc.route == route) return cc;
  throw Error("no such case " + id);
}

}  // namespace nakai::test
