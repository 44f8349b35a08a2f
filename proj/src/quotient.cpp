#include "nakai/quotient.hpp"

#include <algorithm>

namespace nakai {

Ideal::Ideal(std::vector<Polynomial> gens) {
  for (auto& g : gens) {
    if (g.ring()) ring = g.ring();
    if (!g.is_zero()) generators.push_back(std::move(g));
  }
}

Ideal ideal_ops(const Ideal& a, const Ideal& b, IdealOp op) {
  if (a.ring && b.ring && !a.ring->same_as(*b.ring)) throw RingMismatch("ideals live in different rings");
  std::vector<Polynomial> out;
  switch (op) {
    case IdealOp::Sum:
      out = a.generators;
      out.insert(out.end(), b.generators.begin(), b.generators.end());
      break;
    case IdealOp::Product:
      for (const auto& g : a.generators)
        for (const auto& h : b.generators) out.push_back(g * h);
      break;
    case IdealOp::Square:
      for (std::size_t i = 0; i < a.generators.size(); ++i)
        for (std::size_t j = i; j < a.generators.size(); ++j) out.push_back(a.generators[i] * a.generators[j]);
      break;
  }
  Ideal r(std::move(out));
  if (!r.ring) r.ring = a.ring ? a.ring : b.ring;
  return r;
}

namespace {

void enumerate(std::size_t i, std::size_t n, unsigned left, Monomial& m, std::vector<Monomial>& out) {
  if (i == n) {
    if (left == 0) out.push_back(m);
    return;
  }
  for (unsigned e = 0; e <= left; ++e) {
    m.set(i, e);
    enumerate(i + 1, n, left - e, m, out);
  }
  m.set(i, 0);
}

std::size_t count_standard(const GroebnerBasis& gb, std::size_t nvars, unsigned d) {
  std::size_t count = 0;
  for (const auto& m : monomials_below(nvars, d))
    if (gb.is_standard(m)) ++count;
  return count;
}

}  // namespace

std::vector<Monomial> monomials_below(std::size_t nvars, unsigned d) {
  std::vector<Monomial> out;
  for (unsigned k = 0; k < d; ++k) {
    Monomial m;
    enumerate(0, nvars, k, m, out);
  }
  std::sort(out.begin(), out.end(), DegRevLexLess());
  return out;
}

ArtinianQuotient::ArtinianQuotient(std::vector<Polynomial> gens, unsigned degree, GroebnerBasis basis)
    : gens_(std::move(gens)), degree_(degree), gb_(std::move(basis)) {
  for (const auto& m : monomials_below(gb_.ring->size(), degree_))
    if (gb_.is_standard(m)) {
      index_[m] = basis_.size();
      basis_.push_back(m);
    }
  zero_.assign(basis_.size(), Rational(0));
}

int ArtinianQuotient::basis_index(const Monomial& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : static_cast<int>(it->second);
}

const Vector& ArtinianQuotient::monomial_coords(const Monomial& m) const {
  if (m.degree() >= degree_) return zero_;
  auto it = nf_cache_.find(m);
  if (it != nf_cache_.end()) return it->second;
  Vector v(basis_.size());
  int idx = basis_index(m);
  if (idx >= 0) {
    v[static_cast<std::size_t>(idx)] = 1;
  } else {
    int k = gb_.find_divisor(m);
    const Polynomial& g = gb_.elements[static_cast<std::size_t>(k)];
    Monomial u = m / g.lm();
    Rational inv = -1 / g.lc();
    for (std::size_t t = 1; t < g.terms().size(); ++t) {
      const Term& term = g.terms()[t];
      const Vector& w = monomial_coords(u * term.m);
      Rational c = term.c * inv;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (w[i] != 0) v[i] += c * w[i];
    }
  }
  return nf_cache_.emplace(m, std::move(v)).first->second;
}

Vector ArtinianQuotient::coords(const Polynomial& p) const {
  if (p.ring() && !p.ring()->same_as(*ring())) throw RingMismatch("polynomial is not in the quotient's ring");
  Vector v(basis_.size());
  for (const auto& t : p.terms()) {
    if (t.m.degree() >= degree_) continue;
    const Vector& w = monomial_coords(t.m);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (w[i] != 0) v[i] += t.c * w[i];
  }
  return v;
}

Polynomial ArtinianQuotient::from_coords(const Vector& v) const {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) terms.push_back({basis_[i], v[i]});
  return Polynomial::from_terms(ring(), std::move(terms));
}

Polynomial ArtinianQuotient::reduce(const Polynomial& p) const { return from_coords(coords(p)); }

bool ArtinianQuotient::contains(const Polynomial& p) const { return is_zero_vector(coords(p)); }

Matrix ArtinianQuotient::multiplication_matrix(const Polynomial& p) const {
  std::size_t n = dimension();
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector col = coords(p.mul_term(basis_[j], 1));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return m;
}

QuotientPtr artinian_quotient(const std::vector<Polynomial>& gens_in, unsigned d_cap) {
  std::vector<Polynomial> gens;
  RingPtr ring;
  for (const auto& g : gens_in) {
    if (g.ring()) ring = g.ring();
    if (!g.is_zero()) gens.push_back(g);
  }
  if (!ring) throw Error("artinian_quotient needs at least one polynomial to fix the ring");
  std::size_t n = ring->size();
  auto basis_at = [&](unsigned D) {
    std::vector<Polynomial> g = gens;
    if (g.empty()) g.push_back(Polynomial(ring));
    return buchberger(g, {}, D);
  };
  GroebnerBasis prev = basis_at(1);
  std::size_t prev_dim = count_standard(prev, n, 1);
  for (unsigned D = 1; D <= d_cap; ++D) {
    GroebnerBasis next = basis_at(D + 1);
    std::size_t next_dim = count_standard(next, n, D + 1);
    if (next_dim == prev_dim) return std::make_shared<const ArtinianQuotient>(gens, D, std::move(prev));
    prev = std::move(next);
    prev_dim = next_dim;
  }
  throw NotFiniteColength("colength did not stabilize up to degree " + std::to_string(d_cap) +
                          " (ideal is not of finite colength at the origin, or the cap is too small)");
}

QuotientPtr artinian_quotient(const Ideal& ideal, unsigned d_cap) {
  if (ideal.generators.empty()) {
    if (!ideal.ring) throw Error("empty ideal without a ring");
    return artinian_quotient(std::vector<Polynomial>{Polynomial(ideal.ring)}, d_cap);
  }
  return artinian_quotient(ideal.generators, d_cap);
}

Coset::Coset(QuotientPtr parent, const Polynomial& p) : parent_(std::move(parent)), rep_(parent_->reduce(p)) {}

void Coset::check(const Coset& o) const {
  if (parent_ != o.parent_) throw RingMismatch("cosets belong to different quotients");
}

Coset Coset::operator+(const Coset& o) const {
  check(o);
  Coset r = *this;
  r.rep_ += o.rep_;
  return r;
}

Coset Coset::operator-(const Coset& o) const {
  check(o);
  Coset r = *this;
  r.rep_ -= o.rep_;
  return r;
}

Coset Coset::operator-() const {
  Coset r = *this;
  r.rep_ = -r.rep_;
  return r;
}

Coset Coset::operator*(const Coset& o) const {
  check(o);
  return Coset(parent_, rep_ * o.rep_);
}

Coset Coset::operator*(const Rational& c) const {
  Coset r = *this;
  r.rep_ *= c;
  return r;
}

Coset normal_form(const Polynomial& p, const QuotientPtr& q) { return Coset(q, p); }

bool contains(const Ideal& ideal, const Polynomial& p, unsigned d_cap) {
  auto q = artinian_quotient(ideal, d_cap);
  return q->contains(p);
}

bool is_unit(const Coset& c) { return c.rep().constant_term() != 0; }

std::vector<Polynomial> tjurina_generators(const Polynomial& f) {
  std::vector<Polynomial> g{f};
  for (auto& d : jacobian_ideal(f)) g.push_back(std::move(d));
  return g;
}

QuotientPtr tjurina_quotient(const Polynomial& f, unsigned d_cap) {
  return artinian_quotient(tjurina_generators(f), d_cap);
}

QuotientPtr milnor_quotient(const Polynomial& f, unsigned d_cap) {
  auto j = jacobian_ideal(f);
  if (j.empty()) throw Error("polynomial ring without variables");
  return artinian_quotient(j, d_cap);
}

std::size_t milnor_number(const Polynomial& f, unsigned d_cap) { return milnor_quotient(f, d_cap)->dimension(); }

std::size_t tjurina_number(const Polynomial& f, unsigned d_cap) { return tjurina_quotient(f, d_cap)->dimension(); }

QuotientIdeal::QuotientIdeal(QuotientPtr q, const std::vector<Polynomial>& gens)
    : q_(std::move(q)), span_(q_->dimension()) {
  for (const auto& g : gens) {
    Polynomial r = q_->reduce(g);
    if (r.is_zero()) continue;
    for (const auto& m : q_->basis()) {
      if (span_.dimension() == q_->dimension()) return;
      span_.add(q_->coords(r.mul_term(m, 1)));
    }
  }
}

bool QuotientIdeal::contains(const Polynomial& p) const { return span_.contains(q_->coords(p)); }

}  // namespace nakai
