#include "nakai/derivation.hpp"

#include <algorithm>

namespace nakai {

Derivation::Derivation(QuotientPtr q, std::vector<Polynomial> c) : parent(std::move(q)), coeffs(std::move(c)) {
  for (auto& p : coeffs) p = parent->reduce(p);
}

Derivation Derivation::zero(const QuotientPtr& q) {
  return Derivation(q, std::vector<Polynomial>(q->ring()->size(), Polynomial(q->ring())));
}

Coset Derivation::apply(const Polynomial& p) const {
  Polynomial acc(parent->ring());
  for (std::size_t s = 0; s < coeffs.size(); ++s) acc += coeffs[s] * partial_derivative(p, s);
  return Coset(parent, acc);
}

Vector Derivation::coords() const {
  std::size_t n = coeffs.size();
  std::size_t dim = parent->dimension();
  Vector v(dim * n);
  for (std::size_t s = 0; s < n; ++s) {
    Vector c = parent->coords(coeffs[s]);
    for (std::size_t b = 0; b < dim; ++b) v[b * n + s] = c[b];
  }
  return v;
}

bool Derivation::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Polynomial& p) { return p.is_zero(); });
}

Polynomial PolyDerivation::apply(const Polynomial& p) const {
  Polynomial acc(p.ring());
  for (std::size_t s = 0; s < coeffs.size(); ++s) acc += coeffs[s] * partial_derivative(p, s);
  return acc;
}

Derivation PolyDerivation::on(const QuotientPtr& q) const { return Derivation(q, coeffs); }

PolyDerivation PolyDerivation::operator+(const PolyDerivation& o) const {
  PolyDerivation r = *this;
  for (std::size_t s = 0; s < coeffs.size(); ++s) r.coeffs[s] += o.coeffs[s];
  return r;
}

PolyDerivation PolyDerivation::operator-(const PolyDerivation& o) const {
  PolyDerivation r = *this;
  for (std::size_t s = 0; s < coeffs.size(); ++s) r.coeffs[s] -= o.coeffs[s];
  return r;
}

PolyDerivation PolyDerivation::scaled(const Polynomial& c) const {
  PolyDerivation r = *this;
  for (auto& p : r.coeffs) p = c * p;
  return r;
}

namespace {

Derivation from_coords(const QuotientPtr& q, const Vector& v) {
  std::size_t n = q->ring()->size();
  std::size_t dim = q->dimension();
  std::vector<Polynomial> coeffs;
  for (std::size_t s = 0; s < n; ++s) {
    Vector c(dim);
    for (std::size_t b = 0; b < dim; ++b) c[b] = v[b * n + s];
    coeffs.push_back(q->from_coords(c));
  }
  Derivation d;
  d.parent = q;
  d.coeffs = std::move(coeffs);
  return d;
}

}  // namespace

std::vector<Derivation> der1_kernel(const QuotientPtr& q, const std::vector<Polynomial>& gens) {
  std::size_t n = q->ring()->size();
  std::size_t dim = q->dimension();
  std::vector<std::vector<Polynomial>> partials;
  for (const auto& g : gens) {
    std::vector<Polynomial> row;
    for (std::size_t s = 0; s < n; ++s) row.push_back(partial_derivative(g, s));
    partials.push_back(std::move(row));
  }
  Matrix m(gens.size() * dim, dim * n);
  for (std::size_t b = 0; b < dim; ++b)
    for (std::size_t s = 0; s < n; ++s) {
      std::size_t col = b * n + s;
      for (std::size_t j = 0; j < gens.size(); ++j) {
        Vector c = q->coords(partials[j][s].mul_term(q->basis()[b], 1));
        for (std::size_t r = 0; r < dim; ++r) m(j * dim + r, col) = c[r];
      }
    }
  std::vector<Derivation> out;
  for (const auto& v : m.nullspace()) out.push_back(from_coords(q, v));
  return out;
}

std::vector<Derivation> hess_kernel(const QuotientPtr& q, const Polynomial& f) {
  return der1_kernel(q, tjurina_generators(f));
}

std::size_t span_dimension(const QuotientPtr& q, const std::vector<std::vector<Polynomial>>& vectors) {
  std::size_t n = q->ring()->size();
  Subspace s(q->dimension() * n);
  for (const auto& v : vectors) s.add(Derivation(q, v).coords());
  return s.dimension();
}

ComponentIdeal component_ideal(const std::vector<Derivation>& kernel, std::size_t i, const Ideal& base) {
  ComponentIdeal c;
  c.index = i;
  for (const auto& d : kernel)
    if (!d.coeffs[i].is_zero()) c.generators.push_back(d.coeffs[i]);
  std::vector<Polynomial> all = c.generators;
  all.insert(all.end(), base.generators.begin(), base.generators.end());
  c.ideal = Ideal(std::move(all));
  if (!c.ideal.ring) c.ideal.ring = base.ring;
  return c;
}

Hypersurface::Hypersurface(Polynomial f, unsigned d_cap)
    : f_(std::move(f)), d_cap_(d_cap), jac_(jacobian_ideal(f_)), tjurina_(tjurina_quotient(f_, d_cap)) {
  n_ = tjurina_->truncation_degree() + 1;
  principal_ = buchberger({f_}, {}, n_);
}

bool Hypersurface::in_principal(const Polynomial& p) const { return reduce(p, principal_).is_zero(); }

std::optional<std::vector<Polynomial>> Hypersurface::divide_by_tjurina(const Polynomial& p) const {
  std::vector<Polynomial> divisors{f_};
  divisors.insert(divisors.end(), jac_.begin(), jac_.end());
  if (!tjurina_cof_) tjurina_cof_ = buchberger(divisors, {}, n_, true);
  Division d = extended_divide(p, divisors, *tjurina_cof_);
  if (!d.remainder.is_zero()) return std::nullopt;
  return d.cofactors;
}

const QuotientPtr& Hypersurface::f_jac_squared_quotient() const {
  if (!squared_q_) {
    std::vector<Polynomial> gens{f_};
    for (std::size_t i = 0; i < jac_.size(); ++i)
      for (std::size_t j = i; j < jac_.size(); ++j) gens.push_back(jac_[i] * jac_[j]);
    squared_q_ = artinian_quotient(gens, d_cap_);
  }
  return squared_q_;
}

std::optional<std::vector<Polynomial>> Hypersurface::divide_by_f_jac_squared(const Polynomial& p) const {
  std::vector<Polynomial> divisors{f_};
  for (std::size_t i = 0; i < jac_.size(); ++i)
    for (std::size_t j = i; j < jac_.size(); ++j) divisors.push_back(jac_[i] * jac_[j]);
  if (!squared_cof_) {
    unsigned t = std::max(n_, f_jac_squared_quotient()->truncation_degree());
    squared_cof_ = buchberger(divisors, {}, t, true);
  }
  Division d = extended_divide(p, divisors, *squared_cof_);
  if (!d.remainder.is_zero()) return std::nullopt;
  return d.cofactors;
}

PolyDerivation hamiltonian(const Polynomial& f, std::size_t i, std::size_t j) {
  PolyDerivation d;
  d.coeffs.assign(f.nvars(), Polynomial(f.ring()));
  d.coeffs[j] = partial_derivative(f, i);
  d.coeffs[i] = -partial_derivative(f, j);
  return d;
}

std::vector<PolyDerivation> euler_hamiltonian(const Polynomial& f, const WeightVector& w) {
  if (w.weights.size() != f.nvars()) throw PreconditionError("weight vector length differs from the variable count");
  if (!weighted_degree_check(f, w)) throw PreconditionError("polynomial is not weighted homogeneous for the weights");
  std::vector<PolyDerivation> out;
  PolyDerivation e;
  for (std::size_t s = 0; s < f.nvars(); ++s) {
    Monomial m = Monomial::var(s);
    e.coeffs.push_back(Polynomial::term(f.ring(), m, w.weights[s] / w.target));
  }
  out.push_back(std::move(e));
  for (std::size_t i = 0; i < f.nvars(); ++i)
    for (std::size_t j = i + 1; j < f.nvars(); ++j) out.push_back(hamiltonian(f, i, j));
  return out;
}

bool check_descent(const std::vector<Polynomial>& coeffs, const Hypersurface& h) {
  PolyDerivation d{coeffs};
  if (!h.in_principal(d.apply(h.f()))) throw NotADerivation("the derivation does not preserve (f)");
  for (const auto& fx : h.jacobian())
    if (!h.tjurina()->contains(d.apply(fx))) return false;
  return true;
}

bool check_descent(const std::vector<Polynomial>& coeffs, const Polynomial& f) {
  return check_descent(coeffs, Hypersurface(f));
}

std::vector<Polynomial> lift_derivation(const std::vector<Polynomial>& coeffs, const Hypersurface& h) {
  PolyDerivation d{coeffs};
  Polynomial df = d.apply(h.f());
  if (!h.f_jac_squared_quotient()->contains(df)) throw NotLiftable("D(f) is not in (f) + J(f)^2");
  auto cof = h.divide_by_f_jac_squared(df);
  if (!cof) throw NotLiftable("D(f) is not in (f) + J(f)^2 modulo the truncation");
  std::size_t n = h.nvars();
  std::vector<Polynomial> g(n, Polynomial(h.ring()));
  std::size_t k = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) g[i] += (*cof)[k++] * h.jacobian()[j];
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(coeffs[i] - g[i]);
  if (!h.in_principal(PolyDerivation{out}.apply(h.f())))
    throw Error("internal error: lifted derivation does not preserve (f)");
  return out;
}

std::vector<Polynomial> lift_derivation(const std::vector<Polynomial>& coeffs, const Polynomial& f) {
  return lift_derivation(coeffs, Hypersurface(f));
}

Polynomial defect(const PolyDerivationTuple& t, std::size_t i, std::size_t j) {
  return t[i].coeffs[j] - t[j].coeffs[i];
}

PolyDerivationTuple apply_pij(const PolyDerivationTuple& t, std::size_t i, std::size_t j, const Hypersurface& h) {
  auto cof = h.divide_by_tjurina(defect(t, i, j));
  if (!cof) throw NotInJacobianIdeal("defect d_i(x_j) - d_j(x_i) is not in (f) + J(f)");
  // cof[0] multiplies f, cof[1 + s] multiplies f_xs.
  const std::size_t n = h.nvars();
  PolyDerivationTuple out = t;
  auto c = [&](std::size_t s) -> const Polynomial& { return (*cof)[1 + s]; };
  out[i] = out[i] - hamiltonian(h.f(), i, j).scaled(c(i));
  out[j] = out[j] - hamiltonian(h.f(), i, j).scaled(c(j));
  Rational half(1, 2);
  for (std::size_t s = 0; s < n; ++s) {
    if (s == i || s == j || c(s).is_zero()) continue;
    Polynomial hc = c(s) * half;
    out[i] = out[i] - hamiltonian(h.f(), s, j).scaled(hc);
    out[j] = out[j] + hamiltonian(h.f(), s, i).scaled(hc);
    out[s] = out[s] - hamiltonian(h.f(), i, j).scaled(hc);
  }
  return out;
}

PolyDerivationTuple symmetrize_tuple(const PolyDerivationTuple& t, const Hypersurface& h) {
  PolyDerivationTuple out = t;
  for (std::size_t i = 0; i < h.nvars(); ++i)
    for (std::size_t j = i + 1; j < h.nvars(); ++j)
      if (!h.in_principal(defect(out, i, j))) out = apply_pij(out, i, j, h);
  return out;
}

DerivationTuple symmetrize_tuple(const DerivationTuple& t, const Polynomial& f) {
  Hypersurface h(f);
  PolyDerivationTuple p;
  for (const auto& d : t) p.push_back(PolyDerivation{d.coeffs});
  DerivationTuple out;
  for (const auto& d : symmetrize_tuple(p, h)) out.push_back(d.on(h.tjurina()));
  return out;
}

bool symmetric_mod_f(const PolyDerivationTuple& t, const Hypersurface& h) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (!h.in_principal(defect(t, i, j))) return false;
  return true;
}

Ideal weighted_component_ideal(const Polynomial& f, std::size_t i) {
  std::vector<Polynomial> gens{Polynomial::variable(f.ring(), i)};
  auto jac = jacobian_ideal(f);
  for (std::size_t j = 0; j < jac.size(); ++j)
    if (j != i) gens.push_back(jac[j]);
  Ideal r(std::move(gens));
  r.ring = f.ring();
  return r;
}

}  // namespace nakai
