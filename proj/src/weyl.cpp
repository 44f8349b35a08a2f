#include "nakai/weyl.hpp"

#include <algorithm>

namespace nakai {

bool MultiIndexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

namespace {

void enumerate(std::size_t i, std::size_t n, unsigned left, MultiIndex& m, std::vector<MultiIndex>& out) {
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

bool leq(const MultiIndex& a, const MultiIndex& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

}  // namespace

std::vector<MultiIndex> multi_indices(std::size_t n, unsigned m, bool include_zero) {
  std::vector<MultiIndex> out;
  for (unsigned k = include_zero ? 0 : 1; k <= m; ++k) {
    MultiIndex a;
    enumerate(0, n, k, a, out);
  }
  std::sort(out.begin(), out.end(), MultiIndexLess());
  return out;
}

Rational multi_binomial(const MultiIndex& beta, const MultiIndex& alpha) {
  Rational r = 1;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (alpha[i] > beta[i]) return 0;
    if (alpha[i]) r *= binomial(beta[i], alpha[i]);
  }
  return r;
}

Polynomial divided_derivative(const Polynomial& p, const MultiIndex& alpha) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    if (!leq(alpha, t.m)) continue;
    out.push_back({t.m / alpha, t.c * multi_binomial(t.m, alpha)});
  }
  return Polynomial::from_terms(p.ring(), std::move(out));
}

DiffOperator DiffOperator::multiplication(const QuotientPtr& q, const Polynomial& p) {
  DiffOperator d(q, 0);
  d.add_term(MultiIndex(), p);
  return d;
}

DiffOperator DiffOperator::from_derivation(const Derivation& der) {
  DiffOperator d(der.parent, 1);
  for (std::size_t s = 0; s < der.coeffs.size(); ++s) d.add_term(MultiIndex::var(s), der.coeffs[s]);
  return d;
}

DiffOperator DiffOperator::from_terms(const QuotientPtr& q,
                                      const std::vector<std::pair<MultiIndex, Polynomial>>& terms) {
  unsigned order = 0;
  for (const auto& t : terms) order = std::max(order, t.first.degree());
  DiffOperator d(q, order);
  for (const auto& t : terms) d.add_term(t.first, t.second);
  return d;
}

Polynomial DiffOperator::coefficient(const MultiIndex& alpha) const {
  auto it = c_.find(alpha);
  return it == c_.end() ? Polynomial(q_->ring()) : it->second;
}

void DiffOperator::add_term(const MultiIndex& alpha, const Polynomial& c) {
  if (alpha.degree() > order_) order_ = alpha.degree();
  Polynomial v = q_->reduce(coefficient(alpha) + c);
  if (v.is_zero())
    c_.erase(alpha);
  else
    c_[alpha] = std::move(v);
}

Polynomial DiffOperator::apply_raw(const Polynomial& p) const {
  Polynomial acc(q_->ring());
  for (const auto& [alpha, c] : c_) acc += c * divided_derivative(p, alpha);
  return acc;
}

Coset DiffOperator::apply(const Polynomial& p) const { return Coset(q_, apply_raw(p)); }

void DiffOperator::check(const DiffOperator& o) const {
  if (q_ != o.q_) throw RingMismatch("operators act on different quotients");
}

DiffOperator DiffOperator::operator+(const DiffOperator& o) const {
  check(o);
  DiffOperator r = *this;
  r.order_ = std::max(order_, o.order_);
  for (const auto& [a, c] : o.c_) r.add_term(a, c);
  return r;
}

DiffOperator DiffOperator::operator-(const DiffOperator& o) const { return *this + o * Rational(-1); }

DiffOperator DiffOperator::operator*(const Rational& c) const {
  DiffOperator r(q_, order_);
  if (c == 0) return r;
  for (const auto& [a, v] : c_) r.c_[a] = v * c;
  return r;
}

DiffOperator DiffOperator::times(const Polynomial& a) const {
  DiffOperator r(q_, order_);
  for (const auto& [alpha, v] : c_) r.add_term(alpha, a * v);
  return r;
}

DiffOperator compose(const DiffOperator& d1, const DiffOperator& d2) {
  if (d1.parent() != d2.parent()) throw RingMismatch("operators act on different quotients");
  const QuotientPtr& q = d1.parent();
  std::size_t n = q->ring()->size();
  DiffOperator r(q, d1.order() + d2.order());
  std::map<MultiIndex, Polynomial, MultiIndexLess> acc;
  for (const auto& [alpha, c] : d1.terms()) {
    std::vector<MultiIndex> mus;
    for (unsigned k = 0; k <= alpha.degree(); ++k) {
      MultiIndex m;
      std::vector<MultiIndex> level;
      enumerate(0, n, k, m, level);
      for (auto& mu : level)
        if (leq(mu, alpha)) mus.push_back(mu);
    }
    for (const auto& mu : mus) {
      MultiIndex nu = alpha / mu;
      for (const auto& [gamma, c2] : d2.terms()) {
        Polynomial dc = divided_derivative(c2, mu);
        if (dc.is_zero()) continue;
        MultiIndex idx = nu * gamma;
        Polynomial term = c * dc * multi_binomial(idx, gamma);
        auto it = acc.find(idx);
        if (it == acc.end())
          acc.emplace(idx, std::move(term));
        else
          it->second += term;
      }
    }
  }
  for (const auto& [idx, c] : acc) r.add_term(idx, c);
  return r;
}

DiffOperator commutator(const DiffOperator& d1, const DiffOperator& d2) {
  DiffOperator r = compose(d1, d2) - compose(d2, d1);
  unsigned bound = d1.order() + d2.order();
  DiffOperator out(d1.parent(), bound > 0 ? bound - 1 : 0);
  for (const auto& [a, c] : r.terms()) out.add_term(a, c);
  return out;
}

DiffOperator shift(const DiffOperator& d, const MultiIndex& beta) {
  unsigned order = d.order() >= beta.degree() ? d.order() - beta.degree() : 0;
  DiffOperator r(d.parent(), order);
  for (const auto& [alpha, c] : d.terms())
    if (leq(beta, alpha)) r.add_term(alpha / beta, c);
  return r;
}

DiffOperator phi(const DiffOperator& d, const MultiIndex& beta) {
  DiffOperator r = shift(d, beta);
  Polynomial c0 = r.coefficient(MultiIndex());
  if (!c0.is_zero()) r.add_term(MultiIndex(), -c0);
  return r;
}

DiffOperator power(const DiffOperator& d, unsigned k) {
  DiffOperator r = DiffOperator::multiplication(d.parent(), Polynomial::constant(d.parent()->ring(), 1));
  for (unsigned i = 0; i < k; ++i) r = compose(d, r);
  return r;
}

bool in_der_m(const DiffOperator& d, const std::vector<Polynomial>& gens, unsigned m) {
  if (d.order() > m) {
    for (const auto& [a, c] : d.terms())
      if (a.degree() > m) return false;
  }
  if (!d.coefficient(MultiIndex()).is_zero()) return false;
  std::size_t n = d.parent()->ring()->size();
  for (const auto& beta : multi_indices(n, m == 0 ? 0 : m - 1, true))
    for (const auto& g : gens)
      if (!shift(d, beta).apply(g).is_zero()) return false;
  return true;
}

std::vector<DiffOperator> solve_der_m(const QuotientPtr& q, const std::vector<Polynomial>& gens, unsigned m) {
  std::size_t n = q->ring()->size();
  std::size_t dim = q->dimension();
  auto alphas = multi_indices(n, m);
  auto betas = multi_indices(n, m == 0 ? 0 : m - 1, true);
  std::size_t na = alphas.size();
  Matrix mat(betas.size() * gens.size() * dim, dim * na);
  for (std::size_t bi = 0; bi < betas.size(); ++bi)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      std::size_t row0 = (bi * gens.size() + j) * dim;
      for (std::size_t k = 0; k < na; ++k) {
        if (!leq(betas[bi], alphas[k])) continue;
        Polynomial dg = divided_derivative(gens[j], alphas[k] / betas[bi]);
        if (dg.is_zero()) continue;
        for (std::size_t b = 0; b < dim; ++b) {
          Vector c = q->coords(dg.mul_term(q->basis()[b], 1));
          for (std::size_t r = 0; r < dim; ++r) mat(row0 + r, b * na + k) = c[r];
        }
      }
    }
  std::vector<DiffOperator> out;
  for (const auto& v : mat.nullspace()) {
    DiffOperator d(q, m);
    for (std::size_t k = 0; k < na; ++k) {
      Vector c(dim);
      for (std::size_t b = 0; b < dim; ++b) c[b] = v[b * na + k];
      Polynomial p = q->from_coords(c);
      if (!p.is_zero()) d.add_term(alphas[k], p);
    }
    out.push_back(std::move(d));
  }
  return out;
}

DerivationTuple theta2(const DiffOperator& d, const std::vector<Polynomial>& gens) {
  if (!in_der_m(d, gens, 2)) throw NotADerivation("operator is not in Der^2 of the quotient");
  const QuotientPtr& q = d.parent();
  std::size_t n = q->ring()->size();
  DerivationTuple out;
  for (std::size_t i = 0; i < n; ++i) {
    DiffOperator p = phi(d, MultiIndex::var(i));
    std::vector<Polynomial> coeffs;
    for (std::size_t j = 0; j < n; ++j) coeffs.push_back(p.coefficient(MultiIndex::var(j)));
    out.emplace_back(q, std::move(coeffs));
  }
  return out;
}

bool d2_compatible(const DerivationTuple& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t[i].coeffs[j] != t[j].coeffs[i]) return false;
  return true;
}

Matrix operator_matrix(const DiffOperator& d) {
  const QuotientPtr& q = d.parent();
  std::size_t dim = q->dimension();
  Matrix m(dim, dim);
  for (std::size_t b = 0; b < dim; ++b) {
    Vector c = q->coords(d.apply_raw(Polynomial::term(q->ring(), q->basis()[b], 1)));
    for (std::size_t r = 0; r < dim; ++r) m(r, b) = c[r];
  }
  return m;
}

MatrixSpan matrix_span(const QuotientPtr& q, const std::vector<Matrix>& generators) {
  MatrixSpan s{q, Subspace(q->dimension() * q->dimension())};
  for (const auto& m : generators) s.span.add(m.flatten());
  return s;
}

namespace {

std::vector<Matrix> module_closure(const QuotientPtr& q, const std::vector<Matrix>& ops) {
  std::vector<Matrix> mult;
  for (const auto& b : q->basis()) mult.push_back(q->multiplication_matrix(Polynomial::term(q->ring(), b, 1)));
  std::vector<Matrix> out;
  for (const auto& op : ops)
    for (const auto& m : mult) out.push_back(m * op);
  return out;
}

}  // namespace

MatrixSpan der1_span(const QuotientPtr& q, const std::vector<Polynomial>& gens) {
  std::vector<Matrix> ops;
  for (const auto& d : der1_kernel(q, gens)) ops.push_back(operator_matrix(DiffOperator::from_derivation(d)));
  return matrix_span(q, ops);
}

MatrixSpan der2_span(const QuotientPtr& q, const std::vector<Polynomial>& gens) {
  std::vector<Matrix> first;
  for (const auto& d : der1_kernel(q, gens)) first.push_back(operator_matrix(DiffOperator::from_derivation(d)));
  std::vector<Matrix> ops = first;
  for (const auto& a : first)
    for (const auto& b : first) ops.push_back(a * b);
  return matrix_span(q, module_closure(q, ops));
}

MatrixSpan der_m_span(const QuotientPtr& q, const std::vector<Polynomial>& gens, unsigned m) {
  std::vector<Matrix> ops;
  for (const auto& d : solve_der_m(q, gens, m)) ops.push_back(operator_matrix(d));
  return matrix_span(q, ops);
}

bool in_der2(const DiffOperator& d, const MatrixSpan& span) { return span.contains(operator_matrix(d)); }

}  // namespace nakai
