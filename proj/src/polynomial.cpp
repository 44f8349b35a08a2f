#include "nakai/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace nakai {

Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Monomial::Monomial(std::initializer_list<unsigned> exps) {
  e_.fill(0);
  if (exps.size() > kMaxVars) throw Error("too many variables in monomial");
  std::size_t i = 0;
  for (unsigned e : exps) set(i++, e);
}

Monomial Monomial::var(std::size_t i, unsigned e) {
  Monomial m;
  m.set(i, e);
  return m;
}

void Monomial::set(std::size_t i, unsigned e) {
  if (i >= kMaxVars) throw Error("variable index out of range");
  if (e > 0xFFFF) throw Error("exponent too large");
  deg_ = deg_ - e_[i] + e;
  e_[i] = static_cast<std::uint16_t>(e);
}

bool Monomial::divides(const Monomial& other) const {
  if (deg_ > other.deg_) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (e_[i] > other.e_[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (e_[i] && other.e_[i]) return false;
  return true;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.set(i, std::max(e_[i], other.e_[i]));
  return r;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned e = unsigned(e_[i]) + other.e_[i];
    if (e > 0xFFFF) throw Error("exponent overflow");
    r.e_[i] = static_cast<std::uint16_t>(e);
  }
  r.deg_ = deg_ + other.deg_;
  return r;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e_[i] = static_cast<std::uint16_t>(e_[i] - divisor.e_[i]);
  r.deg_ = deg_ - divisor.deg_;
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto e : e_) h = (h ^ e) * 1099511628211ull;
  return h;
}

int degrevlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  for (std::size_t i = kMaxVars; i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

Ring::Ring(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVars) throw Error("at most " + std::to_string(kMaxVars) + " ring variables are supported");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j]) throw Error("duplicate ring variable '" + names_[i] + "'");
}

int Ring::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

RingPtr make_ring(std::vector<std::string> names) { return std::make_shared<const Ring>(std::move(names)); }

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({Monomial(), c});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i) {
  if (i >= ring->size()) throw Error("variable index out of range");
  return term(std::move(ring), Monomial::var(i), 1);
}

Polynomial Polynomial::term(RingPtr ring, const Monomial& m, const Rational& c) {
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return degrevlex_cmp(a.m, b.m) > 0; });
  Polynomial p(std::move(ring));
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().m == t.m) {
      p.terms_.back().c += t.c;
    } else {
      if (!p.terms_.empty() && p.terms_.back().c == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().c == 0) p.terms_.pop_back();
  return p;
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.degree() == 0); }

int Polynomial::degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().m.degree()); }

int Polynomial::min_degree() const {
  if (terms_.empty()) return -1;
  unsigned d = terms_.front().m.degree();
  for (const auto& t : terms_) d = std::min(d, t.m.degree());
  return static_cast<int>(d);
}

Rational Polynomial::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return degrevlex_cmp(t.m, key) > 0; });
  if (it != terms_.end() && it->m == m) return it->c;
  return 0;
}

void Polynomial::check_ring(const Polynomial& o) const {
  if (!ring_ || !o.ring_) return;
  if (!ring_->same_as(*o.ring_)) throw RingMismatch("polynomials live in different rings");
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

void Polynomial::add_scaled(const Polynomial& p, const Rational& c, const Monomial& m) {
  check_ring(p);
  if (!ring_) ring_ = p.ring_;
  if (c == 0 || p.terms_.empty()) return;
  std::vector<Term> out;
  out.reserve(terms_.size() + p.terms_.size());
  auto a = terms_.begin();
  auto b = p.terms_.begin();
  while (a != terms_.end() || b != p.terms_.end()) {
    if (b == p.terms_.end()) {
      out.push_back(std::move(*a++));
      continue;
    }
    Monomial bm = b->m * m;
    int cmp = a == terms_.end() ? -1 : degrevlex_cmp(a->m, bm);
    if (cmp > 0) {
      out.push_back(std::move(*a++));
    } else if (cmp < 0) {
      out.push_back({bm, b->c * c});
      ++b;
    } else {
      Rational s = a->c + b->c * c;
      if (s != 0) out.push_back({bm, std::move(s)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  add_scaled(o, 1, Monomial());
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  add_scaled(o, -1, Monomial());
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.c *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_ring(b);
  RingPtr ring = a.ring_ ? a.ring_ : b.ring_;
  if (a.terms_.empty() || b.terms_.empty()) return Polynomial(ring);
  if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].m, a.terms_[0].c);
  if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].m, b.terms_[0].c);
  std::map<Monomial, Rational, DegRevLexGreater> acc;
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) acc[s.m * t.m] += s.c * t.c;
  Polynomial r(ring);
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.push_back({m, std::move(c)});
  return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
  Polynomial r(ring_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
  return r;
}

Polynomial Polynomial::truncated(unsigned deg) const {
  Polynomial r(ring_);
  for (const auto& t : terms_)
    if (t.m.degree() < deg) r.terms_.push_back(t);
  return r;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  Rational inv = 1 / lc();
  Polynomial r = *this;
  r *= inv;
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (!a.terms_.empty()) a.check_ring(b);
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].m != b.terms_[i].m || a.terms_[i].c != b.terms_[i].c) return false;
  return true;
}

std::string monomial_to_string(const Monomial& m, const Ring& ring) {
  std::string s;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += ring.names()[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (c < 0) c = -c;
    bool unit_monomial = t.m.degree() == 0;
    if (unit_monomial) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      os << monomial_to_string(t.m, *ring_);
    }
  }
  return os.str();
}

Polynomial pow(const Polynomial& p, unsigned k) {
  Polynomial r = Polynomial::constant(p.ring(), 1);
  Polynomial base = p;
  while (k) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

Polynomial partial_derivative(const Polynomial& p, std::size_t i) {
  if (p.ring() && i >= p.nvars()) throw Error("variable index out of range");
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    unsigned e = t.m[i];
    if (e == 0) continue;
    Monomial m = t.m;
    m.set(i, e - 1);
    out.push_back({m, t.c * e});
  }
  return Polynomial::from_terms(p.ring(), std::move(out));
}

std::vector<Polynomial> jacobian_ideal(const Polynomial& f) {
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < f.nvars(); ++i) out.push_back(partial_derivative(f, i));
  return out;
}

std::vector<std::vector<Polynomial>> hessian(const Polynomial& f) {
  auto grad = jacobian_ideal(f);
  std::size_t n = f.nvars();
  std::vector<std::vector<Polynomial>> h(n, std::vector<Polynomial>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h[i][j] = partial_derivative(grad[i], j);
  return h;
}

Polynomial specialize(const Polynomial& p, const std::map<std::string, Rational>& bindings, const RingPtr& target) {
  const Ring& src = *p.ring();
  std::vector<int> map_to(src.size(), -1);
  std::vector<const Rational*> value(src.size(), nullptr);
  for (std::size_t i = 0; i < src.size(); ++i) {
    const auto& name = src.names()[i];
    auto it = bindings.find(name);
    if (it != bindings.end()) {
      value[i] = &it->second;
    } else {
      map_to[i] = target->index_of(name);
    }
  }
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    Rational c = t.c;
    Monomial m;
    for (std::size_t i = 0; i < src.size(); ++i) {
      unsigned e = t.m[i];
      if (e == 0) continue;
      if (value[i]) {
        for (unsigned k = 0; k < e; ++k) c *= *value[i];
      } else if (map_to[i] >= 0) {
        m.set(static_cast<std::size_t>(map_to[i]), e);
      } else {
        throw MissingBinding("no binding for '" + src.names()[i] + "'");
      }
    }
    if (c != 0) out.push_back({m, c});
  }
  return Polynomial::from_terms(target, std::move(out));
}

Polynomial change_ring(const Polynomial& p, const RingPtr& target) { return specialize(p, {}, target); }

bool weighted_degree_check(const Polynomial& f, const WeightVector& w) {
  if (w.weights.size() != f.nvars()) throw Error("weight vector length does not match the ring");
  for (const auto& wi : w.weights)
    if (wi <= 0) throw Error("weights must be positive");
  for (const auto& t : f.terms()) {
    Rational d = 0;
    for (std::size_t i = 0; i < f.nvars(); ++i) d += w.weights[i] * t.m[i];
    if (d != w.target) return false;
  }
  return true;
}

}  // namespace nakai
