#include "nakai/groebner.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_map>

namespace nakai {
namespace {

struct Elem {
  Polynomial p;
  std::vector<Polynomial> cof;
  bool truncation_monomial = false;
};

struct Pair {
  unsigned lcm_degree;
  std::size_t i;
  std::size_t j;
  bool operator<(const Pair& o) const { return std::tie(lcm_degree, i, j) < std::tie(o.lcm_degree, o.i, o.j); }
};

class Engine {
 public:
  Engine(RingPtr ring, unsigned trunc, bool track, std::vector<Polynomial> divisors)
      : ring_(std::move(ring)), trunc_(trunc), track_(track), divisors_(std::move(divisors)) {
    for (const auto& d : divisors_) {
      unsigned low = static_cast<unsigned>(std::max(0, d.min_degree()));
      cof_limit_.push_back(trunc_ > low ? trunc_ - low : 0);
    }
  }

  Polynomial cut(Polynomial p) const { return trunc_ ? p.truncated(trunc_) : p; }

  void cut_cof(std::vector<Polynomial>& cof) const {
    if (!trunc_) return;
    for (std::size_t j = 0; j < cof.size(); ++j) cof[j] = cof[j].truncated(cof_limit_[j]);
  }

  // Reduces e against the live basis, updating cofactors. With keep_lead the
  // leading term is left alone (tail reduction).
  void full_reduce(Elem& e, const std::vector<Elem>& basis, const std::vector<bool>& live,
                   bool keep_lead = false) const {
    std::vector<Term> rem;
    Polynomial& p = e.p;
    if (keep_lead && !p.is_zero()) {
      rem.push_back(p.lead());
      p.add_scaled(Polynomial::term(ring_, p.lm(), p.lc()), -1, Monomial());
    }
    while (!p.is_zero()) {
      Term t = p.lead();
      int k = -1;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        if (live[i] && basis[i].p.lm().divides(t.m)) {
          k = static_cast<int>(i);
          break;
        }
      }
      if (k < 0) {
        rem.push_back(t);
        p.add_scaled(Polynomial::term(ring_, t.m, t.c), -1, Monomial());
        continue;
      }
      const Elem& b = basis[static_cast<std::size_t>(k)];
      Monomial u = t.m / b.p.lm();
      Rational c = -t.c / b.p.lc();
      if (track_ && !b.truncation_monomial) {
        for (std::size_t j = 0; j < e.cof.size(); ++j) e.cof[j].add_scaled(b.cof[j], c, u);
      }
      p.add_scaled(b.p, c, u);
      if (trunc_) p = p.truncated(trunc_);
    }
    p = Polynomial::from_terms(ring_, std::move(rem));
    if (track_) cut_cof(e.cof);
  }

  std::vector<Elem> run(const std::vector<Polynomial>& gens) {
    std::vector<Elem> basis;
    std::vector<bool> live;
    std::set<Pair> queue;
    std::set<std::pair<std::size_t, std::size_t>> done;

    auto add = [&](Elem e) {
      std::size_t idx = basis.size();
      if (e.p.lc() != 1) {
        Rational inv = 1 / e.p.lc();
        e.p *= inv;
        if (track_)
          for (auto& c : e.cof) c *= inv;
      }
      // Elements whose leading monomial is a multiple of the new one keep their
      // queued pairs but stop acting as reducers.
      for (std::size_t i = 0; i < idx; ++i) {
        if (!live[i]) continue;
        if (!(basis[i].truncation_monomial && e.truncation_monomial))
          queue.insert({basis[i].p.lm().lcm(e.p.lm()).degree(), i, idx});
      }
      basis.push_back(std::move(e));
      live.push_back(true);
      for (std::size_t i = 0; i < idx; ++i)
        if (live[i] && basis[idx].p.lm().divides(basis[i].p.lm()) && basis[idx].p.lm() != basis[i].p.lm())
          live[i] = false;
    };

    auto make_elem = [&](const Polynomial& g, std::size_t j) {
      Elem e;
      e.p = cut(g);
      if (track_) {
        e.cof.assign(divisors_.size(), Polynomial(ring_));
        e.cof[j] = Polynomial::constant(ring_, 1);
      }
      return e;
    };

    std::vector<Elem> seeds;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      Elem e = make_elem(gens[j], j);
      if (!e.p.is_zero()) seeds.push_back(std::move(e));
    }
    if (trunc_) {
      // Minimal generators of m^trunc.
      std::vector<Monomial> mons;
      enumerate_degree(ring_->size(), trunc_, mons);
      for (const auto& m : mons) {
        Elem e;
        e.p = Polynomial::term(ring_, m, 1);
        e.truncation_monomial = true;
        if (track_) e.cof.assign(divisors_.size(), Polynomial(ring_));
        seeds.push_back(std::move(e));
      }
    }
    // Reduce each seed against what is already present so duplicates vanish.
    for (auto& s : seeds) {
      if (!s.truncation_monomial) full_reduce(s, basis, live);
      if (s.p.is_zero()) continue;
      add(std::move(s));
    }

    while (!queue.empty()) {
      Pair pr = *queue.begin();
      queue.erase(queue.begin());
      done.insert({pr.i, pr.j});
      const Elem& a = basis[pr.i];
      const Elem& b = basis[pr.j];
      if (a.truncation_monomial && b.truncation_monomial) continue;
      const Monomial& la = a.p.lm();
      const Monomial& lb = b.p.lm();
      if (la.coprime(lb)) continue;
      Monomial l = la.lcm(lb);
      if (chain_criterion(pr, l, basis, done)) continue;
      Elem s;
      s.p = Polynomial(ring_);
      if (track_) s.cof.assign(divisors_.size(), Polynomial(ring_));
      Monomial ua = l / la;
      Monomial ub = l / lb;
      Rational ca = 1 / a.p.lc();
      Rational cb = -1 / b.p.lc();
      s.p.add_scaled(a.p, ca, ua);
      s.p.add_scaled(b.p, cb, ub);
      if (trunc_) s.p = s.p.truncated(trunc_);
      if (track_) {
        if (!a.truncation_monomial)
          for (std::size_t j = 0; j < s.cof.size(); ++j) s.cof[j].add_scaled(a.cof[j], ca, ua);
        if (!b.truncation_monomial)
          for (std::size_t j = 0; j < s.cof.size(); ++j) s.cof[j].add_scaled(b.cof[j], cb, ub);
      }
      full_reduce(s, basis, live);
      if (s.p.is_zero()) continue;
      add(std::move(s));
    }

    // Minimal basis.
    std::vector<bool> keep(basis.size(), true);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t k = 0; k < basis.size() && keep[i]; ++k) {
        if (k == i) continue;
        const Monomial& lk = basis[k].p.lm();
        const Monomial& li = basis[i].p.lm();
        if (lk.divides(li) && (lk != li || k < i)) keep[i] = false;
      }
    std::vector<Elem> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (keep[i]) minimal.push_back(std::move(basis[i]));
    std::sort(minimal.begin(), minimal.end(),
              [](const Elem& x, const Elem& y) { return degrevlex_cmp(x.p.lm(), y.p.lm()) < 0; });
    // Inter-reduction: tails reduced against all other elements.
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<bool> others(minimal.size(), true);
      others[i] = false;
      Elem& e = minimal[i];
      full_reduce(e, minimal, others, true);
      Rational inv = 1 / e.p.lc();
      e.p *= inv;
      if (track_)
        for (auto& c : e.cof) c *= inv;
    }
    return minimal;
  }

  // Skips (i, j) when some k has lm(k) | lcm(i, j) and both (i, k) and (j, k)
  // were already treated.
  static bool chain_criterion(const Pair& pr, const Monomial& l, const std::vector<Elem>& basis,
                              const std::set<std::pair<std::size_t, std::size_t>>& done) {
    auto treated = [&](std::size_t x, std::size_t y) {
      if (x > y) std::swap(x, y);
      if (basis[x].truncation_monomial && basis[y].truncation_monomial) return true;
      return done.count({x, y}) > 0;
    };
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!basis[k].p.lm().divides(l)) continue;
      if (treated(pr.i, k) && treated(pr.j, k)) return true;
    }
    return false;
  }

  static void enumerate_degree(std::size_t n, unsigned d, std::vector<Monomial>& out) {
    Monomial m;
    rec(0, n, d, m, out);
  }

  static void rec(std::size_t i, std::size_t n, unsigned left, Monomial& m, std::vector<Monomial>& out) {
    if (i + 1 == n) {
      m.set(i, left);
      out.push_back(m);
      m.set(i, 0);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      m.set(i, e);
      rec(i + 1, n, left - e, m, out);
    }
    m.set(i, 0);
  }

 private:
  RingPtr ring_;
  unsigned trunc_;
  bool track_;
  std::vector<Polynomial> divisors_;
  std::vector<unsigned> cof_limit_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// Truncated bases by linear algebra: the ideal modulo m^D is the smallest
// subspace of polynomials of degree < D that contains the generators and is
// closed under multiplication by each variable. Rows are kept in echelon form
// over columns ordered by decreasing degrevlex.
class TruncatedEngine {
 public:
  TruncatedEngine(RingPtr ring, unsigned trunc, bool track, const std::vector<Polynomial>& divisors)
      : ring_(std::move(ring)), trunc_(trunc), track_(track), ndiv_(divisors.size()) {
    for (const auto& d : divisors) {
      unsigned low = static_cast<unsigned>(std::max(0, d.min_degree()));
      cof_limit_.push_back(trunc_ > low ? trunc_ - low : 0);
    }
    std::vector<Monomial> cols;
    for (unsigned k = 0; k < trunc_; ++k) Engine::enumerate_degree(ring_->size(), k, cols);
    std::sort(cols.begin(), cols.end(), DegRevLexGreater());
    cols_ = std::move(cols);
    for (std::size_t c = 0; c < cols_.size(); ++c) col_of_.emplace(cols_[c], static_cast<std::uint32_t>(c));
    pivot_row_.assign(cols_.size(), -1);
    acc_.assign(cols_.size(), Rational(0));
  }

  std::vector<Elem> run(const std::vector<Polynomial>& gens) {
    std::vector<std::size_t> queue;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      std::vector<Polynomial> cof;
      if (track_) {
        cof.assign(ndiv_, Polynomial(ring_));
        cof[j] = Polynomial::constant(ring_, 1);
      }
      int r = insert(gens[j], std::move(cof));
      if (r >= 0) queue.push_back(static_cast<std::size_t>(r));
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t r = queue[qi];
      for (std::size_t v = 0; v < ring_->size(); ++v) {
        Monomial xv = Monomial::var(v);
        Polynomial p = to_poly(rows_[r]).mul_term(xv, 1);
        std::vector<Polynomial> cof;
        if (track_)
          for (const auto& c : rows_[r].cof) cof.push_back(c.mul_term(xv, 1));
        int k = insert(p, std::move(cof));
        if (k >= 0) queue.push_back(static_cast<std::size_t>(k));
      }
    }
    back_substitute();

    std::vector<Monomial> leads;
    for (const auto& row : rows_) leads.push_back(cols_[row.e.front().first]);
    std::vector<Elem> out;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      bool minimal = true;
      for (std::size_t k = 0; k < rows_.size() && minimal; ++k)
        if (k != r && leads[k].divides(leads[r]) && leads[k] != leads[r]) minimal = false;
      if (!minimal) continue;
      Elem e;
      e.p = to_poly(rows_[r]);
      if (track_) e.cof = std::move(rows_[r].cof);
      out.push_back(std::move(e));
    }
    std::vector<Monomial> top;
    Engine::enumerate_degree(ring_->size(), trunc_, top);
    for (const auto& m : top) {
      bool covered = false;
      for (const auto& e : out)
        if (e.p.lm().divides(m)) covered = true;
      if (covered) continue;
      Elem e;
      e.p = Polynomial::term(ring_, m, 1);
      e.truncation_monomial = true;
      if (track_) e.cof.assign(ndiv_, Polynomial(ring_));
      out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(),
              [](const Elem& x, const Elem& y) { return degrevlex_cmp(x.p.lm(), y.p.lm()) < 0; });
    return out;
  }

 private:
  struct Row {
    std::vector<std::pair<std::uint32_t, Rational>> e;
    std::vector<Polynomial> cof;
  };

  Polynomial to_poly(const Row& row) const {
    std::vector<Term> t;
    t.reserve(row.e.size());
    for (const auto& [c, v] : row.e) t.push_back({cols_[c], v});
    return Polynomial::from_terms(ring_, std::move(t));
  }

  // Reduces p against the current rows; a nonzero remainder becomes a new row.
  int insert(const Polynomial& p, std::vector<Polynomial> cof) {
    std::size_t first = cols_.size();
    for (const auto& t : p.terms()) {
      if (t.m.degree() >= trunc_) continue;
      std::uint32_t c = col_of_.at(t.m);
      acc_[c] = t.c;
      first = std::min<std::size_t>(first, c);
    }
    if (first == cols_.size()) return -1;
    Row row;
    for (std::size_t c = first; c < cols_.size(); ++c) {
      if (sgn(acc_[c]) == 0) continue;
      int pr = pivot_row_[c];
      if (pr < 0) {
        row.e.emplace_back(static_cast<std::uint32_t>(c), acc_[c]);
        acc_[c] = 0;
        continue;
      }
      Rational k = acc_[c];
      const Row& piv = rows_[static_cast<std::size_t>(pr)];
      for (const auto& [col, v] : piv.e) acc_[col] -= k * v;
      if (track_)
        for (std::size_t j = 0; j < ndiv_; ++j) cof[j].add_scaled(piv.cof[j], -k, Monomial());
    }
    if (row.e.empty()) return -1;
    Rational inv = 1 / row.e.front().second;
    for (auto& [c, v] : row.e) v *= inv;
    if (track_) {
      for (std::size_t j = 0; j < ndiv_; ++j) cof[j] = (cof[j] * inv).truncated(cof_limit_[j]);
      row.cof = std::move(cof);
    }
    pivot_row_[row.e.front().first] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(row));
    return static_cast<int>(rows_.size() - 1);
  }

  // Clears every pivot column from the other rows, smallest pivots first.
  void back_substitute() {
    for (std::size_t c = cols_.size(); c-- > 0;) {
      int pr = pivot_row_[c];
      if (pr < 0) continue;
      Row& row = rows_[static_cast<std::size_t>(pr)];
      bool dirty = false;
      for (std::size_t i = 1; i < row.e.size() && !dirty; ++i)
        if (pivot_row_[row.e[i].first] >= 0) dirty = true;
      if (!dirty) continue;
      for (const auto& [col, v] : row.e) acc_[col] = v;
      std::vector<std::pair<std::uint32_t, Rational>> out;
      for (std::size_t k = c; k < cols_.size(); ++k) {
        if (sgn(acc_[k]) == 0) continue;
        int q = pivot_row_[k];
        if (k == c || q < 0) {
          out.emplace_back(static_cast<std::uint32_t>(k), acc_[k]);
          acc_[k] = 0;
          continue;
        }
        Rational m = acc_[k];
        const Row& piv = rows_[static_cast<std::size_t>(q)];
        for (const auto& [col, v] : piv.e) acc_[col] -= m * v;
        if (track_)
          for (std::size_t j = 0; j < ndiv_; ++j) row.cof[j].add_scaled(piv.cof[j], -m, Monomial());
      }
      row.e = std::move(out);
      if (track_)
        for (std::size_t j = 0; j < ndiv_; ++j) row.cof[j] = row.cof[j].truncated(cof_limit_[j]);
    }
  }

  RingPtr ring_;
  unsigned trunc_;
  bool track_;
  std::size_t ndiv_;
  std::vector<unsigned> cof_limit_;
  std::vector<Monomial> cols_;
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> col_of_;
  std::vector<int> pivot_row_;
  std::vector<Rational> acc_;
  std::vector<Row> rows_;
};

}  // namespace

int GroebnerBasis::find_divisor(const Monomial& m) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i].lm().divides(m)) return static_cast<int>(i);
  return -1;
}

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, MonomialOrder order, unsigned truncation,
                         bool track_cofactors) {
  RingPtr ring;
  for (const auto& g : gens)
    if (g.ring()) {
      if (ring && !ring->same_as(*g.ring())) throw RingMismatch("generators live in different rings");
      ring = g.ring();
    }
  if (!ring) throw Error("cannot determine the ring of an empty generator list");
  if (ring->size() == 0 && truncation) truncation = 0;
  std::vector<Elem> elems;
  if (truncation) {
    TruncatedEngine eng(ring, truncation, track_cofactors, gens);
    elems = eng.run(gens);
  } else {
    Engine eng(ring, truncation, track_cofactors, gens);
    elems = eng.run(gens);
  }
  GroebnerBasis gb;
  gb.ring = ring;
  gb.order = order;
  gb.reduced = true;
  gb.truncation = truncation;
  gb.tracks_cofactors = track_cofactors;
  gb.divisors = gens;
  for (auto& e : elems) {
    gb.elements.push_back(std::move(e.p));
    if (track_cofactors) gb.cofactors.push_back(std::move(e.cof));
  }
  return gb;
}

Polynomial reduce(const Polynomial& p, const GroebnerBasis& basis) {
  Polynomial q = basis.truncation ? p.truncated(basis.truncation) : p;
  std::vector<Term> rem;
  while (!q.is_zero()) {
    Term t = q.lead();
    int k = basis.find_divisor(t.m);
    if (k < 0) {
      rem.push_back(t);
      q.add_scaled(Polynomial::term(q.ring(), t.m, t.c), -1, Monomial());
      continue;
    }
    const Polynomial& g = basis.elements[static_cast<std::size_t>(k)];
    q.add_scaled(g, -t.c / g.lc(), t.m / g.lm());
    if (basis.truncation) q = q.truncated(basis.truncation);
  }
  return Polynomial::from_terms(p.ring() ? p.ring() : basis.ring, std::move(rem));
}

Division extended_divide(const Polynomial& p, const std::vector<Polynomial>& divisors, const GroebnerBasis& basis) {
  if (!basis.tracks_cofactors) throw Error("extended_divide needs a basis built with cofactor tracking");
  if (divisors.size() != basis.divisors.size()) throw Error("divisor list does not match the basis");
  for (std::size_t j = 0; j < divisors.size(); ++j)
    if (divisors[j] != basis.divisors[j]) throw Error("divisor list does not match the basis");
  const RingPtr& ring = basis.ring;
  unsigned D = basis.truncation;
  Division out;
  out.cofactors.assign(divisors.size(), Polynomial(ring));
  Polynomial q = D ? p.truncated(D) : p;
  std::vector<Term> rem;
  while (!q.is_zero()) {
    Term t = q.lead();
    int k = basis.find_divisor(t.m);
    if (k < 0) {
      rem.push_back(t);
      q.add_scaled(Polynomial::term(ring, t.m, t.c), -1, Monomial());
      continue;
    }
    const Polynomial& g = basis.elements[static_cast<std::size_t>(k)];
    Rational c = t.c / g.lc();
    Monomial u = t.m / g.lm();
    for (std::size_t j = 0; j < divisors.size(); ++j) out.cofactors[j].add_scaled(basis.cofactors[k][j], c, u);
    q.add_scaled(g, -c, u);
    if (D) q = q.truncated(D);
  }
  if (D)
    for (std::size_t j = 0; j < divisors.size(); ++j) {
      int low = std::max(0, divisors[j].min_degree());
      out.cofactors[j] = out.cofactors[j].truncated(D > unsigned(low) ? D - low : 0);
    }
  out.remainder = Polynomial::from_terms(ring, std::move(rem));
  if (!verify_division(p, divisors, out, D)) throw Error("internal error: division re-expansion failed");
  return out;
}

bool verify_division(const Polynomial& p, const std::vector<Polynomial>& divisors, const Division& d,
                     unsigned truncation) {
  Polynomial diff = p - d.remainder;
  for (std::size_t j = 0; j < divisors.size(); ++j) diff -= d.cofactors[j] * divisors[j];
  if (truncation) return diff.truncated(truncation).is_zero();
  return diff.is_zero();
}

}  // namespace nakai
