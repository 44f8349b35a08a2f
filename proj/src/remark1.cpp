#include "nakai/remark1.hpp"

#include <set>

#include "nakai/expr.hpp"

namespace nakai {

std::string diff_operator_to_string(const DiffOperator& d) {
  const auto& ring = d.parent()->ring();
  std::string s;
  for (const auto& [alpha, c] : d.terms()) {
    if (!s.empty()) s += " + ";
    s += "(" + c.to_string() + ")";
    if (alpha.degree() == 0) continue;
    s += "*d";
    for (std::size_t i = 0; i < ring->size(); ++i)
      if (alpha[i]) s += "_" + ring->names()[i] + (alpha[i] > 1 ? "^(" + std::to_string(alpha[i]) + ")" : "");
  }
  return s.empty() ? "0" : s;
}

Remark1Report run_remark1() {
  Remark1Report r;
  RingPtr ring = make_ring({"x", "y"});
  auto P = [&](const std::string& s) { return parse_polynomial(s, ring); };
  std::vector<Polynomial> gens{P("4*x^3 + y^2"), P("x*y")};
  QuotientPtr q = artinian_quotient(gens);
  r.algebra_dimension = q->dimension();

  MultiIndex dx = MultiIndex::var(0, 1), dy = MultiIndex::var(1, 1);
  MultiIndex dxx = MultiIndex::var(0, 2), dyy = MultiIndex::var(1, 2), dxy = dx * dy;
  auto op = [&](std::vector<std::pair<MultiIndex, std::string>> terms) {
    std::vector<std::pair<MultiIndex, Polynomial>> t;
    for (auto& [a, c] : terms) t.emplace_back(a, P(c));
    return DiffOperator::from_terms(q, t);
  };

  MatrixSpan der1 = der1_span(q, gens);
  r.der1_dimension = der1.dimension();
  std::vector<DiffOperator> listed1{op({{dy, "y"}, {dx, "2/3*x"}}), op({{dy, "y^2"}}),
                                    op({{dy, "x^2"}, {dx, "1/4*y"}}), op({{dx, "y^2"}}), op({{dx, "x^2"}})};
  std::vector<Matrix> m1;
  bool all_in = true;
  for (const auto& d : listed1) {
    m1.push_back(operator_matrix(d));
    all_in = all_in && in_der_m(d, gens, 1) && der1.contains(m1.back());
  }
  r.der1_listed_ok = all_in && matrix_span(q, m1).dimension() == r.der1_dimension;

  MatrixSpan small = der2_span(q, gens);
  r.der2_small_dimension = small.dimension();
  MatrixSpan big = der_m_span(q, gens, 2);
  r.der2_dimension = big.dimension();

  // d_x^2 = 2 d_x^(2) in divided powers.
  std::vector<DiffOperator> extras{op({{dy, "3*y"}, {dyy, "18*y^2"}, {dxx, "8*x^2"}}), op({{dxx, "2*y^2"}}),
                                   op({{dx, "y"}, {dxy, "-y^2"}}), op({{dxx, "2*y^2"}})};
  std::vector<Matrix> all = m1;
  std::set<std::string> distinct;
  for (const auto& e : extras) {
    all.push_back(operator_matrix(e));
    distinct.insert(diff_operator_to_string(e));
  }
  r.listed_extras_distinct = distinct.size();
  MatrixSpan listed = matrix_span(q, all);
  r.listed_generators_dimension = listed.dimension();
  bool inside = true;
  for (const auto& m : all) inside = inside && small.contains(m);
  r.listed_span_matches = inside && listed.dimension() == small.dimension();

  DiffOperator e = listed1[0];
  DiffOperator pe = power(e, 4) * Rational(9) - power(e, 3) * Rational(36) + power(e, 2) * Rational(41) -
                    e * Rational(14);
  r.pe = diff_operator_to_string(pe);
  Matrix mpe = operator_matrix(pe);
  r.identity_first_order = mpe == operator_matrix(op({{dy, "-4*y^2"}, {dx, "-4/3*x^2"}}));
  r.identity_second_order = mpe == operator_matrix(op({{dyy, "-8*y^2"}, {dxx, "-8/3*x^2"}}));
  r.pe_in_Der2 = in_der_m(pe, gens, 2) && big.contains(mpe);
  r.pe_in_der2 = small.contains(mpe);
  return r;
}

}  // namespace nakai
