#include <gtest/gtest.h>

#include "nakai/expr.hpp"

using namespace nakai;

namespace {

RingPtr xy() { return make_ring({"x", "y"}); }

}  // namespace

TEST(Expr, PrecedenceAndAssociativity) {
  auto r = xy();
  EXPECT_EQ(parse_polynomial("1 - 2 - 3", r), Polynomial::constant(r, -4));
  EXPECT_EQ(parse_polynomial("2*3^2", r), Polynomial::constant(r, 18));
  EXPECT_EQ(parse_polynomial("-x^2", r), parse_polynomial("-(x^2)", r));
  EXPECT_EQ(parse_polynomial("x/2/3", r), parse_polynomial("x/6", r));
  EXPECT_EQ(parse_polynomial("(x + y)^2", r), parse_polynomial("x^2 + 2*x*y + y^2", r));
}

TEST(Expr, BindingsAndComputedExponents) {
  auto r = xy();
  Bindings b{{"p", make_rational(3)}, {"a", make_rational(1, 2)}};
  EXPECT_EQ(parse_polynomial("a*y^(p + 2)", r, b), parse_polynomial("1/2*y^5", r));
  EXPECT_EQ(parse_polynomial("x/(p - 1)", r, b), parse_polynomial("1/2*x", r));
  auto e = parse_expression("(q + 1)/2");
  EXPECT_EQ(evaluate_integer(e, {{"q", make_rational(5)}}), 3);
  EXPECT_THROW(evaluate_integer(e, {{"q", make_rational(4)}}), Error);
}

TEST(Expr, RejectsMalformedInput) {
  auto r = xy();
  EXPECT_THROW(parse_polynomial("x^-1", r), ParseError);
  EXPECT_THROW(parse_polynomial("2x", r), ParseError);
  EXPECT_THROW(parse_polynomial("x +", r), ParseError);
  EXPECT_THROW(parse_polynomial("(x", r), ParseError);
  EXPECT_THROW(parse_polynomial("x # y", r), ParseError);
  EXPECT_THROW(parse_polynomial("x/y", r), Error);
  EXPECT_THROW(parse_polynomial("x/0", r), Error);
  EXPECT_THROW(parse_polynomial("x^(y)", r), Error);
  EXPECT_THROW(parse_polynomial("a*x", r), MissingBinding);
}

TEST(Expr, ErrorsCarryPositions) {
  try {
    parse_expression("x + * y", 4, 10);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(e.column(), 14u);
  }
}

TEST(Expr, PrintingReparsesToSameValue) {
  auto r = xy();
  for (const char* s : {"-(x - y)^3/4", "x^(2 + 1)*y - 3/5", "-x*-y", "((x))"}) {
    auto e = parse_expression(s);
    auto again = parse_expression(expr_to_string(e));
    EXPECT_EQ(evaluate(e, r), evaluate(again, r)) << s;
  }
}

TEST(Expr, CollectsIdentifiersAndDivisors) {
  auto e = parse_expression("a*x/(b^2 + 1) - y/3");
  std::set<std::string> ids;
  collect_identifiers(e, ids);
  EXPECT_EQ(ids, (std::set<std::string>{"a", "b", "x", "y"}));
  std::vector<ExprPtr> divs;
  collect_divisors(e, divs);
  ASSERT_EQ(divs.size(), 2u);
  EXPECT_EQ(evaluate_constant(divs[0], {{"b", make_rational(2)}}), 5);
}
