#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nakai/polynomial.hpp"

namespace nakai {

using Bindings = std::map<std::string, Rational>;

// Expression syntax tree shared by the catalog and the command line.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' exponent)?
//   exponent := integer | '(' expr ')'
//   atom   := integer | identifier | '(' expr ')'
//
// A divisor must evaluate to a nonzero constant; a parenthesized exponent must
// evaluate to a non-negative integer.
struct ExprNode {
  enum class Kind { Number, Ident, Add, Sub, Mul, Div, Neg, Pow };
  Kind kind;
  Rational value;
  std::string name;
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;
};

using ExprPtr = std::shared_ptr<const ExprNode>;

// line/column locate the first character of text for error messages.
ExprPtr parse_expression(std::string_view text, std::size_t line = 1, std::size_t column = 1);

Polynomial evaluate(const ExprPtr& e, const RingPtr& ring, const Bindings& bindings = {});
Rational evaluate_constant(const ExprPtr& e, const Bindings& bindings);
long evaluate_integer(const ExprPtr& e, const Bindings& bindings);

void collect_identifiers(const ExprPtr& e, std::set<std::string>& out);
// Every right operand of '/', in order of appearance.
void collect_divisors(const ExprPtr& e, std::vector<ExprPtr>& out);

std::string expr_to_string(const ExprPtr& e);

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring, const Bindings& bindings = {});

}  // namespace nakai
