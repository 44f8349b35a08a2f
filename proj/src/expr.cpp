#include "nakai/expr.hpp"

#include <cctype>

namespace nakai {
namespace {

ExprPtr node(ExprNode::Kind k, ExprPtr l = nullptr, ExprPtr r = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, std::size_t line, std::size_t column) : s_(text), line_(line), col0_(column) {}

  ExprPtr parse() {
    skip();
    if (at_end()) fail("empty expression");
    ExprPtr e = expr();
    skip();
    if (!at_end()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col0_ + pos_); }

  bool at_end() const { return pos_ >= s_.size(); }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (!at_end() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr expr() {
    ExprPtr l = term();
    for (;;) {
      if (accept('+')) {
        l = node(ExprNode::Kind::Add, l, term());
      } else if (accept('-')) {
        l = node(ExprNode::Kind::Sub, l, term());
      } else {
        return l;
      }
    }
  }

  ExprPtr term() {
    ExprPtr l = unary();
    for (;;) {
      if (accept('*')) {
        l = node(ExprNode::Kind::Mul, l, unary());
      } else if (accept('/')) {
        l = node(ExprNode::Kind::Div, l, unary());
      } else {
        skip();
        if (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(' || s_[pos_] == '_'))
          fail("missing '*' between factors");
        return l;
      }
    }
  }

  ExprPtr unary() {
    if (accept('-')) return node(ExprNode::Kind::Neg, unary());
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (accept('^')) {
      skip();
      ExprPtr ex;
      if (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        ex = number();
      } else if (accept('(')) {
        ex = expr();
        if (!accept(')')) fail("expected ')'");
      } else {
        fail("exponent must be a non-negative integer literal");
      }
      if (accept('^')) fail("chained exponents need parentheses");
      return node(ExprNode::Kind::Pow, base, ex);
    }
    return base;
  }

  ExprPtr number() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Number;
    n->value = mpz_class(std::string(s_.substr(start, pos_ - start)));
    return n;
  }

  ExprPtr atom() {
    skip();
    if (at_end()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprNode::Kind::Ident;
      n->name = std::string(s_.substr(start, pos_ - start));
      return n;
    }
    if (accept('(')) {
      ExprPtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col0_;
};

Polynomial eval_rec(const ExprPtr& e, const RingPtr& ring, const Bindings& b) {
  using K = ExprNode::Kind;
  switch (e->kind) {
    case K::Number:
      return Polynomial::constant(ring, e->value);
    case K::Ident: {
      auto it = b.find(e->name);
      if (it != b.end()) return Polynomial::constant(ring, it->second);
      int idx = ring ? ring->index_of(e->name) : -1;
      if (idx < 0) throw MissingBinding("no binding for '" + e->name + "'");
      return Polynomial::variable(ring, static_cast<std::size_t>(idx));
    }
    case K::Add:
      return eval_rec(e->lhs, ring, b) + eval_rec(e->rhs, ring, b);
    case K::Sub:
      return eval_rec(e->lhs, ring, b) - eval_rec(e->rhs, ring, b);
    case K::Mul:
      return eval_rec(e->lhs, ring, b) * eval_rec(e->rhs, ring, b);
    case K::Neg:
      return -eval_rec(e->lhs, ring, b);
    case K::Div: {
      Polynomial d = eval_rec(e->rhs, ring, b);
      if (!d.is_constant()) throw Error("divisor '" + expr_to_string(e->rhs) + "' is not constant");
      if (d.is_zero()) throw Error("division by zero in '" + expr_to_string(e) + "'");
      Rational inv = 1 / d.constant_term();
      return eval_rec(e->lhs, ring, b) * inv;
    }
    case K::Pow: {
      long k = evaluate_integer(e->rhs, b);
      if (k < 0) throw Error("negative exponent in '" + expr_to_string(e) + "'");
      return pow(eval_rec(e->lhs, ring, b), static_cast<unsigned>(k));
    }
  }
  throw Error("corrupt expression");
}

int precedence(ExprNode::Kind k) {
  using K = ExprNode::Kind;
  switch (k) {
    case K::Add:
    case K::Sub:
      return 1;
    case K::Mul:
    case K::Div:
      return 2;
    case K::Neg:
      return 3;
    case K::Pow:
      return 4;
    default:
      return 5;
  }
}

void print(const ExprPtr& e, std::string& out) {
  using K = ExprNode::Kind;
  auto child = [&](const ExprPtr& c, int min_prec) {
    bool paren = precedence(c->kind) < min_prec;
    if (paren) out += "(";
    print(c, out);
    if (paren) out += ")";
  };
  switch (e->kind) {
    case K::Number:
      out += e->value.get_str();
      return;
    case K::Ident:
      out += e->name;
      return;
    case K::Add:
    case K::Sub:
      child(e->lhs, 1);
      out += e->kind == K::Add ? " + " : " - ";
      child(e->rhs, 2);
      return;
    case K::Mul:
    case K::Div:
      child(e->lhs, 2);
      out += e->kind == K::Mul ? "*" : "/";
      child(e->rhs, 3);
      return;
    case K::Neg:
      out += "-";
      child(e->lhs, 3);
      return;
    case K::Pow:
      child(e->lhs, 5);
      out += "^";
      if (e->rhs->kind == K::Number) {
        out += e->rhs->value.get_str();
      } else {
        out += "(";
        print(e->rhs, out);
        out += ")";
      }
      return;
  }
}

}  // namespace

ExprPtr parse_expression(std::string_view text, std::size_t line, std::size_t column) {
  return Parser(text, line, column).parse();
}

Polynomial evaluate(const ExprPtr& e, const RingPtr& ring, const Bindings& bindings) {
  return eval_rec(e, ring, bindings);
}

Rational evaluate_constant(const ExprPtr& e, const Bindings& bindings) {
  static const RingPtr empty = make_ring({});
  Polynomial p = eval_rec(e, empty, bindings);
  return p.constant_term();
}

long evaluate_integer(const ExprPtr& e, const Bindings& bindings) {
  Rational v = evaluate_constant(e, bindings);
  if (v.get_den() != 1) throw Error("'" + expr_to_string(e) + "' is not an integer");
  if (!v.get_num().fits_slong_p()) throw Error("integer out of range");
  return v.get_num().get_si();
}

void collect_identifiers(const ExprPtr& e, std::set<std::string>& out) {
  if (!e) return;
  if (e->kind == ExprNode::Kind::Ident) out.insert(e->name);
  collect_identifiers(e->lhs, out);
  collect_identifiers(e->rhs, out);
}

void collect_divisors(const ExprPtr& e, std::vector<ExprPtr>& out) {
  if (!e) return;
  collect_divisors(e->lhs, out);
  if (e->kind == ExprNode::Kind::Div) out.push_back(e->rhs);
  collect_divisors(e->rhs, out);
}

std::string expr_to_string(const ExprPtr& e) {
  std::string s;
  print(e, s);
  return s;
}

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring, const Bindings& bindings) {
  return evaluate(parse_expression(text), ring, bindings);
}

}  // namespace nakai
