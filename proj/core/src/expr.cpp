#include "geoxray/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace geoxray::expr {

namespace {

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

NodePtr lit(double v) { return make({Node::Kind::Literal, v}); }

bool is_lit(const NodePtr& n, double v) {
  return n->kind == Node::Kind::Literal && n->literal == v;
}

NodePtr add(NodePtr a, NodePtr b) {
  if (is_lit(a, 0.0)) return b;
  if (is_lit(b, 0.0)) return a;
  if (a->kind == Node::Kind::Literal && b->kind == Node::Kind::Literal)
    return lit(a->literal + b->literal);
  return make({Node::Kind::Add, 0, "", a, b});
}

NodePtr sub(NodePtr a, NodePtr b) {
  if (is_lit(b, 0.0)) return a;
  if (a->kind == Node::Kind::Literal && b->kind == Node::Kind::Literal)
    return lit(a->literal - b->literal);
  if (is_lit(a, 0.0)) return make({Node::Kind::Neg, 0, "", b, nullptr});
  return make({Node::Kind::Sub, 0, "", a, b});
}

NodePtr mul(NodePtr a, NodePtr b) {
  if (is_lit(a, 0.0) || is_lit(b, 0.0)) return lit(0.0);
  if (is_lit(a, 1.0)) return b;
  if (is_lit(b, 1.0)) return a;
  if (a->kind == Node::Kind::Literal && b->kind == Node::Kind::Literal)
    return lit(a->literal * b->literal);
  return make({Node::Kind::Mul, 0, "", a, b});
}

NodePtr div(NodePtr a, NodePtr b) {
  if (is_lit(a, 0.0)) return lit(0.0);
  if (is_lit(b, 1.0)) return a;
  return make({Node::Kind::Div, 0, "", a, b});
}

NodePtr neg(NodePtr a) {
  if (a->kind == Node::Kind::Literal) return lit(-a->literal);
  return make({Node::Kind::Neg, 0, "", a, nullptr});
}

NodePtr pow_node(NodePtr a, NodePtr b) {
  if (is_lit(b, 1.0)) return a;
  return make({Node::Kind::Pow, 0, "", a, b});
}

NodePtr call(std::string f, NodePtr a) {
  return make({Node::Kind::Call, 0, std::move(f), a, nullptr});
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  NodePtr run() {
    NodePtr e = expression();
    skip_ws();
    if (pos_ < s_.size()) throw ParseError("unexpected trailing input", pos_ + 1);
    return e;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NodePtr expression() {
    NodePtr e = term();
    while (true) {
      if (consume('+'))
        e = make({Node::Kind::Add, 0, "", e, term()});
      else if (consume('-'))
        e = make({Node::Kind::Sub, 0, "", e, term()});
      else
        return e;
    }
  }

  NodePtr term() {
    NodePtr e = factor();
    while (true) {
      if (consume('*'))
        e = make({Node::Kind::Mul, 0, "", e, factor()});
      else if (consume('/'))
        e = make({Node::Kind::Div, 0, "", e, factor()});
      else
        return e;
    }
  }

  NodePtr factor() {
    if (consume('-')) return make({Node::Kind::Neg, 0, "", factor(), nullptr});
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (consume('^')) return make({Node::Kind::Pow, 0, "", base, factor()});
    return base;
  }

  NodePtr atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      NodePtr e = expression();
      if (!consume(')')) throw ParseError("expected ')'", pos_ + 1);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw ParseError(pos_ < s_.size() ? "unexpected character" : "unexpected end of input",
                     pos_ + 1);
  }

  NodePtr number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw ParseError("malformed number", pos_ + 1);
    pos_ += std::size_t(end - begin);
    return lit(v);
  }

  NodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name == "r") return make({Node::Kind::Variable});
    if (name == "exp" || name == "sin" || name == "cos" || name == "sqrt" ||
        name == "log") {
      if (!consume('(')) throw ParseError("expected '(' after function", pos_ + 1);
      NodePtr arg = expression();
      if (!consume(')')) throw ParseError("expected ')'", pos_ + 1);
      return call(name, arg);
    }
    throw ParseError("unknown identifier '" + name + "'", start + 1);
  }
};

int precedence(Node::Kind k) {
  switch (k) {
    case Node::Kind::Add:
    case Node::Kind::Sub:
      return 1;
    case Node::Kind::Mul:
    case Node::Kind::Div:
      return 2;
    case Node::Kind::Neg:
      return 3;
    case Node::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

void print(const NodePtr& n, std::string& out, int parent_prec, bool right_side) {
  int prec = precedence(n->kind);
  bool parens = prec < parent_prec || (prec == parent_prec && right_side);
  if (parens) out += '(';
  switch (n->kind) {
    case Node::Kind::Literal: {
      char buf[32];
      if (n->literal < 0) {
        std::snprintf(buf, sizeof(buf), "(%.17g)", n->literal);
      } else {
        std::snprintf(buf, sizeof(buf), "%.17g", n->literal);
      }
      out += buf;
      break;
    }
    case Node::Kind::Variable:
      out += 'r';
      break;
    case Node::Kind::Neg:
      out += '-';
      print(n->lhs, out, prec, true);
      break;
    case Node::Kind::Add:
    case Node::Kind::Sub:
      print(n->lhs, out, prec, false);
      out += n->kind == Node::Kind::Add ? '+' : '-';
      print(n->rhs, out, prec, true);
      break;
    case Node::Kind::Mul:
    case Node::Kind::Div:
      print(n->lhs, out, prec, false);
      out += n->kind == Node::Kind::Mul ? '*' : '/';
      print(n->rhs, out, prec, true);
      break;
    case Node::Kind::Pow:
      print(n->lhs, out, prec + 1, false);  // left operand of ^ needs parens if compound
      out += '^';
      print(n->rhs, out, prec, false);  // right-associative
      break;
    case Node::Kind::Call:
      out += n->func;
      out += '(';
      print(n->lhs, out, 0, false);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

}  // namespace

NodePtr parse(const std::string& text) { return Parser(text).run(); }

double eval(const NodePtr& n, double r) {
  switch (n->kind) {
    case Node::Kind::Literal: return n->literal;
    case Node::Kind::Variable: return r;
    case Node::Kind::Neg: return -eval(n->lhs, r);
    case Node::Kind::Add: return eval(n->lhs, r) + eval(n->rhs, r);
    case Node::Kind::Sub: return eval(n->lhs, r) - eval(n->rhs, r);
    case Node::Kind::Mul: return eval(n->lhs, r) * eval(n->rhs, r);
    case Node::Kind::Div: return eval(n->lhs, r) / eval(n->rhs, r);
    case Node::Kind::Pow: return std::pow(eval(n->lhs, r), eval(n->rhs, r));
    case Node::Kind::Call: {
      double a = eval(n->lhs, r);
      if (n->func == "exp") return std::exp(a);
      if (n->func == "sin") return std::sin(a);
      if (n->func == "cos") return std::cos(a);
      if (n->func == "sqrt") return std::sqrt(a);
      return std::log(a);
    }
  }
  return 0.0;
}

NodePtr differentiate(const NodePtr& n) {
  switch (n->kind) {
    case Node::Kind::Literal: return lit(0.0);
    case Node::Kind::Variable: return lit(1.0);
    case Node::Kind::Neg: return neg(differentiate(n->lhs));
    case Node::Kind::Add: return add(differentiate(n->lhs), differentiate(n->rhs));
    case Node::Kind::Sub: return sub(differentiate(n->lhs), differentiate(n->rhs));
    case Node::Kind::Mul:
      return add(mul(differentiate(n->lhs), n->rhs),
                 mul(n->lhs, differentiate(n->rhs)));
    case Node::Kind::Div:
      return div(sub(mul(differentiate(n->lhs), n->rhs),
                     mul(n->lhs, differentiate(n->rhs))),
                 pow_node(n->rhs, lit(2.0)));
    case Node::Kind::Pow: {
      if (n->rhs->kind == Node::Kind::Literal) {
        double k = n->rhs->literal;
        return mul(mul(lit(k), pow_node(n->lhs, lit(k - 1.0))),
                   differentiate(n->lhs));
      }
      // u^v = exp(v log u)
      NodePtr u = n->lhs, v = n->rhs;
      NodePtr inner = add(mul(differentiate(v), call("log", u)),
                          div(mul(v, differentiate(u)), u));
      return mul(pow_node(u, v), inner);
    }
    case Node::Kind::Call: {
      NodePtr a = n->lhs;
      NodePtr da = differentiate(a);
      if (n->func == "exp") return mul(call("exp", a), da);
      if (n->func == "sin") return mul(call("cos", a), da);
      if (n->func == "cos") return neg(mul(call("sin", a), da));
      if (n->func == "sqrt") return div(da, mul(lit(2.0), call("sqrt", a)));
      return div(da, a);  // log
    }
  }
  return lit(0.0);
}

std::string to_string(const NodePtr& n) {
  std::string out;
  print(n, out, 0, false);
  return out;
}

ProfileExpression parse_profile(const std::string& text) {
  NodePtr tree = parse(text);
  return {text, tree, differentiate(tree)};
}

metric::RadialProfile profile_from_expression(const std::string& text) {
  auto pe = std::make_shared<ProfileExpression>(parse_profile(text));
  return metric::RadialProfile::from_callables(
      [pe](double r) { return (*pe)(r); },
      [pe](double r) { return pe->derivative(r); },
      metric::RadialProfile::Source::Expression);
}

}  // namespace geoxray::expr
