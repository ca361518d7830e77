#ifndef GEOXRAY_EXPR_HPP
#define GEOXRAY_EXPR_HPP

#include <memory>
#include <stdexcept>
#include <string>

#include "geoxray/profile.hpp"

namespace geoxray::expr {

/// Syntax error with a 1-based byte offset into the source text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)),
        offset(offset) {}
  std::size_t offset;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Expression over literals, the variable r, + - * / ^, parentheses and
/// the functions exp, sin, cos, sqrt, log.
struct Node {
  enum class Kind { Literal, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind;
  double literal = 0.0;
  std::string func;  // Call only
  NodePtr lhs, rhs;  // rhs empty for unary
};

NodePtr parse(const std::string& text);
double eval(const NodePtr& node, double r);
NodePtr differentiate(const NodePtr& node);
std::string to_string(const NodePtr& node);

/// Parsed profile text with its symbolic derivative.
struct ProfileExpression {
  std::string source;
  NodePtr tree;
  NodePtr derivative_tree;

  double operator()(double r) const { return eval(tree, r); }
  double derivative(double r) const { return eval(derivative_tree, r); }
};

ProfileExpression parse_profile(const std::string& text);

/// RadialProfile evaluating the tree, with the symbolic derivative.
metric::RadialProfile profile_from_expression(const std::string& text);

}  // namespace geoxray::expr

#endif
