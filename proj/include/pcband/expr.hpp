#pragma once

#include <memory>
#include <string>

#include "pcband/profile.hpp"

namespace pcband {

// Parsed profile expression.  Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-'* power
//   power   := primary ('^' unary)?          (right associative)
//   primary := number | 'x' | 'pi' | fn '(' expr ')' | '(' expr ')'
//   fn      := sin | cos | exp | sqrt | abs
// Numbers are decimal literals with optional fraction and exponent.
class Expression {
public:
  struct Node;

  double eval(double x) const;
  // Fully parenthesized canonical form; re-parsing it yields an evaluator
  // identical to this one.
  const std::string& pretty() const { return pretty_; }

private:
  friend Expression parse_expression(const std::string&);
  std::shared_ptr<const Node> root_;
  std::string pretty_;
};

// Parse an expression in the variable x.  Throws parse_error (with a
// 0-based input position) on malformed input or unknown identifiers.
Expression parse_expression(const std::string& text);

// Build a periodic profile from an expression: the evaluator wraps x into
// [-L/2, L/2), the derivative is a central finite difference with step
// 1e-6*L, and positivity of n is validated on a 1024-point sample grid at
// parse time.  Expression profiles are treated as smooth (no jump or kink
// detection); the symmetry flag is set by sampling n(x) against n(-x).
Profile parse_profile_expr(const std::string& text, double period_L = 1.0);

}  // namespace pcband
