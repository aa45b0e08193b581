#pragma once

// Scalar field expressions over chart coordinates (u, v).
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | 'u' | 'v' | func '(' expr (',' expr)* ')' | '(' expr ')'
//   func    := sin | cos | exp | sqrt | abs (one argument) | min | max (two)
//
// '^' binds tighter than unary minus and is right-associative, so -2^2 = -4
// and 2^3^2 = 2^9. The other binary operators are left-associative.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "thinlayer/vec3.hpp"

namespace thinlayer {

class FieldExpr {
 public:
  enum class Op : std::uint8_t {
    number, var_u, var_v,
    add, sub, mul, div, pow, neg,
    sin, cos, exp, sqrt, abs, min, max,
  };

  struct Node {
    Op op;
    double value = 0.0;  // number literal
    int lhs = -1;        // first child (or the only one)
    int rhs = -1;        // second child
    friend bool operator==(const Node &, const Node &) = default;
  };

  /// Constant expression (used for defaults).
  static FieldExpr constant(double value);

  /// Throws DomainError if any intermediate result is undefined or non-finite.
  double eval(double u, double v) const;

  /// Canonical text form with the minimal parentheses; parses back to an equal tree.
  std::string to_string() const;

  const std::vector<Node> &nodes() const { return nodes_; }
  int root() const { return root_; }
  /// Structural equality of the expression trees.
  friend bool operator==(const FieldExpr &, const FieldExpr &) = default;

 private:
  friend class ExprParser;
  double eval_node(int i, double u, double v) const;
  void print_node(int i, std::string &out) const;

  std::vector<Node> nodes_;
  int root_ = -1;
};

/// Throws ParseError (syntax, with position) on malformed or unknown input.
FieldExpr parse_field(std::string_view text);

inline double eval_field(const FieldExpr &expr, double u, double v) { return expr.eval(u, v); }

/// Complex-valued field held as separate real and imaginary expressions.
struct ComplexField {
  FieldExpr re = FieldExpr::constant(0.0);
  FieldExpr im = FieldExpr::constant(0.0);

  cplx eval(double u, double v) const { return {re.eval(u, v), im.eval(u, v)}; }
};

}  // namespace thinlayer
