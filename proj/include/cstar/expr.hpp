#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "cstar/algebra.hpp"

namespace cstar::expr {

// AST of a *-algebra expression over named elements. Scalar literals are
// first-class nodes; whether a literal means a scalar factor or the element
// scalar * 1 is resolved at evaluation time. The parser folds constant
// arithmetic (so "1+2i" is a single literal) and rewrites scalar-by-element
// products into Scale nodes.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Name, ScalarLit, Add, Sub, Mul, Scale, Adjoint, Identity };

  Kind kind;
  std::string name;          // Name
  Complex scalar = 0.0;      // ScalarLit, Scale
  ExprPtr lhs, rhs;          // binary nodes; Scale and Adjoint use lhs only

  static ExprPtr make_name(std::string n);
  static ExprPtr make_scalar(Complex c);
  static ExprPtr make_identity();
  static ExprPtr make_add(ExprPtr l, ExprPtr r);
  static ExprPtr make_sub(ExprPtr l, ExprPtr r);
  static ExprPtr make_mul(ExprPtr l, ExprPtr r);
  static ExprPtr make_scale(Complex c, ExprPtr e);
  static ExprPtr make_adjoint(ExprPtr e);
};

// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := '-' factor | postfix
//   postfix := primary ("'")*          adjoint, binds tighter than '*'
//   primary := NUMBER | IDENT | 'I' | '(' expr ')'
//   NUMBER  := digits ['.' digits] ['i']
// 'I' is reserved for the identity element; juxtaposition is not
// multiplication. Throws SyntaxError carrying the byte offset of the first
// invalid token and the expected-token set.
ExprPtr parse(std::string_view src);

// Reparseable rendering; parse(to_string(e)) == e structurally for trees in
// parser normal form.
std::string to_string(const Expr& e);

bool equal(const Expr& a, const Expr& b);

struct Environment {
  AlgebraShape shape;
  std::map<std::string, AlgebraElement> bindings;
};

// Structural evaluation over algebra_core operations. A scalar subtree
// standing where an element is required means scalar * identity. Throws
// UnboundName for names missing from the environment.
AlgebraElement evaluate_expr(const Expr& e, const Environment& env);

}  // namespace cstar::expr
