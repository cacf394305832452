#pragma once

// Expression trees for user-supplied section functions.
//
// Grammar (whitespace ignored):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | 'x' | 'y' | 'z'
//            | ('exp' | 'sin' | 'cos') '(' expr ')' | '(' expr ')'
//
// So -x^2 is -(x^2) and 2^3^2 is 2^9.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace solvloop::expr {

enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Exp, Sin, Cos };

struct Node {
  Op op = Op::Const;
  double value = 0;  // Const
  char var = 0;      // Var: 'x', 'y' or 'z'
  std::shared_ptr<const Node> lhs, rhs;  // rhs only for binary ops
};

using NodePtr = std::shared_ptr<const Node>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class EvalError : public std::domain_error {
  using std::domain_error::domain_error;
};

class Tree {
 public:
  explicit Tree(NodePtr root);

  /// Throws EvalError on division by a value with magnitude below 1e-300.
  double eval(double x, double y, double z) const;
  /// Fully parenthesized text that parses back to an equal tree.
  std::string to_string() const;
  bool uses(char var) const;
  const Node& root() const { return *root_; }

  friend bool operator==(const Tree& a, const Tree& b);

 private:
  NodePtr root_;
};

/// Parses `text`. Identifiers other than the functions and the variables in
/// `allowed_vars` are rejected.
Tree parse(std::string_view text, std::string_view allowed_vars = "xyz");

NodePtr constant(double v);
NodePtr variable(char v);
NodePtr unary(Op op, NodePtr arg);
NodePtr binary(Op op, NodePtr lhs, NodePtr rhs);

}  // namespace solvloop::expr
