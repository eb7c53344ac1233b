#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace wg {

/// Arithmetic expression in x, y, u. Grammar, loosest binding first:
///
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?          right associative
///   primary := number | x | y | u | pi | fn '(' sum ')' | '(' sum ')'
///   fn      := sin | cos | exp | sqrt | abs
class Expr {
public:
  struct Node;

  /// Throws ParseError carrying the byte offset of the offending token.
  static Expr parse(std::string_view text);

  /// Throws EvalError on division by zero, sqrt of a negative number, or a
  /// negative base raised to a non-integer power.
  double operator()(double x, double y, double u = 0.0) const;

  /// Fully parenthesized form; parse(print()).print() == print().
  std::string print() const;

private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

}  // namespace wg
