#pragma once

#include <memory>
#include <string>

namespace nlcflow {

/// Analytic expression in x and y. Grammar:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' unary)?
///   primary := number | 'x' | 'y' | 'pi' | func '(' expr ')' | '(' expr ')'
///   func    := sin | cos | exp | tanh | sqrt
///
/// Throws Error(kConfigError) on malformed input.
class Expression {
 public:
  struct Node;

  Expression();  // the constant 0
  static Expression parse(const std::string& text);
  static Expression constant(double value);

  double operator()(double x, double y) const;
  const std::string& source() const { return source_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string source_;
};

}  // namespace nlcflow
