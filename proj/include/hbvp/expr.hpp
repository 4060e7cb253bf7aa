#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hbvp {

/// Raised by Expr::parse. offset() is the byte position in the source.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Raised on evaluation outside an operation's domain (x/0, log(-1), ...).
class DomainError : public std::runtime_error {
public:
  DomainError(const std::string& what, std::string node);
  const std::string& node() const noexcept { return node_; }

private:
  std::string node_;
};

/// Immutable expression tree over a fixed, ordered list of real variables.
///
/// Grammar (whitespace ignored):
///   expr  := term (('+'|'-') term)*
///   term  := unary (('*'|'/') unary)*
///   unary := '-' unary | power
///   power := atom ('^' unary)?          right-associative, binds tightest
///   atom  := number | ident | ident '(' expr ')' | '(' expr ')'
/// Functions: sin cos exp sqrt log abs. Built-in constants: pi e.
class Expr {
public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  Expr() = default;

  /// Parses `source`; identifiers must be one of `variables`, a key of
  /// `constants`, a built-in constant, or a function name.
  static Expr parse(std::string_view source, std::vector<std::string> variables,
                    const std::map<std::string, double>& constants = {});

  static Expr constant(double value, std::vector<std::string> variables);

  /// Values are given in the order of variables().
  double evaluate(std::span<const double> values) const;
  double evaluate(const std::map<std::string, double>& bindings) const;
  double operator()(double a) const;
  double operator()(double a, double b) const;

  Expr differentiate(std::string_view variable) const;

  /// Fully parenthesized text that parses back to the same function.
  std::string to_string() const;

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  bool is_constant() const;
  bool empty() const noexcept { return !root_; }

private:
  Expr(NodePtr root, std::vector<std::string> variables)
      : root_(std::move(root)), variables_(std::move(variables)) {}

  NodePtr root_;
  std::vector<std::string> variables_;
};

}  // namespace hbvp
