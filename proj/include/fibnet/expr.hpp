#pragma once

// Small math expression language for right-hand sides and exact solutions.
//
//   expr  := term (("+"|"-") term)*
//   term  := unary (("*"|"/") unary)*
//   unary := "-" unary | power
//   power := atom ("^" unary)?
//   atom  := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")"
//
// Functions: gamma, sqrt. The identifier "pi" always evaluates to pi.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>

namespace fibnet {

enum class BinaryOp { kAdd, kSub, kMul, kDiv, kPow };
enum class Function { kGamma, kSqrt };

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct NumberNode {
  double value;
};
struct VarNode {
  std::string name;
};
struct NegNode {
  ExprNodePtr child;
};
struct BinaryNode {
  BinaryOp op;
  ExprNodePtr lhs;
  ExprNodePtr rhs;
};
struct CallNode {
  Function fn;
  ExprNodePtr arg;
};

struct ExprNode {
  std::variant<NumberNode, VarNode, NegNode, BinaryNode, CallNode> data;
};

/// Immutable expression tree. Copies share nodes.
class Expr {
 public:
  /// The constant 0.
  Expr();
  /// Wraps an existing node without any folding.
  explicit Expr(ExprNodePtr root);

  static Expr number(double value);
  /// Throws DomainError unless `name` is an identifier.
  static Expr var(std::string name);
  static Expr call(Function fn, Expr arg);

  const ExprNode& node() const noexcept { return *root_; }
  const ExprNodePtr& root() const noexcept { return root_; }

  bool depends_on(std::string_view name) const;
  /// Every variable name in the tree ("pi" excluded).
  std::set<std::string> variables() const;
  /// Holds a single NumberNode.
  std::optional<double> constant_value() const;

  // The arithmetic operators fold constants and drop additive zeros and
  // multiplicative ones; parse() never folds.
  friend Expr operator-(const Expr& e);
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr pow(const Expr& base, const Expr& exponent);

 private:
  ExprNodePtr root_;
};

/// Variable bindings used by eval.
class Env {
 public:
  Env() = default;
  Env(std::initializer_list<std::pair<const std::string, double>> init) : values_(init) {}

  void set(std::string name, double value) { values_[std::move(name)] = value; }
  std::optional<double> find(std::string_view name) const;

 private:
  std::map<std::string, double, std::less<>> values_;
};

/// Throws SyntaxError with the offending character offset.
Expr parse(std::string_view text);

/// Throws EvalError (unbound name, division by zero, sqrt of a negative) and
/// lets PoleError/OverflowError from gamma propagate.
double eval(const Expr& e, const Env& env);

/// Partial derivative with respect to `var`. Throws UnsupportedDiffError when
/// `var` appears inside a function argument or an exponent.
Expr diff(const Expr& e, std::string_view var);

/// Parseable text with the minimum of parentheses needed to round-trip.
std::string to_string(const Expr& e);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

}  // namespace fibnet
