#include "fibnet/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <system_error>

#include "fibnet/errors.hpp"
#include "fibnet/gamma.hpp"

namespace fibnet {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

ExprNodePtr make_node(auto&& payload) {
  return std::make_shared<const ExprNode>(ExprNode{std::forward<decltype(payload)>(payload)});
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

std::optional<Function> function_by_name(std::string_view name) {
  if (name == "gamma") return Function::kGamma;
  if (name == "sqrt") return Function::kSqrt;
  return std::nullopt;
}

const char* function_name(Function fn) { return fn == Function::kGamma ? "gamma" : "sqrt"; }

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    skip_ws();
    if (pos_ == text_.size()) throw SyntaxError(pos_, "empty expression");
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) {
      if (text_[pos_] == ')') throw SyntaxError(pos_, "unbalanced parenthesis");
      throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    }
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static Expr binary(BinaryOp op, const Expr& l, const Expr& r) {
    return Expr(make_node(BinaryNode{op, l.root(), r.root()}));
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = binary(BinaryOp::kAdd, lhs, parse_term());
      } else if (accept('-')) {
        lhs = binary(BinaryOp::kSub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = binary(BinaryOp::kMul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = binary(BinaryOp::kDiv, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return Expr(make_node(NegNode{parse_unary().root()}));
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (accept('^')) return binary(BinaryOp::kPow, base, parse_unary());
    return base;
  }

  Expr parse_atom() {
    skip_ws();
    if (pos_ == text_.size()) throw SyntaxError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      const std::size_t open = pos_++;
      Expr inner = parse_expr();
      if (!accept(')')) throw SyntaxError(open, "unbalanced parenthesis");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        const auto fn = function_by_name(name);
        if (!fn) throw SyntaxError(start, "unknown function '" + name + "'");
        const std::size_t open = pos_++;
        Expr arg = parse_expr();
        if (!accept(')')) throw SyntaxError(open, "unbalanced parenthesis");
        return Expr::call(*fn, arg);
      }
      return Expr::var(std::move(name));
    }
    if (c == ')') throw SyntaxError(pos_, "unbalanced parenthesis");
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw SyntaxError(start, "malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw SyntaxError(start, "malformed exponent in number");
    }
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      throw SyntaxError(start, "number out of range");
    }
    // Reject implicit multiplication such as "2t".
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
                                text_[pos_] == '(')) {
      throw SyntaxError(pos_, "unexpected token after number (implicit multiplication is not supported)");
    }
    return Expr::number(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecNeg = 3;
constexpr int kPrecPow = 4;
constexpr int kPrecAtom = 5;

int precedence(const ExprNode& n) {
  return std::visit(Overloaded{
                        [](const NumberNode& v) { return v.value < 0.0 ? kPrecNeg : kPrecAtom; },
                        [](const VarNode&) { return kPrecAtom; },
                        [](const NegNode&) { return kPrecNeg; },
                        [](const BinaryNode& b) {
                          switch (b.op) {
                            case BinaryOp::kAdd:
                            case BinaryOp::kSub:
                              return kPrecAdd;
                            case BinaryOp::kMul:
                            case BinaryOp::kDiv:
                              return kPrecMul;
                            case BinaryOp::kPow:
                              return kPrecPow;
                          }
                          return kPrecAtom;
                        },
                        [](const CallNode&) { return kPrecAtom; },
                    },
                    n.data);
}

void print(const ExprNode& n, std::string& out);

void print_at(const ExprNode& n, int min_prec, std::string& out) {
  if (precedence(n) < min_prec) {
    out += '(';
    print(n, out);
    out += ')';
  } else {
    print(n, out);
  }
}

void print(const ExprNode& n, std::string& out) {
  std::visit(Overloaded{
                 [&](const NumberNode& v) { out += format_double(v.value); },
                 [&](const VarNode& v) { out += v.name; },
                 [&](const NegNode& v) {
                   out += '-';
                   print_at(*v.child, kPrecNeg, out);
                 },
                 [&](const BinaryNode& b) {
                   const int p = precedence(n);
                   if (b.op == BinaryOp::kPow) {
                     print_at(*b.lhs, kPrecAtom, out);
                     out += '^';
                     print_at(*b.rhs, kPrecNeg, out);
                     return;
                   }
                   print_at(*b.lhs, p, out);
                   switch (b.op) {
                     case BinaryOp::kAdd: out += " + "; break;
                     case BinaryOp::kSub: out += " - "; break;
                     case BinaryOp::kMul: out += '*'; break;
                     case BinaryOp::kDiv: out += '/'; break;
                     case BinaryOp::kPow: break;
                   }
                   print_at(*b.rhs, p + 1, out);
                 },
                 [&](const CallNode& c) {
                   out += function_name(c.fn);
                   out += '(';
                   print(*c.arg, out);
                   out += ')';
                 },
             },
             n.data);
}

// ---------------------------------------------------------------------------
// Evaluation

double eval_node(const ExprNode& n, const Env& env) {
  return std::visit(
      Overloaded{
          [](const NumberNode& v) { return v.value; },
          [&](const VarNode& v) {
            if (v.name == "pi") return std::numbers::pi;
            const auto value = env.find(v.name);
            if (!value) throw EvalError("unbound variable '" + v.name + "'");
            return *value;
          },
          [&](const NegNode& v) { return -eval_node(*v.child, env); },
          [&](const BinaryNode& b) {
            const double l = eval_node(*b.lhs, env);
            const double r = eval_node(*b.rhs, env);
            switch (b.op) {
              case BinaryOp::kAdd: return l + r;
              case BinaryOp::kSub: return l - r;
              case BinaryOp::kMul: return l * r;
              case BinaryOp::kDiv:
                if (r == 0.0) throw EvalError("division by zero");
                return l / r;
              case BinaryOp::kPow: return std::pow(l, r);
            }
            return 0.0;
          },
          [&](const CallNode& c) {
            const double a = eval_node(*c.arg, env);
            if (c.fn == Function::kGamma) return gamma(a);
            if (a < 0.0) throw EvalError("sqrt of negative value " + std::to_string(a));
            return std::sqrt(a);
          },
      },
      n.data);
}

bool node_depends_on(const ExprNode& n, std::string_view name) {
  return std::visit(Overloaded{
                        [](const NumberNode&) { return false; },
                        [&](const VarNode& v) { return v.name == name; },
                        [&](const NegNode& v) { return node_depends_on(*v.child, name); },
                        [&](const BinaryNode& b) {
                          return node_depends_on(*b.lhs, name) || node_depends_on(*b.rhs, name);
                        },
                        [&](const CallNode& c) { return node_depends_on(*c.arg, name); },
                    },
                    n.data);
}

void collect_vars(const ExprNode& n, std::set<std::string>& out) {
  std::visit(Overloaded{
                 [](const NumberNode&) {},
                 [&](const VarNode& v) {
                   if (v.name != "pi") out.insert(v.name);
                 },
                 [&](const NegNode& v) { collect_vars(*v.child, out); },
                 [&](const BinaryNode& b) {
                   collect_vars(*b.lhs, out);
                   collect_vars(*b.rhs, out);
                 },
                 [&](const CallNode& c) { collect_vars(*c.arg, out); },
             },
             n.data);
}

Expr diff_node(const Expr& e, std::string_view var) {
  if (!e.depends_on(var)) return Expr::number(0.0);
  return std::visit(
      Overloaded{
          [](const NumberNode&) { return Expr::number(0.0); },
          [](const VarNode&) { return Expr::number(1.0); },
          [&](const NegNode& v) { return -diff_node(Expr(v.child), var); },
          [&](const BinaryNode& b) {
            const Expr u(b.lhs);
            const Expr v(b.rhs);
            switch (b.op) {
              case BinaryOp::kAdd: return diff_node(u, var) + diff_node(v, var);
              case BinaryOp::kSub: return diff_node(u, var) - diff_node(v, var);
              case BinaryOp::kMul: return diff_node(u, var) * v + u * diff_node(v, var);
              case BinaryOp::kDiv:
                return (diff_node(u, var) * v - u * diff_node(v, var)) / pow(v, Expr::number(2.0));
              case BinaryOp::kPow:
                if (v.depends_on(var)) {
                  throw UnsupportedDiffError("cannot differentiate with respect to '" +
                                             std::string(var) + "' inside an exponent");
                }
                return v * pow(u, v - Expr::number(1.0)) * diff_node(u, var);
            }
            return Expr::number(0.0);
          },
          [&](const CallNode& c) -> Expr {
            throw UnsupportedDiffError("cannot differentiate with respect to '" +
                                       std::string(var) + "' inside " + function_name(c.fn) +
                                       "()");
          },
      },
      e.node().data);
}

}  // namespace

// ---------------------------------------------------------------------------
// Expr

Expr::Expr() : root_(make_node(NumberNode{0.0})) {}

Expr::Expr(ExprNodePtr root) : root_(std::move(root)) {}

Expr Expr::number(double value) { return Expr(make_node(NumberNode{value})); }

Expr Expr::var(std::string name) {
  if (!is_identifier(name)) throw DomainError("invalid identifier '" + name + "'");
  return Expr(make_node(VarNode{std::move(name)}));
}

Expr Expr::call(Function fn, Expr arg) { return Expr(make_node(CallNode{fn, arg.root_})); }

bool Expr::depends_on(std::string_view name) const { return node_depends_on(*root_, name); }

std::set<std::string> Expr::variables() const {
  std::set<std::string> out;
  collect_vars(*root_, out);
  return out;
}

std::optional<double> Expr::constant_value() const {
  if (const auto* n = std::get_if<NumberNode>(&root_->data)) return n->value;
  return std::nullopt;
}

Expr operator-(const Expr& e) {
  if (const auto c = e.constant_value()) return Expr::number(-*c);
  return Expr(make_node(NegNode{e.root_}));
}

Expr operator+(const Expr& a, const Expr& b) {
  const auto ca = a.constant_value();
  const auto cb = b.constant_value();
  if (ca && cb) return Expr::number(*ca + *cb);
  if (ca && *ca == 0.0) return b;
  if (cb && *cb == 0.0) return a;
  return Expr(make_node(BinaryNode{BinaryOp::kAdd, a.root_, b.root_}));
}

Expr operator-(const Expr& a, const Expr& b) {
  const auto ca = a.constant_value();
  const auto cb = b.constant_value();
  if (ca && cb) return Expr::number(*ca - *cb);
  if (cb && *cb == 0.0) return a;
  if (ca && *ca == 0.0) return -b;
  return Expr(make_node(BinaryNode{BinaryOp::kSub, a.root_, b.root_}));
}

Expr operator*(const Expr& a, const Expr& b) {
  const auto ca = a.constant_value();
  const auto cb = b.constant_value();
  if (ca && cb) return Expr::number(*ca * *cb);
  if ((ca && *ca == 0.0) || (cb && *cb == 0.0)) return Expr::number(0.0);
  if (ca && *ca == 1.0) return b;
  if (cb && *cb == 1.0) return a;
  return Expr(make_node(BinaryNode{BinaryOp::kMul, a.root_, b.root_}));
}

Expr operator/(const Expr& a, const Expr& b) {
  const auto cb = b.constant_value();
  if (cb && *cb == 1.0) return a;
  return Expr(make_node(BinaryNode{BinaryOp::kDiv, a.root_, b.root_}));
}

Expr pow(const Expr& base, const Expr& exponent) {
  const auto ce = exponent.constant_value();
  if (ce && *ce == 1.0) return base;
  if (ce && *ce == 0.0) return Expr::number(1.0);
  return Expr(make_node(BinaryNode{BinaryOp::kPow, base.root_, exponent.root_}));
}

std::optional<double> Env::find(std::string_view name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

double eval(const Expr& e, const Env& env) { return eval_node(e.node(), env); }

Expr diff(const Expr& e, std::string_view var) { return diff_node(e, var); }

std::string to_string(const Expr& e) {
  std::string out;
  print(e.node(), out);
  return out;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace fibnet
