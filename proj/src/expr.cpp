#include "hbvp/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hbvp {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

DomainError::DomainError(const std::string& what, std::string node)
    : std::runtime_error(what + " in '" + node + "'"), node_(std::move(node)) {}

enum class Op { Const, Var, Neg, Sin, Cos, Exp, Sqrt, Log, Abs, Add, Sub, Mul, Div, Pow };

struct Expr::Node {
  Op op;
  double value = 0.0;
  std::size_t var = 0;
  NodePtr a, b;
};

namespace {

using NodePtr = Expr::NodePtr;
using Node = Expr::Node;

NodePtr make_const(double v) { return std::make_shared<const Node>(Node{Op::Const, v, 0, {}, {}}); }
NodePtr make_var(std::size_t i) { return std::make_shared<const Node>(Node{Op::Var, 0.0, i, {}, {}}); }

bool is_const(const NodePtr& n, double v) { return n->op == Op::Const && n->value == v; }

double apply_unary(Op op, double a);
double apply_binary(Op op, double a, double b);

// Builders fold constants and drop additive/multiplicative identities.
NodePtr unary(Op op, NodePtr a) {
  if (a->op == Op::Const) {
    double v = apply_unary(op, a->value);
    if (std::isfinite(v)) return make_const(v);
  }
  if (op == Op::Neg && a->op == Op::Neg) return a->a;
  return std::make_shared<const Node>(Node{op, 0.0, 0, std::move(a), {}});
}

NodePtr binary(Op op, NodePtr a, NodePtr b) {
  if (a->op == Op::Const && b->op == Op::Const) {
    double v = apply_binary(op, a->value, b->value);
    if (std::isfinite(v)) return make_const(v);
  }
  switch (op) {
    case Op::Add:
      if (is_const(a, 0.0)) return b;
      if (is_const(b, 0.0)) return a;
      break;
    case Op::Sub:
      if (is_const(b, 0.0)) return a;
      if (is_const(a, 0.0)) return unary(Op::Neg, b);
      break;
    case Op::Mul:
      if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
      if (is_const(a, 1.0)) return b;
      if (is_const(b, 1.0)) return a;
      break;
    case Op::Div:
      if (is_const(b, 1.0)) return a;
      if (is_const(a, 0.0) && b->op == Op::Const && b->value != 0.0) return make_const(0.0);
      break;
    case Op::Pow:
      if (is_const(b, 1.0)) return a;
      if (is_const(b, 0.0)) return make_const(1.0);
      break;
    default:
      break;
  }
  return std::make_shared<const Node>(Node{op, 0.0, 0, std::move(a), std::move(b)});
}

double apply_unary(Op op, double a) {
  switch (op) {
    case Op::Neg: return -a;
    case Op::Sin: return std::sin(a);
    case Op::Cos: return std::cos(a);
    case Op::Exp: return std::exp(a);
    case Op::Sqrt: return a < 0.0 ? std::nan("") : std::sqrt(a);
    case Op::Log: return a <= 0.0 ? std::nan("") : std::log(a);
    case Op::Abs: return std::fabs(a);
    default: return std::nan("");
  }
}

double apply_binary(Op op, double a, double b) {
  switch (op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Div: return b == 0.0 ? std::nan("") : a / b;
    case Op::Pow: return std::pow(a, b);
    default: return std::nan("");
  }
}

const char* function_name(Op op) {
  switch (op) {
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Exp: return "exp";
    case Op::Sqrt: return "sqrt";
    case Op::Log: return "log";
    case Op::Abs: return "abs";
    default: return nullptr;
  }
}

char operator_symbol(Op op) {
  switch (op) {
    case Op::Add: return '+';
    case Op::Sub: return '-';
    case Op::Mul: return '*';
    case Op::Div: return '/';
    case Op::Pow: return '^';
    default: return '?';
  }
}

void print(const Node& n, const std::vector<std::string>& vars, std::ostream& os) {
  switch (n.op) {
    case Op::Const: {
      char buf[64];
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, n.value);
      std::string_view s(buf, static_cast<std::size_t>(end - buf));
      if (n.value < 0.0) os << '(' << s << ')';
      else os << s;
      return;
    }
    case Op::Var: os << vars[n.var]; return;
    case Op::Neg: os << "(-"; print(*n.a, vars, os); os << ')'; return;
    case Op::Add: case Op::Sub: case Op::Mul: case Op::Div: case Op::Pow:
      os << '(';
      print(*n.a, vars, os);
      os << ' ' << operator_symbol(n.op) << ' ';
      print(*n.b, vars, os);
      os << ')';
      return;
    default:
      os << function_name(n.op) << '(';
      print(*n.a, vars, os);
      os << ')';
      return;
  }
}

std::string node_text(const Node& n, const std::vector<std::string>& vars) {
  std::ostringstream os;
  print(n, vars, os);
  return os.str();
}

double eval(const Node& n, std::span<const double> x, const std::vector<std::string>& vars) {
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return x[n.var];
    case Op::Neg: return -eval(*n.a, x, vars);
    case Op::Add: return eval(*n.a, x, vars) + eval(*n.b, x, vars);
    case Op::Sub: return eval(*n.a, x, vars) - eval(*n.b, x, vars);
    case Op::Mul: return eval(*n.a, x, vars) * eval(*n.b, x, vars);
    case Op::Div: {
      double num = eval(*n.a, x, vars);
      double den = eval(*n.b, x, vars);
      if (den == 0.0) throw DomainError("division by zero", node_text(n, vars));
      return num / den;
    }
    case Op::Pow: {
      double base = eval(*n.a, x, vars);
      double ex = eval(*n.b, x, vars);
      double r = std::pow(base, ex);
      if (!std::isfinite(r)) throw DomainError("power out of domain", node_text(n, vars));
      return r;
    }
    case Op::Sqrt: {
      double a = eval(*n.a, x, vars);
      if (a < 0.0) throw DomainError("sqrt of negative argument", node_text(n, vars));
      return std::sqrt(a);
    }
    case Op::Log: {
      double a = eval(*n.a, x, vars);
      if (a <= 0.0) throw DomainError("log of non-positive argument", node_text(n, vars));
      return std::log(a);
    }
    case Op::Exp: {
      double r = std::exp(eval(*n.a, x, vars));
      if (!std::isfinite(r)) throw DomainError("exp overflow", node_text(n, vars));
      return r;
    }
    case Op::Sin: return std::sin(eval(*n.a, x, vars));
    case Op::Cos: return std::cos(eval(*n.a, x, vars));
    case Op::Abs: return std::fabs(eval(*n.a, x, vars));
  }
  return 0.0;
}

NodePtr derive(const NodePtr& n, std::size_t v) {
  const NodePtr& a = n->a;
  const NodePtr& b = n->b;
  switch (n->op) {
    case Op::Const: return make_const(0.0);
    case Op::Var: return make_const(n->var == v ? 1.0 : 0.0);
    case Op::Neg: return unary(Op::Neg, derive(a, v));
    case Op::Add: return binary(Op::Add, derive(a, v), derive(b, v));
    case Op::Sub: return binary(Op::Sub, derive(a, v), derive(b, v));
    case Op::Mul:
      return binary(Op::Add, binary(Op::Mul, derive(a, v), b), binary(Op::Mul, a, derive(b, v)));
    case Op::Div:
      return binary(Op::Div,
                    binary(Op::Sub, binary(Op::Mul, derive(a, v), b), binary(Op::Mul, a, derive(b, v))),
                    binary(Op::Pow, b, make_const(2.0)));
    case Op::Pow: {
      NodePtr db = derive(b, v);
      if (is_const(db, 0.0)) {
        // d(f^c) = c f^(c-1) f'
        return binary(Op::Mul, binary(Op::Mul, b, binary(Op::Pow, a, binary(Op::Sub, b, make_const(1.0)))),
                      derive(a, v));
      }
      // d(f^g) = f^g (g' log f + g f'/f)
      return binary(Op::Mul, n,
                    binary(Op::Add, binary(Op::Mul, db, unary(Op::Log, a)),
                           binary(Op::Div, binary(Op::Mul, b, derive(a, v)), a)));
    }
    case Op::Sin: return binary(Op::Mul, unary(Op::Cos, a), derive(a, v));
    case Op::Cos: return unary(Op::Neg, binary(Op::Mul, unary(Op::Sin, a), derive(a, v)));
    case Op::Exp: return binary(Op::Mul, n, derive(a, v));
    case Op::Sqrt: return binary(Op::Div, derive(a, v), binary(Op::Mul, make_const(2.0), n));
    case Op::Log: return binary(Op::Div, derive(a, v), a);
    // |f|' = f' f / |f|; undefined where f = 0, reported on evaluation.
    case Op::Abs: return binary(Op::Div, binary(Op::Mul, derive(a, v), a), n);
  }
  return make_const(0.0);
}

class Parser {
public:
  Parser(std::string_view src, const std::vector<std::string>& vars,
         const std::map<std::string, double>& constants)
      : src_(src), vars_(vars), constants_(constants) {}

  NodePtr run() {
    skip();
    if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
    NodePtr n = expr();
    skip();
    if (pos_ < src_.size()) {
      if (src_[pos_] == ')') throw ParseError("unbalanced ')'", pos_);
      throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    }
    return n;
  }

private:
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = binary(Op::Add, lhs, term());
      else if (accept('-')) lhs = binary(Op::Sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary_expr();
    for (;;) {
      if (accept('*')) lhs = binary(Op::Mul, lhs, unary_expr());
      else if (accept('/')) lhs = binary(Op::Div, lhs, unary_expr());
      else return lhs;
    }
  }

  NodePtr unary_expr() {
    if (accept('-')) return unary(Op::Neg, unary_expr());
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) return binary(Op::Pow, base, unary_expr());
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!accept(')')) {
        skip();
        throw ParseError("expected ')'", pos_);
      }
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr number() {
    std::size_t start = pos_;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), v);
    if (ec != std::errc()) throw ParseError("malformed number", start);
    pos_ = static_cast<std::size_t>(ptr - src_.data());
    return make_const(v);
  }

  NodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string name(src_.substr(start, pos_ - start));

    static const std::map<std::string, Op> functions = {
        {"sin", Op::Sin}, {"cos", Op::Cos}, {"exp", Op::Exp},
        {"sqrt", Op::Sqrt}, {"log", Op::Log}, {"abs", Op::Abs}};
    if (auto f = functions.find(name); f != functions.end()) {
      if (!accept('(')) throw ParseError("expected '(' after function '" + name + "'", pos_);
      NodePtr arg = expr();
      if (!accept(')')) {
        skip();
        throw ParseError("expected ')'", pos_);
      }
      return unary(f->second, arg);
    }
    if (auto v = std::find(vars_.begin(), vars_.end(), name); v != vars_.end())
      return make_var(static_cast<std::size_t>(v - vars_.begin()));
    if (auto k = constants_.find(name); k != constants_.end()) return make_const(k->second);
    if (name == "pi") return make_const(std::numbers::pi);
    if (name == "e") return make_const(std::numbers::e);
    throw ParseError("unknown identifier '" + name + "'", start);
  }

  std::string_view src_;
  const std::vector<std::string>& vars_;
  const std::map<std::string, double>& constants_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr Expr::parse(std::string_view source, std::vector<std::string> variables,
                 const std::map<std::string, double>& constants) {
  Parser p(source, variables, constants);
  NodePtr root = p.run();
  return Expr(std::move(root), std::move(variables));
}

Expr Expr::constant(double value, std::vector<std::string> variables) {
  return Expr(make_const(value), std::move(variables));
}

double Expr::evaluate(std::span<const double> values) const {
  if (!root_) throw std::logic_error("evaluate on empty Expr");
  if (values.size() < variables_.size())
    throw std::invalid_argument("missing variable bindings");
  return eval(*root_, values, variables_);
}

double Expr::evaluate(const std::map<std::string, double>& bindings) const {
  std::vector<double> values;
  values.reserve(variables_.size());
  for (const auto& v : variables_) {
    auto it = bindings.find(v);
    if (it == bindings.end()) throw std::invalid_argument("no binding for variable '" + v + "'");
    values.push_back(it->second);
  }
  return evaluate(values);
}

double Expr::operator()(double a) const {
  const double v[1] = {a};
  return evaluate(std::span<const double>(v, 1));
}

double Expr::operator()(double a, double b) const {
  const double v[2] = {a, b};
  return evaluate(std::span<const double>(v, 2));
}

Expr Expr::differentiate(std::string_view variable) const {
  auto it = std::find(variables_.begin(), variables_.end(), variable);
  if (it == variables_.end())
    throw std::invalid_argument("cannot differentiate with respect to undeclared '" +
                                std::string(variable) + "'");
  return Expr(derive(root_, static_cast<std::size_t>(it - variables_.begin())), variables_);
}

std::string Expr::to_string() const {
  if (!root_) return {};
  return node_text(*root_, variables_);
}

bool Expr::is_constant() const { return root_ && root_->op == Op::Const; }

}  // namespace hbvp
