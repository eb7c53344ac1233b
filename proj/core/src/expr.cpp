#include "wg/expr.hpp"

#include "wg/error.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace wg {

enum class Op { Number, X, Y, U, Pi, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Sqrt, Abs };

struct Expr::Node {
  Op op;
  double value = 0.0;
  std::unique_ptr<Node> lhs;
  std::unique_ptr<Node> rhs;
};

namespace {

using NodePtr = std::unique_ptr<Expr::Node>;

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_unique<Expr::Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

struct Function {
  std::string_view name;
  Op op;
};
constexpr std::array<Function, 5> kFunctions{{{"sin", Op::Sin},
                                              {"cos", Op::Cos},
                                              {"exp", Op::Exp},
                                              {"sqrt", Op::Sqrt},
                                              {"abs", Op::Abs}}};

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n'))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr sum() {
    NodePtr lhs = product();
    for (;;) {
      if (accept('+'))
        lhs = make(Op::Add, std::move(lhs), product());
      else if (accept('-'))
        lhs = make(Op::Sub, std::move(lhs), product());
      else
        return lhs;
    }
  }

  NodePtr product() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = make(Op::Mul, std::move(lhs), unary());
      else if (accept('/'))
        lhs = make(Op::Div, std::move(lhs), unary());
      else
        return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::Neg, unary());
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Op::Pow, std::move(base), unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = sum();
      expect(')');
      return inner;
    }
    if ((c >= '0' && c <= '9') || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc()) fail("malformed number");
    pos_ = static_cast<std::size_t>(end - text_.data());
    if (pos_ == start) fail("malformed number");
    NodePtr n = make(Op::Number);
    n->value = v;
    return n;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    for (const Function& fn : kFunctions) {
      if (name != fn.name) continue;
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != '(')
        fail("function '" + std::string(name) + "' needs a parenthesized argument");
      ++pos_;
      NodePtr arg = sum();
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ',')
        fail("function '" + std::string(name) + "' takes exactly one argument");
      expect(')');
      return make(fn.op, std::move(arg));
    }
    Op op;
    if (name == "x")
      op = Op::X;
    else if (name == "y")
      op = Op::Y;
    else if (name == "u")
      op = Op::U;
    else if (name == "pi")
      op = Op::Pi;
    else {
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(')
      fail("'" + std::string(name) + "' is not a function");
    return make(op);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

double eval(const Expr::Node& n, double x, double y, double u) {
  switch (n.op) {
    case Op::Number: return n.value;
    case Op::X: return x;
    case Op::Y: return y;
    case Op::U: return u;
    case Op::Pi: return std::numbers::pi;
    case Op::Neg: return -eval(*n.lhs, x, y, u);
    case Op::Add: return eval(*n.lhs, x, y, u) + eval(*n.rhs, x, y, u);
    case Op::Sub: return eval(*n.lhs, x, y, u) - eval(*n.rhs, x, y, u);
    case Op::Mul: return eval(*n.lhs, x, y, u) * eval(*n.rhs, x, y, u);
    case Op::Div: {
      const double d = eval(*n.rhs, x, y, u);
      if (d == 0.0) throw EvalError("division by zero");
      return eval(*n.lhs, x, y, u) / d;
    }
    case Op::Pow: {
      const double b = eval(*n.lhs, x, y, u);
      const double e = eval(*n.rhs, x, y, u);
      if (b < 0.0 && e != std::trunc(e))
        throw EvalError("negative base raised to a non-integer power");
      if (b == 0.0 && e < 0.0) throw EvalError("zero raised to a negative power");
      return std::pow(b, e);
    }
    case Op::Sin: return std::sin(eval(*n.lhs, x, y, u));
    case Op::Cos: return std::cos(eval(*n.lhs, x, y, u));
    case Op::Exp: return std::exp(eval(*n.lhs, x, y, u));
    case Op::Sqrt: {
      const double v = eval(*n.lhs, x, y, u);
      if (v < 0.0) throw EvalError("square root of a negative number");
      return std::sqrt(v);
    }
    case Op::Abs: return std::abs(eval(*n.lhs, x, y, u));
  }
  return 0.0;
}

void print(const Expr::Node& n, std::string& out) {
  auto binary = [&](const char* sym) {
    out += '(';
    print(*n.lhs, out);
    out += sym;
    print(*n.rhs, out);
    out += ')';
  };
  switch (n.op) {
    case Op::Number: {
      std::array<char, 32> buf{};
      std::snprintf(buf.data(), buf.size(), "%.17g", n.value);
      out += buf.data();
      return;
    }
    case Op::X: out += 'x'; return;
    case Op::Y: out += 'y'; return;
    case Op::U: out += 'u'; return;
    case Op::Pi: out += "pi"; return;
    case Op::Neg:
      out += "(-";
      print(*n.lhs, out);
      out += ')';
      return;
    case Op::Add: binary(" + "); return;
    case Op::Sub: binary(" - "); return;
    case Op::Mul: binary(" * "); return;
    case Op::Div: binary(" / "); return;
    case Op::Pow: binary(" ^ "); return;
    default:
      for (const Function& fn : kFunctions)
        if (fn.op == n.op) out += fn.name;
      out += '(';
      print(*n.lhs, out);
      out += ')';
      return;
  }
}

}  // namespace

Expr Expr::parse(std::string_view text) {
  NodePtr root = Parser(text).parse();
  return Expr(std::shared_ptr<const Node>(std::move(root)));
}

double Expr::operator()(double x, double y, double u) const { return eval(*root_, x, y, u); }

std::string Expr::print() const {
  std::string out;
  wg::print(*root_, out);
  return out;
}

}  // namespace wg
