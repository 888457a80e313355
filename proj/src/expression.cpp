#include "expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include "error.hpp"

namespace nlcflow {

struct Expression::Node {
  enum class Op { kConst, kX, kY, kAdd, kSub, kMul, kDiv, kPow, kNeg, kSin, kCos, kExp, kTanh, kSqrt };
  Op op = Op::kConst;
  double value = 0.0;
  std::shared_ptr<const Node> a, b;

  double eval(double x, double y) const {
    switch (op) {
      case Op::kConst: return value;
      case Op::kX: return x;
      case Op::kY: return y;
      case Op::kAdd: return a->eval(x, y) + b->eval(x, y);
      case Op::kSub: return a->eval(x, y) - b->eval(x, y);
      case Op::kMul: return a->eval(x, y) * b->eval(x, y);
      case Op::kDiv: return a->eval(x, y) / b->eval(x, y);
      case Op::kPow: {
        const double e = b->eval(x, y);
        const double base = a->eval(x, y);
        if (e == std::round(e) && std::abs(e) <= 16.0) {
          // integer powers by repeated multiplication keep odd powers of negatives real
          double r = 1.0;
          for (int k = 0; k < static_cast<int>(std::abs(e)); ++k) r *= base;
          return e < 0 ? 1.0 / r : r;
        }
        return std::pow(base, e);
      }
      case Op::kNeg: return -a->eval(x, y);
      case Op::kSin: return std::sin(a->eval(x, y));
      case Op::kCos: return std::cos(a->eval(x, y));
      case Op::kExp: return std::exp(a->eval(x, y));
      case Op::kTanh: return std::tanh(a->eval(x, y));
      case Op::kSqrt: return std::sqrt(a->eval(x, y));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Op = Expression::Node::Op;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr, double value = 0.0) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  n->value = value;
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::kConfigError,
                "bad expression '" + s_ + "' at offset " + std::to_string(pos_) + ": " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (eat('+')) n = make(Op::kAdd, n, term());
      else if (eat('-')) n = make(Op::kSub, n, term());
      else return n;
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (eat('*')) n = make(Op::kMul, n, unary());
      else if (eat('/')) n = make(Op::kDiv, n, unary());
      else return n;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Op::kNeg, unary());
    if (eat('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) return make(Op::kPow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat('(')) {
      NodePtr n = expr();
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const char* begin = s_.data() + pos_;
      const auto [ptr, ec] = std::from_chars(begin, s_.data() + s_.size(), v);
      if (ec != std::errc()) fail("bad number");
      pos_ += static_cast<std::size_t>(ptr - begin);
      return make(Op::kConst, nullptr, nullptr, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string word = s_.substr(start, pos_ - start);
      if (word == "x") return make(Op::kX);
      if (word == "y") return make(Op::kY);
      if (word == "pi") return make(Op::kConst, nullptr, nullptr, std::numbers::pi);
      static const std::vector<std::pair<std::string, Op>> funcs = {
          {"sin", Op::kSin}, {"cos", Op::kCos}, {"exp", Op::kExp},
          {"tanh", Op::kTanh}, {"sqrt", Op::kSqrt}};
      for (const auto& [name, op] : funcs) {
        if (word == name) {
          if (!eat('(')) fail("expected '(' after " + name);
          NodePtr arg = expr();
          if (!eat(')')) fail("expected ')'");
          return make(op, arg);
        }
      }
      pos_ = start;
      fail("unknown identifier '" + word + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression() : root_(make(Op::kConst)), source_("0") {}

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.root_ = Parser(text).parse();
  e.source_ = text;
  return e;
}

Expression Expression::constant(double value) {
  Expression e;
  e.root_ = make(Op::kConst, nullptr, nullptr, value);
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  e.source_.assign(buf, ptr);
  return e;
}

double Expression::operator()(double x, double y) const { return root_->eval(x, y); }

}  // namespace nlcflow
