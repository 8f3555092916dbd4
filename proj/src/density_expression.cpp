#include "beurling/density_expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>

namespace beurling {

namespace detail {

struct ExpressionNode {
  enum class Kind { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Log, LogLog, Exp, Sqrt, Abs, Indicator };
  Kind kind;
  double value = 0.0;
  std::shared_ptr<const ExpressionNode> lhs;
  std::shared_ptr<const ExpressionNode> rhs;

  double eval(double u) const {
    switch (kind) {
      case Kind::Constant: return value;
      case Kind::Variable: return u;
      case Kind::Add: return lhs->eval(u) + rhs->eval(u);
      case Kind::Sub: return lhs->eval(u) - rhs->eval(u);
      case Kind::Mul: {
        const double a = lhs->eval(u);
        return a == 0.0 ? 0.0 : a * rhs->eval(u);
      }
      case Kind::Div: {
        const double a = lhs->eval(u);
        return a == 0.0 ? 0.0 : a / rhs->eval(u);
      }
      case Kind::Pow: return std::pow(lhs->eval(u), rhs->eval(u));
      case Kind::Neg: return -lhs->eval(u);
      case Kind::Log: return std::log(lhs->eval(u));
      case Kind::LogLog: return std::log(std::log(lhs->eval(u)));
      case Kind::Exp: return std::exp(lhs->eval(u));
      case Kind::Sqrt: return std::sqrt(lhs->eval(u));
      case Kind::Abs: return std::abs(lhs->eval(u));
      case Kind::Indicator: return u >= value ? 1.0 : 0.0;
    }
    return 0.0;
  }

  bool dependsOnU() const {
    if (kind == Kind::Variable || kind == Kind::Indicator) return true;
    return (lhs && lhs->dependsOnU()) || (rhs && rhs->dependsOnU());
  }
};

}  // namespace detail

namespace {

using Node = detail::ExpressionNode;
using NodePtr = std::shared_ptr<const Node>;

class ExpressionParser {
 public:
  using Kind = Node::Kind;

  explicit ExpressionParser(const std::string& text) : s_(text) {}

  NodePtr parseAll() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

  std::vector<double> thresholds;

 private:
  static NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0.0) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    n->value = v;
    return n;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("density expression \"" + s_ + "\": " + msg + " at position " +
                      std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr left = term();
    for (;;) {
      if (accept('+')) {
        left = make(Kind::Add, left, term());
      } else if (accept('-')) {
        left = make(Kind::Sub, left, term());
      } else {
        return left;
      }
    }
  }

  NodePtr term() {
    NodePtr left = unary();
    for (;;) {
      if (accept('*')) {
        left = make(Kind::Mul, left, unary());
      } else if (accept('/')) {
        left = make(Kind::Div, left, unary());
      } else {
        return left;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Kind::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      return make(Kind::Constant, nullptr, nullptr, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "u") return make(Kind::Variable);
      if (name == "e") return make(Kind::Constant, nullptr, nullptr, std::numbers::e);
      if (name == "pi") return make(Kind::Constant, nullptr, nullptr, std::numbers::pi);
      Kind kind;
      if (name == "log") {
        kind = Kind::Log;
      } else if (name == "loglog") {
        kind = Kind::LogLog;
      } else if (name == "exp") {
        kind = Kind::Exp;
      } else if (name == "sqrt") {
        kind = Kind::Sqrt;
      } else if (name == "abs") {
        kind = Kind::Abs;
      } else if (name == "indicator") {
        expect('(');
        NodePtr arg = expr();
        expect(')');
        if (arg->dependsOnU()) fail("indicator threshold must not depend on u");
        const double a = arg->eval(1.0);
        if (!std::isfinite(a)) fail("indicator threshold is not finite");
        thresholds.push_back(a);
        return make(Kind::Indicator, nullptr, nullptr, a);
      } else {
        fail("unknown identifier '" + name + "'");
      }
      expect('(');
      NodePtr arg = expr();
      expect(')');
      return make(kind, arg);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

DensityExpression DensityExpression::parse(const std::string& text) {
  ExpressionParser parser(text);
  DensityExpression out;
  out.root_ = parser.parseAll();
  out.text_ = text;
  out.thresholds_ = std::move(parser.thresholds);
  return out;
}

double DensityExpression::operator()(double u) const { return root_->eval(u); }

DensitySpec DensityExpression::toDensitySpec(QuadratureRule rule) const {
  auto root = root_;
  return DensitySpec::fromDensity([root](double u) { return root->eval(u); }, rule, thresholds_);
}

}  // namespace beurling
