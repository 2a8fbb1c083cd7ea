#include "expression.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace sctk::geom {

namespace {

struct Const : Expression {
  double v;
  explicit Const(double x) : v(x) {}
  double eval(double, double) const override { return v; }
};

struct Var : Expression {
  bool is_u;
  explicit Var(bool u) : is_u(u) {}
  double eval(double u, double v) const override { return is_u ? u : v; }
};

struct Unary : Expression {
  double (*fn)(double);
  std::unique_ptr<Expression> a;
  double eval(double u, double v) const override { return fn(a->eval(u, v)); }
};

struct Binary : Expression {
  char op;
  std::unique_ptr<Expression> a, b;
  double eval(double u, double v) const override {
    const double x = a->eval(u, v), y = b->eval(u, v);
    switch (op) {
      case '+': return x + y;
      case '-': return x - y;
      case '*': return x * y;
      case '/': return x / y;
      default: return std::pow(x, y);
    }
  }
};

struct Neg : Expression {
  std::unique_ptr<Expression> a;
  double eval(double u, double v) const override { return -a->eval(u, v); }
};

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  std::unique_ptr<Expression> parse() {
    auto e = sum();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("expression parse error at position " +
                                std::to_string(pos_) + ": " + msg + " in '" +
                                s_ + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::unique_ptr<Expression> sum() {
    auto e = product();
    for (;;) {
      if (accept('+')) {
        auto b = std::make_unique<Binary>();
        b->op = '+';
        b->a = std::move(e);
        b->b = product();
        e = std::move(b);
      } else if (accept('-')) {
        auto b = std::make_unique<Binary>();
        b->op = '-';
        b->a = std::move(e);
        b->b = product();
        e = std::move(b);
      } else {
        return e;
      }
    }
  }

  std::unique_ptr<Expression> product() {
    auto e = unary();
    for (;;) {
      if (accept('*')) {
        auto b = std::make_unique<Binary>();
        b->op = '*';
        b->a = std::move(e);
        b->b = unary();
        e = std::move(b);
      } else if (accept('/')) {
        auto b = std::make_unique<Binary>();
        b->op = '/';
        b->a = std::move(e);
        b->b = unary();
        e = std::move(b);
      } else {
        return e;
      }
    }
  }

  std::unique_ptr<Expression> unary() {
    if (accept('-')) {
      auto n = std::make_unique<Neg>();
      n->a = unary();
      return n;
    }
    (void)accept('+');
    return power();
  }

  std::unique_ptr<Expression> power() {
    auto e = atom();
    if (accept('^')) {
      auto b = std::make_unique<Binary>();
      b->op = '^';
      b->a = std::move(e);
      b->b = unary();  // right associative
      return b;
    }
    return e;
  }

  std::unique_ptr<Expression> atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = sum();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit((unsigned char)c) || c == '.') return number();
    if (std::isalpha((unsigned char)c)) return identifier();
    fail("unexpected character");
  }

  std::unique_ptr<Expression> number() {
    size_t end = 0;
    double v = 0.0;
    try {
      v = std::stod(s_.substr(pos_), &end);
    } catch (const std::exception&) {
      fail("bad numeric literal");
    }
    pos_ += end;
    return std::make_unique<Const>(v);
  }

  std::unique_ptr<Expression> identifier() {
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_'))
      ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    if (name == "u") return std::make_unique<Var>(true);
    if (name == "v") return std::make_unique<Var>(false);
    if (name == "pi") return std::make_unique<Const>(3.14159265358979323846);
    if (name == "e") return std::make_unique<Const>(2.71828182845904523536);
    static const struct {
      const char* name;
      double (*fn)(double);
    } kFns[] = {
        {"sin", std::sin},   {"cos", std::cos},   {"tan", std::tan},
        {"exp", std::exp},   {"log", std::log},   {"sqrt", std::sqrt},
        {"abs", std::fabs},  {"sinh", std::sinh}, {"cosh", std::cosh},
        {"tanh", std::tanh}, {"atan", std::atan},
    };
    for (const auto& f : kFns) {
      if (name == f.name) {
        if (!accept('(')) fail("expected '(' after function name");
        auto u = std::make_unique<Unary>();
        u->fn = f.fn;
        u->a = sum();
        if (!accept(')')) fail("expected ')'");
        return u;
      }
    }
    fail("unknown identifier '" + name + "'");
  }
};

}  // namespace

std::unique_ptr<Expression> parse_expression(const std::string& text) {
  return Parser(text).parse();
}

}  // namespace sctk::geom
