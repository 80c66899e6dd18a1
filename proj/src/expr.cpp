#include "pcband/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <vector>

#include "pcband/errors.hpp"

namespace pcband {

struct Expression::Node {
  enum class Kind { Number, Var, Pi, Neg, Binary, Call };
  Kind kind;
  double number = 0.0;
  char op = 0;    // '+', '-', '*', '/', '^'
  int fn = -1;    // index into kFnNames
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

constexpr const char* kFnNames[] = {"sin", "cos", "exp", "sqrt", "abs"};
constexpr int kFnCount = 5;

double eval_node(const Node& n, double x) {
  switch (n.kind) {
    case Node::Kind::Number: return n.number;
    case Node::Kind::Var: return x;
    case Node::Kind::Pi: return M_PI;
    case Node::Kind::Neg: return -eval_node(*n.lhs, x);
    case Node::Kind::Binary: {
      const double a = eval_node(*n.lhs, x);
      const double b = eval_node(*n.rhs, x);
      switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        default: return std::pow(a, b);
      }
    }
    case Node::Kind::Call: {
      const double a = eval_node(*n.lhs, x);
      switch (n.fn) {
        case 0: return std::sin(a);
        case 1: return std::cos(a);
        case 2: return std::exp(a);
        case 3: return std::sqrt(a);
        default: return std::abs(a);
      }
    }
  }
  return 0.0;
}

void print_node(const Node& n, std::string& out) {
  char buf[40];
  switch (n.kind) {
    case Node::Kind::Number:
      std::snprintf(buf, sizeof buf, "%.17g", n.number);
      out += buf;
      break;
    case Node::Kind::Var: out += 'x'; break;
    case Node::Kind::Pi: out += "pi"; break;
    case Node::Kind::Neg:
      out += "(-";
      print_node(*n.lhs, out);
      out += ')';
      break;
    case Node::Kind::Binary:
      out += '(';
      print_node(*n.lhs, out);
      out += ' ';
      out += n.op;
      out += ' ';
      print_node(*n.rhs, out);
      out += ')';
      break;
    case Node::Kind::Call:
      out += kFnNames[n.fn];
      out += '(';
      print_node(*n.lhs, out);
      out += ')';
      break;
  }
}

class Parser {
public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error("expression error at position " + std::to_string(pos_) +
                          ": " + msg,
                      pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      lhs = binary(c, lhs, term());
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      lhs = binary(c, lhs, unary());
    }
  }

  NodePtr unary() {
    if (eat('-')) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Neg;
      n->lhs = unary();
      return n;
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) return binary('^', base, unary());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a value");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = mark; // not an exponent after all
      }
    }
    if (pos_ == start) fail("malformed number");
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Number;
    n->number = std::strtod(text_.c_str() + start, nullptr);
    return n;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string name = text_.substr(start, pos_ - start);
    if (name == "x") {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Var;
      return n;
    }
    if (name == "pi") {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Pi;
      return n;
    }
    for (int i = 0; i < kFnCount; ++i) {
      if (name == kFnNames[i]) {
        if (!eat('(')) fail("expected '(' after function name");
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Call;
        n->fn = i;
        n->lhs = expr();
        if (!eat(')')) fail("expected ')'");
        return n;
      }
    }
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }

  NodePtr binary(char op, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Binary;
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

double Expression::eval(double x) const { return eval_node(*root_, x); }

Expression parse_expression(const std::string& text) {
  Expression e;
  e.root_ = Parser(text).run();
  std::string pretty;
  print_node(*e.root_, pretty);
  e.pretty_ = std::move(pretty);
  return e;
}

Profile parse_profile_expr(const std::string& text, double period_L) {
  if (!(period_L > 0.0)) {
    throw precondition_error("parse_profile_expr: period must be positive");
  }
  const Expression e = parse_expression(text);

  Profile p;
  p.period_L = period_L;
  p.label = e.pretty();
  p.n_raw = [e](double x) { return e.eval(x); };
  const double h = 1e-6 * period_L;
  p.dn_raw = [e, period_L, h](double x) {
    auto wrap = [period_L](double u) {
      double w = u - period_L * std::floor(u / period_L + 0.5);
      if (w >= period_L / 2) w -= period_L;
      return w;
    };
    return (e.eval(wrap(x + h)) - e.eval(wrap(x - h))) / (2.0 * h);
  };

  // Parse-time validation: n must be finite and positive on a sample grid.
  for (int i = 0; i < 1024; ++i) {
    const double x = -period_L / 2 + period_L * (i + 0.5) / 1024;
    const double v = p.n_raw(x);
    if (!std::isfinite(v) || v <= 0.0) {
      throw precondition_error(
          "parse_profile_expr: expression is not positive at x = " +
          std::to_string(x));
    }
  }

  // Symmetry is a property of the wrapped evaluator; detect it by sampling.
  bool sym = true;
  for (int i = 1; i < 257 && sym; ++i) {
    const double x = period_L * i / 514.0;
    sym = std::abs(p.n(x) - p.n(-x)) <= 1e-12 * std::abs(p.n(x));
  }
  p.symmetric = sym;
  p.establish_bounds();
  return p;
}

}  // namespace pcband
