#include "solvloop/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace solvloop::expr {

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error("syntax error at position " + std::to_string(position) + ": " + what),
      position_(position) {}

NodePtr constant(double v) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = v;
  return n;
}

NodePtr variable(char v) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->var = v;
  return n;
}

NodePtr unary(Op op, NodePtr arg) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(arg);
  return n;
}

NodePtr binary(Op op, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::string_view vars) : s_(text), vars_(vars) {}

  NodePtr parse_all() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty expression", pos_);
    NodePtr e = parse_expr();
    skip();
    if (pos_ < s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return e;
  }

 private:
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

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Op::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = binary(Op::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Op::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = binary(Op::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return unary(Op::Neg, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept('^')) return binary(Op::Pow, base, parse_unary());
    return base;
  }

  NodePtr parse_primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    if (accept('(')) {
      NodePtr e = parse_expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
      ++pos_;
    // Exponent part only when followed by a digit (optionally signed), so that
    // "2exp(z)" is still rejected cleanly rather than half-consumed.
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
      if (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) {
        pos_ = q;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    const std::string text(s_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || !std::isfinite(v)) {
      throw ParseError("malformed number '" + text + "'", start);
    }
    return constant(v);
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string_view id = s_.substr(start, pos_ - start);
    if (id == "exp" || id == "sin" || id == "cos") {
      if (!accept('(')) throw ParseError("expected '(' after " + std::string(id), pos_);
      NodePtr arg = parse_expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      const Op op = id == "exp" ? Op::Exp : id == "sin" ? Op::Sin : Op::Cos;
      return unary(op, arg);
    }
    if (id.size() == 1 && (id[0] == 'x' || id[0] == 'y' || id[0] == 'z')) {
      if (vars_.find(id[0]) == std::string_view::npos) {
        throw ParseError("variable '" + std::string(id) + "' not allowed for this arity", start);
      }
      return variable(id[0]);
    }
    throw ParseError("unknown identifier '" + std::string(id) + "'", start);
  }

  std::string_view s_;
  std::string_view vars_;
  std::size_t pos_ = 0;
};

double eval_node(const Node& n, double x, double y, double z) {
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return n.var == 'x' ? x : n.var == 'y' ? y : z;
    case Op::Add: return eval_node(*n.lhs, x, y, z) + eval_node(*n.rhs, x, y, z);
    case Op::Sub: return eval_node(*n.lhs, x, y, z) - eval_node(*n.rhs, x, y, z);
    case Op::Mul: return eval_node(*n.lhs, x, y, z) * eval_node(*n.rhs, x, y, z);
    case Op::Div: {
      const double d = eval_node(*n.rhs, x, y, z);
      if (std::abs(d) < 1e-300) throw EvalError("division by (near) zero");
      return eval_node(*n.lhs, x, y, z) / d;
    }
    case Op::Pow: return std::pow(eval_node(*n.lhs, x, y, z), eval_node(*n.rhs, x, y, z));
    case Op::Neg: return -eval_node(*n.lhs, x, y, z);
    case Op::Exp: return std::exp(eval_node(*n.lhs, x, y, z));
    case Op::Sin: return std::sin(eval_node(*n.lhs, x, y, z));
    case Op::Cos: return std::cos(eval_node(*n.lhs, x, y, z));
  }
  return 0;
}

void print(const Node& n, std::string& out) {
  switch (n.op) {
    case Op::Const: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      return;
    }
    case Op::Var: out += n.var; return;
    case Op::Neg:
      out += "(-";
      print(*n.lhs, out);
      out += ')';
      return;
    case Op::Exp:
    case Op::Sin:
    case Op::Cos:
      out += n.op == Op::Exp ? "exp(" : n.op == Op::Sin ? "sin(" : "cos(";
      print(*n.lhs, out);
      out += ')';
      return;
    default: break;
  }
  const char* sym = n.op == Op::Add ? " + " : n.op == Op::Sub ? " - " : n.op == Op::Mul ? " * "
                  : n.op == Op::Div ? " / " : "^";
  out += '(';
  print(*n.lhs, out);
  out += sym;
  print(*n.rhs, out);
  out += ')';
}

bool equal(const Node& a, const Node& b) {
  if (a.op != b.op) return false;
  if (a.op == Op::Const) return a.value == b.value;
  if (a.op == Op::Var) return a.var == b.var;
  if (!equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs || b.rhs) return a.rhs && b.rhs && equal(*a.rhs, *b.rhs);
  return true;
}

bool uses_var(const Node& n, char v) {
  if (n.op == Op::Var) return n.var == v;
  if (n.op == Op::Const) return false;
  return uses_var(*n.lhs, v) || (n.rhs && uses_var(*n.rhs, v));
}

}  // namespace

Tree::Tree(NodePtr root) : root_(std::move(root)) {
  if (!root_) throw std::invalid_argument("null expression");
}

double Tree::eval(double x, double y, double z) const { return eval_node(*root_, x, y, z); }

std::string Tree::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

bool Tree::uses(char var) const { return uses_var(*root_, var); }

bool operator==(const Tree& a, const Tree& b) { return equal(*a.root_, *b.root_); }

Tree parse(std::string_view text, std::string_view allowed_vars) {
  return Tree(Parser(text, allowed_vars).parse_all());
}

}  // namespace solvloop::expr
