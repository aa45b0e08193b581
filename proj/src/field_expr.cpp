#include "thinlayer/field_expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "thinlayer/errors.hpp"

namespace thinlayer {

namespace {

using Op = FieldExpr::Op;

struct FunctionInfo {
  std::string_view name;
  Op op;
  int arity;
};

constexpr FunctionInfo functions[] = {
    {"sin", Op::sin, 1},  {"cos", Op::cos, 1}, {"exp", Op::exp, 1}, {"sqrt", Op::sqrt, 1},
    {"abs", Op::abs, 1},  {"min", Op::min, 2}, {"max", Op::max, 2},
};

std::string_view function_name(Op op) {
  for (const auto &f : functions)
    if (f.op == op) return f.name;
  return {};
}

// Binding strength used by the printer: higher binds tighter.
int precedence(Op op) {
  switch (op) {
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::div: return 2;
    case Op::neg: return 3;
    case Op::pow: return 4;
    default: return 5;
  }
}

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  FieldExpr parse() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
    expr_.root_ = parse_expr();
    skip_space();
    if (pos_ < text_.size())
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return std::move(expr_);
  }

 private:
  int add(FieldExpr::Node n) {
    expr_.nodes_.push_back(n);
    return static_cast<int>(expr_.nodes_.size()) - 1;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
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
    if (!accept(c)) {
      if (pos_ >= text_.size())
        throw ParseError(std::string("expected '") + c + "' but reached end of input", pos_);
      throw ParseError(std::string("expected '") + c + "' but found '" + text_[pos_] + "'", pos_);
    }
  }

  int parse_expr() {
    int lhs = parse_term();
    for (;;) {
      if (accept('+')) lhs = add({Op::add, 0.0, lhs, parse_term()});
      else if (accept('-')) lhs = add({Op::sub, 0.0, lhs, parse_term()});
      else return lhs;
    }
  }

  int parse_term() {
    int lhs = parse_unary();
    for (;;) {
      if (accept('*')) lhs = add({Op::mul, 0.0, lhs, parse_unary()});
      else if (accept('/')) lhs = add({Op::div, 0.0, lhs, parse_unary()});
      else return lhs;
    }
  }

  int parse_unary() {
    if (accept('-')) return add({Op::neg, 0.0, parse_unary(), -1});
    return parse_power();
  }

  int parse_power() {
    const int base = parse_primary();
    if (accept('^')) return add({Op::pow, 0.0, base, parse_unary()});
    return base;
  }

  int parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      const int inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  int parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc() || res.ptr != text_.data() + pos_)
      throw ParseError("malformed number '" + std::string(text_.substr(start, pos_ - start)) + "'",
                       start);
    return add({Op::number, value, -1, -1});
  }

  int parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "u") return add({Op::var_u, 0.0, -1, -1});
    if (name == "v") return add({Op::var_v, 0.0, -1, -1});
    for (const auto &f : functions) {
      if (f.name != name) continue;
      expect('(');
      const int a = parse_expr();
      int b = -1;
      if (f.arity == 2) {
        expect(',');
        b = parse_expr();
      }
      expect(')');
      return add({f.op, 0.0, a, b});
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  FieldExpr expr_;
};

FieldExpr parse_field(std::string_view text) { return ExprParser(text).parse(); }

FieldExpr FieldExpr::constant(double value) {
  FieldExpr e;
  e.nodes_.push_back({Op::number, value, -1, -1});
  e.root_ = 0;
  return e;
}

double FieldExpr::eval(double u, double v) const { return eval_node(root_, u, v); }

double FieldExpr::eval_node(int i, double u, double v) const {
  const Node &n = nodes_[static_cast<std::size_t>(i)];
  auto arg = [&](int c) { return eval_node(c, u, v); };
  double r = 0.0;
  switch (n.op) {
    case Op::number: return n.value;
    case Op::var_u: return u;
    case Op::var_v: return v;
    case Op::add: r = arg(n.lhs) + arg(n.rhs); break;
    case Op::sub: r = arg(n.lhs) - arg(n.rhs); break;
    case Op::mul: r = arg(n.lhs) * arg(n.rhs); break;
    case Op::div: {
      const double num = arg(n.lhs);
      const double den = arg(n.rhs);
      if (den == 0.0) throw DomainError("division by zero");
      r = num / den;
      break;
    }
    case Op::pow: r = std::pow(arg(n.lhs), arg(n.rhs)); break;
    case Op::neg: return -arg(n.lhs);
    case Op::sin: r = std::sin(arg(n.lhs)); break;
    case Op::cos: r = std::cos(arg(n.lhs)); break;
    case Op::exp: r = std::exp(arg(n.lhs)); break;
    case Op::sqrt: {
      const double x = arg(n.lhs);
      if (x < 0.0) throw DomainError("sqrt of negative value " + format_number(x));
      r = std::sqrt(x);
      break;
    }
    case Op::abs: r = std::abs(arg(n.lhs)); break;
    case Op::min: r = std::min(arg(n.lhs), arg(n.rhs)); break;
    case Op::max: r = std::max(arg(n.lhs), arg(n.rhs)); break;
  }
  if (!std::isfinite(r)) throw DomainError("expression value is undefined or not finite");
  return r;
}

std::string FieldExpr::to_string() const {
  std::string out;
  print_node(root_, out);
  return out;
}

void FieldExpr::print_node(int i, std::string &out) const {
  const Node &n = nodes_[static_cast<std::size_t>(i)];
  auto child = [&](int c, bool parens) {
    if (parens) out += '(';
    print_node(c, out);
    if (parens) out += ')';
  };
  auto prec = [&](int c) { return precedence(nodes_[static_cast<std::size_t>(c)].op); };
  switch (n.op) {
    case Op::number: out += format_number(n.value); return;
    case Op::var_u: out += 'u'; return;
    case Op::var_v: out += 'v'; return;
    case Op::neg:
      out += '-';
      child(n.lhs, prec(n.lhs) < precedence(Op::neg));
      return;
    case Op::pow:
      // base must be primary; exponent may be a unary minus or another power
      child(n.lhs, prec(n.lhs) <= precedence(Op::pow));
      out += '^';
      child(n.rhs, prec(n.rhs) < precedence(Op::neg));
      return;
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div: {
      const int p = precedence(n.op);
      child(n.lhs, prec(n.lhs) < p);
      out += n.op == Op::add ? " + " : n.op == Op::sub ? " - " : n.op == Op::mul ? " * " : " / ";
      child(n.rhs, prec(n.rhs) <= p);
      return;
    }
    default: {
      out += function_name(n.op);
      out += '(';
      print_node(n.lhs, out);
      if (n.rhs >= 0) {
        out += ", ";
        print_node(n.rhs, out);
      }
      out += ')';
      return;
    }
  }
}

}  // namespace thinlayer
