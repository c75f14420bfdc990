#include "vekua/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>

#include "vekua/errors.hpp"

namespace vekua {

namespace {

const char* const kFunctions[] = {"exp",  "log",  "sin",  "cos",  "tan",
                                  "sinh", "cosh", "tanh", "sqrt", "abs"};

bool is_function_name(const std::string& s) {
  for (const char* f : kFunctions)
    if (s == f) return true;
  return false;
}

}  // namespace

struct Expr::Node {
  enum class Kind { Number, Ident, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind;
  double number = 0.0;
  std::string name;  // Ident and Call
  std::shared_ptr<const Node> lhs, rhs;
  std::size_t offset = 0, length = 0;  // source span, for diagnostics
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {}

  NodePtr run() {
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size())
      throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) throw ParseError(std::string("expected ") + what, pos_);
  }

  std::shared_ptr<Node> make(Node::Kind kind, std::size_t begin,
                             NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    n->offset = begin;
    n->length = pos_ - begin;
    return n;
  }

  NodePtr parse_expr() {
    const std::size_t begin = (skip_ws(), pos_);
    NodePtr lhs = parse_term();
    while (true) {
      if (accept('+'))
        lhs = make(Node::Kind::Add, begin, lhs, parse_term());
      else if (accept('-'))
        lhs = make(Node::Kind::Sub, begin, lhs, parse_term());
      else
        return lhs;
    }
  }

  NodePtr parse_term() {
    const std::size_t begin = (skip_ws(), pos_);
    NodePtr lhs = parse_factor();
    while (true) {
      if (accept('*'))
        lhs = make(Node::Kind::Mul, begin, lhs, parse_factor());
      else if (accept('/'))
        lhs = make(Node::Kind::Div, begin, lhs, parse_factor());
      else
        return lhs;
    }
  }

  // '-' applies to the whole power so that -2^2 == -(2^2); the exponent is
  // a factor, making '^' right-associative.
  NodePtr parse_factor() {
    const std::size_t begin = (skip_ws(), pos_);
    if (accept('-')) return make(Node::Kind::Neg, begin, parse_factor());
    NodePtr base = parse_atom();
    if (accept('^')) return make(Node::Kind::Pow, begin, base, parse_factor());
    return base;
  }

  NodePtr parse_atom() {
    skip_ws();
    const std::size_t begin = pos_;
    if (pos_ >= src_.size())
      throw ParseError("expected number, identifier or '('", pos_);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      expect(')', "')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number(begin);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return parse_ident_or_call(begin);
    throw ParseError("expected number, identifier or '('", pos_);
  }

  NodePtr parse_number(std::size_t begin) {
    const char* start = src_.c_str() + begin;
    char* end = nullptr;
    const double value = std::strtod(start, &end);
    if (end == start) throw ParseError("malformed number", begin);
    pos_ = begin + static_cast<std::size_t>(end - start);
    auto n = make(Node::Kind::Number, begin);
    n->number = value;
    return n;
  }

  NodePtr parse_ident_or_call(std::size_t begin) {
    std::size_t end = begin;
    while (end < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
      ++end;
    std::string name = src_.substr(begin, end - begin);
    pos_ = end;
    if (accept('(')) {
      NodePtr arg = parse_expr();
      expect(')', "')'");
      auto n = make(Node::Kind::Call, begin, arg);
      n->name = std::move(name);
      return n;
    }
    auto n = make(Node::Kind::Ident, begin);
    n->name = std::move(name);
    return n;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

[[noreturn]] void eval_fail(const std::string& what, const Node& n,
                            const std::string& source) {
  std::string where = source.empty() ? std::string("<expr>")
                                     : source.substr(n.offset, n.length);
  throw EvalError(what + " in '" + where + "'");
}

double eval_pow(double base, double expo, const Node& n,
                const std::string& source) {
  if (expo == std::floor(expo) && std::abs(expo) <= 1024.0) {
    long k = static_cast<long>(expo);
    const bool negative = k < 0;
    unsigned long m = negative ? -static_cast<unsigned long>(k) : k;
    double result = 1.0, sq = base;
    for (; m != 0; m >>= 1) {
      if (m & 1) result *= sq;
      sq *= sq;
    }
    if (negative) {
      if (result == 0.0) eval_fail("division by zero", n, source);
      return 1.0 / result;
    }
    return result;
  }
  if (base <= 0.0)
    eval_fail("nonpositive base with non-integer exponent", n, source);
  return std::exp(expo * std::log(base));
}

double eval_call(const std::string& fn, double arg, const Node& n,
                 const std::string& source) {
  if (fn == "exp") return std::exp(arg);
  if (fn == "log") {
    if (arg <= 0.0) eval_fail("log of nonpositive value", n, source);
    return std::log(arg);
  }
  if (fn == "sin") return std::sin(arg);
  if (fn == "cos") return std::cos(arg);
  if (fn == "tan") return std::tan(arg);
  if (fn == "sinh") return std::sinh(arg);
  if (fn == "cosh") return std::cosh(arg);
  if (fn == "tanh") return std::tanh(arg);
  if (fn == "sqrt") {
    if (arg < 0.0) eval_fail("sqrt of negative value", n, source);
    return std::sqrt(arg);
  }
  if (fn == "abs") return std::abs(arg);
  eval_fail("unknown function '" + fn + "'", n, source);
}

double eval_node(const Node& n, const Bindings& b, const std::string& source) {
  switch (n.kind) {
    case Node::Kind::Number:
      return n.number;
    case Node::Kind::Ident: {
      if (const double* v = b.find(n.name)) return *v;
      if (n.name == "pi") return M_PI;
      if (n.name == "e") return M_E;
      eval_fail("unbound identifier '" + n.name + "'", n, source);
    }
    case Node::Kind::Neg:
      return -eval_node(*n.lhs, b, source);
    case Node::Kind::Add:
      return eval_node(*n.lhs, b, source) + eval_node(*n.rhs, b, source);
    case Node::Kind::Sub:
      return eval_node(*n.lhs, b, source) - eval_node(*n.rhs, b, source);
    case Node::Kind::Mul:
      return eval_node(*n.lhs, b, source) * eval_node(*n.rhs, b, source);
    case Node::Kind::Div: {
      const double denom = eval_node(*n.rhs, b, source);
      if (denom == 0.0) eval_fail("division by zero", n, source);
      return eval_node(*n.lhs, b, source) / denom;
    }
    case Node::Kind::Pow:
      return eval_pow(eval_node(*n.lhs, b, source),
                      eval_node(*n.rhs, b, source), n, source);
    case Node::Kind::Call:
      return eval_call(n.name, eval_node(*n.lhs, b, source), n, source);
  }
  throw EvalError("corrupt expression node");
}

// Precedence for printing: additive 1, multiplicative 2, unary minus 3,
// power 4, atoms 5.
int precedence(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Add:
    case Node::Kind::Sub:
      return 1;
    case Node::Kind::Mul:
    case Node::Kind::Div:
      return 2;
    case Node::Kind::Neg:
      return 3;
    case Node::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

void print_node(const Node& n, std::string& out);

void print_child(const Node& child, int min_prec, std::string& out) {
  if (precedence(child) < min_prec) {
    out += '(';
    print_node(child, out);
    out += ')';
  } else {
    print_node(child, out);
  }
}

void print_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case Node::Kind::Number: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.number);
      out += buf;
      return;
    }
    case Node::Kind::Ident:
      out += n.name;
      return;
    case Node::Kind::Neg:
      out += '-';
      print_child(*n.lhs, 3, out);
      return;
    case Node::Kind::Add:
      print_child(*n.lhs, 1, out);
      out += '+';
      print_child(*n.rhs, 2, out);
      return;
    case Node::Kind::Sub:
      print_child(*n.lhs, 1, out);
      out += '-';
      print_child(*n.rhs, 2, out);
      return;
    case Node::Kind::Mul:
      print_child(*n.lhs, 2, out);
      out += '*';
      print_child(*n.rhs, 3, out);
      return;
    case Node::Kind::Div:
      print_child(*n.lhs, 2, out);
      out += '/';
      print_child(*n.rhs, 3, out);
      return;
    case Node::Kind::Pow:
      // The grammar only allows atoms as a power's base.
      print_child(*n.lhs, 5, out);
      out += '^';
      print_child(*n.rhs, 3, out);
      return;
    case Node::Kind::Call:
      out += n.name;
      out += '(';
      print_node(*n.lhs, out);
      out += ')';
      return;
  }
}

void collect_idents(const Node& n, std::set<std::string>& out) {
  if (n.kind == Node::Kind::Ident && n.name != "pi" && n.name != "e" &&
      !is_function_name(n.name))
    out.insert(n.name);
  if (n.lhs) collect_idents(*n.lhs, out);
  if (n.rhs) collect_idents(*n.rhs, out);
}

}  // namespace

Expr Expr::parse(const std::string& source) {
  Expr e;
  e.source_ = source;
  e.root_ = Parser(source).run();
  return e;
}

double Expr::evaluate(const Bindings& b) const {
  if (!root_) throw EvalError("empty expression");
  return eval_node(*root_, b, source_);
}

std::string Expr::print() const {
  std::string out;
  if (root_) print_node(*root_, out);
  return out;
}

std::set<std::string> Expr::free_identifiers() const {
  std::set<std::string> out;
  if (root_) collect_idents(*root_, out);
  return out;
}

RealFieldHandle to_field(const Expr& e, const CoordinateSystem& coords,
                         const Bindings& params) {
  const auto free = e.free_identifiers();
  const bool needs_uv = free.count("u") > 0 || free.count("v") > 0;
  FieldHandle phi = coords.phi;
  auto eval = [e, params, needs_uv, phi](Point z) {
    Bindings b = params;
    b.set("x", z.x);
    b.set("y", z.y);
    if (needs_uv) {
      const Complex w = phi(z);
      b.set("u", w.real());
      b.set("v", w.imag());
    }
    return e.evaluate(b);
  };
  return RealFieldHandle(std::move(eval), coords.validity);
}

}  // namespace vekua
