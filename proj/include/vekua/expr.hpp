#ifndef VEKUA_EXPR_HPP
#define VEKUA_EXPR_HPP

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vekua/coords.hpp"
#include "vekua/field.hpp"

namespace vekua {

/// Name -> value map for expression evaluation. Small and copyable; lookup
/// is a linear scan, which is fine for the handful of names in play.
class Bindings {
 public:
  Bindings() = default;
  Bindings(std::initializer_list<std::pair<std::string, double>> init) {
    for (const auto& kv : init) set(kv.first, kv.second);
  }

  void set(const std::string& name, double value) {
    for (auto& kv : entries_)
      if (kv.first == name) {
        kv.second = value;
        return;
      }
    entries_.emplace_back(name, value);
  }

  const double* find(const std::string& name) const {
    for (const auto& kv : entries_)
      if (kv.first == name) return &kv.second;
    return nullptr;
  }

  const std::vector<std::pair<std::string, double>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, double>> entries_;
};

/// Parsed arithmetic expression over real scalars.
///
/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | atom ('^' factor)?
///   atom   := number | ident | ident '(' expr ')' | '(' expr ')'
///
/// '^' is right-associative and binds tighter than unary minus, so
/// "-2^2" means -(2^2). Known functions: exp, log, sin, cos, tan, sinh,
/// cosh, tanh, sqrt, abs. Constants: pi, e.
class Expr {
 public:
  struct Node;

  /// Throws ParseError with the byte offset on malformed input. Unknown
  /// identifiers are legal here; they surface as EvalError when evaluated
  /// without a binding.
  static Expr parse(const std::string& source);

  double evaluate(const Bindings& b) const;

  /// Canonical text form; parsing it again yields an equal tree.
  std::string print() const;

  /// Identifiers that need bindings (constants and function names excluded).
  std::set<std::string> free_identifiers() const;

  const std::string& source() const { return source_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string source_;
};

/// Lift an expression over {x, y, u, v} + params to a field on the plane;
/// u and v are pulled from the coordinate map when the expression mentions
/// them. The domain predicate is the coordinate system's validity region.
RealFieldHandle to_field(const Expr& e, const CoordinateSystem& coords,
                         const Bindings& params);

}  // namespace vekua

#endif  // VEKUA_EXPR_HPP
