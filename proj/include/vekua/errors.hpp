#ifndef VEKUA_ERRORS_HPP
#define VEKUA_ERRORS_HPP

#include <cstdio>
#include <stdexcept>
#include <string>

namespace vekua {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A finite-difference stencil point left the field's domain.
class StencilError : public Error {
 public:
  StencilError(double x, double y)
      : Error("stencil point (" + std::to_string(x) + ", " + std::to_string(y) +
              ") outside field domain"),
        x_(x),
        y_(y) {}
  double x() const { return x_; }
  double y() const { return y_; }

 private:
  double x_, y_;
};

/// A field was evaluated outside its domain predicate.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& msg, double achieved)
      : Error(msg + " (achieved estimate " + format(achieved) + ")"),
        achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  static std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
  }
  double achieved_;
};

/// Im(conj(F)G) vanished or the pair's 2x2 system is numerically singular.
class DegeneratePairError : public Error {
 public:
  using Error::Error;
};

/// The compatibility condition for an antigradient is violated: the input
/// field is not the Wirtinger derivative of any real function.
class NotAGradientError : public Error {
 public:
  using Error::Error;
};

/// A requested quantity over/underflows the representable range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Expression source text failed to parse.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Expression evaluation failed (unbound identifier or arithmetic domain).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// A weight that must be positive was found nonpositive.
class NonpositiveWeightError : public Error {
 public:
  using Error::Error;
};

/// The supplied weight does not factor as U(u)V(v) over the coordinates.
class NotSeparableError : public Error {
 public:
  using Error::Error;
};

/// Every singular value of the collocation matrix fell below the cutoff.
class RankCollapseError : public Error {
 public:
  using Error::Error;
};

/// Bad run configuration (missing field, unparsable expression, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace vekua

#endif  // VEKUA_ERRORS_HPP
