#ifndef VEKUA_FIELD_HPP
#define VEKUA_FIELD_HPP

#include <functional>
#include <utility>

#include "vekua/geometry.hpp"

namespace vekua {

/// Evaluable complex field on a subdomain of the plane. Handles are pure:
/// evaluation has no side effects and the same point always yields the same
/// value, so they can be shared across threads freely.
class FieldHandle {
 public:
  using Eval = std::function<Complex(Point)>;
  using DomainPred = std::function<bool(Point)>;

  FieldHandle() = default;
  FieldHandle(Eval eval, DomainPred domain)
      : eval_(std::move(eval)), domain_(std::move(domain)) {}
  explicit FieldHandle(Eval eval) : eval_(std::move(eval)) {}

  Complex operator()(Point z) const { return eval_(z); }
  bool in_domain(Point z) const { return !domain_ || domain_(z); }
  const DomainPred& domain() const { return domain_; }

  static FieldHandle constant(Complex c) {
    return FieldHandle([c](Point) { return c; });
  }

 private:
  Eval eval_;
  DomainPred domain_;  // empty means the whole plane
};

/// Real-valued counterpart; wraps into a FieldHandle with zero imaginary part.
class RealFieldHandle {
 public:
  using Eval = std::function<double(Point)>;
  using DomainPred = FieldHandle::DomainPred;

  RealFieldHandle() = default;
  RealFieldHandle(Eval eval, DomainPred domain)
      : eval_(std::move(eval)), domain_(std::move(domain)) {}
  explicit RealFieldHandle(Eval eval) : eval_(std::move(eval)) {}

  double operator()(Point z) const { return eval_(z); }
  bool in_domain(Point z) const { return !domain_ || domain_(z); }
  const DomainPred& domain() const { return domain_; }

  static RealFieldHandle constant(double c) {
    return RealFieldHandle([c](Point) { return c; });
  }

  FieldHandle as_complex() const {
    auto f = eval_;
    return FieldHandle([f](Point z) { return Complex(f(z), 0.0); }, domain_);
  }

 private:
  Eval eval_;
  DomainPred domain_;
};

// Pointwise combinators. The result's domain is the conjunction of the
// operands' domains.

inline FieldHandle::DomainPred both(const FieldHandle::DomainPred& a,
                                    const FieldHandle::DomainPred& b) {
  if (!a) return b;
  if (!b) return a;
  return [a, b](Point z) { return a(z) && b(z); };
}

inline FieldHandle operator*(const FieldHandle& a, const FieldHandle& b) {
  return FieldHandle([a, b](Point z) { return a(z) * b(z); },
                     both(a.domain(), b.domain()));
}

inline FieldHandle operator+(const FieldHandle& a, const FieldHandle& b) {
  return FieldHandle([a, b](Point z) { return a(z) + b(z); },
                     both(a.domain(), b.domain()));
}

inline FieldHandle operator-(const FieldHandle& a, const FieldHandle& b) {
  return FieldHandle([a, b](Point z) { return a(z) - b(z); },
                     both(a.domain(), b.domain()));
}

inline FieldHandle operator*(Complex c, const FieldHandle& a) {
  return FieldHandle([c, a](Point z) { return c * a(z); }, a.domain());
}

inline FieldHandle conj_field(const FieldHandle& a) {
  return FieldHandle([a](Point z) { return std::conj(a(z)); }, a.domain());
}

inline RealFieldHandle real_part(const FieldHandle& a) {
  return RealFieldHandle([a](Point z) { return a(z).real(); }, a.domain());
}

inline RealFieldHandle imag_part(const FieldHandle& a) {
  return RealFieldHandle([a](Point z) { return a(z).imag(); }, a.domain());
}

inline RealFieldHandle operator*(const RealFieldHandle& a,
                                 const RealFieldHandle& b) {
  return RealFieldHandle([a, b](Point z) { return a(z) * b(z); },
                         both(a.domain(), b.domain()));
}

inline RealFieldHandle operator*(double c, const RealFieldHandle& a) {
  return RealFieldHandle([c, a](Point z) { return c * a(z); }, a.domain());
}

inline RealFieldHandle operator+(const RealFieldHandle& a,
                                 const RealFieldHandle& b) {
  return RealFieldHandle([a, b](Point z) { return a(z) + b(z); },
                         both(a.domain(), b.domain()));
}

inline RealFieldHandle operator-(const RealFieldHandle& a,
                                 const RealFieldHandle& b) {
  return RealFieldHandle([a, b](Point z) { return a(z) - b(z); },
                         both(a.domain(), b.domain()));
}

}  // namespace vekua

#endif  // VEKUA_FIELD_HPP
