#include "vekua/coords.hpp"

#include <cmath>
#include <complex>

namespace vekua {

namespace {

// Distance from z to the set {(x, 0) : |x| >= a}, the branch-cut locus of
// both the elliptic and bipolar maps.
double distance_to_real_tails(Point z, double a) {
  const double ax = std::abs(z.x);
  if (ax >= a) return std::abs(z.y);
  return std::hypot(a - ax, z.y);
}

// Distance from z to the nonpositive real axis (principal log/sqrt cut).
double distance_to_negative_axis(Point z) {
  if (z.x <= 0.0) return std::abs(z.y);
  return z.abs();
}

}  // namespace

CoordinateSystem cartesian() {
  CoordinateSystem cs;
  cs.name = "cartesian";
  cs.phi = FieldHandle([](Point z) { return z.to_complex(); });
  cs.phi_z = FieldHandle::constant(1.0);
  cs.validity = [](Point z) { return z.finite(); };
  return cs;
}

CoordinateSystem polar(double margin) {
  CoordinateSystem cs;
  cs.name = "polar";
  cs.validity = [margin](Point z) {
    return z.finite() && distance_to_negative_axis(z) > margin;
  };
  cs.phi = FieldHandle([](Point z) { return std::log(z.to_complex()); },
                       cs.validity);
  cs.phi_z = FieldHandle([](Point z) { return 1.0 / z.to_complex(); },
                         cs.validity);
  return cs;
}

CoordinateSystem parabolic(double margin) {
  CoordinateSystem cs;
  cs.name = "parabolic";
  cs.validity = [margin](Point z) {
    return z.finite() && distance_to_negative_axis(z) > margin;
  };
  const double root2 = std::sqrt(2.0);
  cs.phi = FieldHandle(
      [root2](Point z) { return root2 * std::sqrt(z.to_complex()); },
      cs.validity);
  cs.phi_z = FieldHandle(
      [root2](Point z) { return 1.0 / (root2 * std::sqrt(z.to_complex())); },
      cs.validity);
  return cs;
}

CoordinateSystem elliptic(double alpha, double margin) {
  if (!(alpha > 0.0)) throw Error("elliptic coordinates need alpha > 0");
  CoordinateSystem cs;
  cs.name = "elliptic";
  const double scaled = margin * std::max(1.0, alpha);
  cs.validity = [alpha, scaled](Point z) {
    return z.finite() && distance_to_real_tails(z, alpha) > scaled;
  };
  cs.phi = FieldHandle(
      [alpha](Point z) { return std::asin(z.to_complex() / alpha); },
      cs.validity);
  cs.phi_z = FieldHandle(
      [alpha](Point z) {
        const Complex zz = z.to_complex();
        return 1.0 / std::sqrt(alpha * alpha - zz * zz);
      },
      cs.validity);
  return cs;
}

CoordinateSystem bipolar(double alpha, double margin) {
  if (!(alpha > 0.0)) throw Error("bipolar coordinates need alpha > 0");
  CoordinateSystem cs;
  cs.name = "bipolar";
  const double scaled = margin * std::max(1.0, alpha);
  cs.validity = [alpha, scaled](Point z) {
    return z.finite() && distance_to_real_tails(z, alpha) > scaled;
  };
  cs.phi = FieldHandle(
      [alpha](Point z) {
        const Complex zz = z.to_complex();
        return std::log((alpha + zz) / (alpha - zz));
      },
      cs.validity);
  cs.phi_z = FieldHandle(
      [alpha](Point z) {
        const Complex zz = z.to_complex();
        return 2.0 * alpha / (alpha * alpha - zz * zz);
      },
      cs.validity);
  return cs;
}

CoordinateSystem coordinate_system(const std::string& name, double alpha,
                                   double margin) {
  if (name == "cartesian") return cartesian();
  if (name == "polar") return polar(margin);
  if (name == "parabolic") return parabolic(margin);
  if (name == "elliptic") return elliptic(alpha, margin);
  if (name == "bipolar") return bipolar(alpha, margin);
  throw Error("unknown coordinate system '" + name + "'");
}

}  // namespace vekua
