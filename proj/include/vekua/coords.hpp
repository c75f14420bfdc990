#ifndef VEKUA_COORDS_HPP
#define VEKUA_COORDS_HPP

#include <string>

#include "vekua/field.hpp"

namespace vekua {

/// Default radius of the neighbourhoods carved out around branch points and
/// cuts so that phi_z stays bounded and nonzero on the validity region.
inline constexpr double kBranchMargin = 1e-3;

/// Orthogonal coordinates u + iv = phi(x + iy) with phi analytic. phi_z is
/// supplied in closed form; validity excludes singular points and branch
/// cuts of the principal branch.
struct CoordinateSystem {
  std::string name;
  FieldHandle phi;
  FieldHandle phi_z;
  FieldHandle::DomainPred validity;

  double u(Point z) const { return phi(z).real(); }
  double v(Point z) const { return phi(z).imag(); }
};

/// phi(z) = z.
CoordinateSystem cartesian();

/// phi(z) = ln z (principal branch), so u = ln|z|, v = arg z.
CoordinateSystem polar(double margin = kBranchMargin);

/// phi(z) = sqrt(2) sqrt(z) (principal branch), so u = sqrt(r + x),
/// v = sqrt(r - x) in the upper half-plane.
CoordinateSystem parabolic(double margin = kBranchMargin);

/// phi(z) = arcsin(z / alpha), branch points at +-alpha.
CoordinateSystem elliptic(double alpha, double margin = kBranchMargin);

/// phi(z) = ln((alpha + z) / (alpha - z)), poles of phi_z at +-alpha.
CoordinateSystem bipolar(double alpha, double margin = kBranchMargin);

/// Catalog lookup by name ("cartesian", "polar", "parabolic", "elliptic",
/// "bipolar"); alpha is required by the last two.
CoordinateSystem coordinate_system(const std::string& name, double alpha = 1.0,
                                   double margin = kBranchMargin);

}  // namespace vekua

#endif  // VEKUA_COORDS_HPP
