#ifndef VEKUA_CALCULUS_HPP
#define VEKUA_CALCULUS_HPP

#include "vekua/field.hpp"

namespace vekua {

/// Default central-difference step; the effective step is scaled by
/// max(1, |z|) at the evaluation point.
inline constexpr double kDefaultStep = 1e-5;

/// Wirtinger derivative d/dz = (d/dx - i d/dy)/2 by central differences,
/// O(step^2). Throws StencilError if a stencil point leaves the domain.
Complex wirtinger_dz(const FieldHandle& h, Point z, double step = kDefaultStep);

/// Wirtinger derivative d/dzbar = (d/dx + i d/dy)/2 by central differences.
Complex wirtinger_dzbar(const FieldHandle& h, Point z,
                        double step = kDefaultStep);

Complex wirtinger_dz(const RealFieldHandle& h, Point z,
                     double step = kDefaultStep);
Complex wirtinger_dzbar(const RealFieldHandle& h, Point z,
                        double step = kDefaultStep);

/// 5-point Laplacian, O(step^2).
double laplacian(const RealFieldHandle& h, Point z, double step = kDefaultStep);

/// Central-difference gradient (h_x, h_y).
struct Gradient {
  double dx;
  double dy;
};
Gradient gradient(const RealFieldHandle& h, Point z, double step = kDefaultStep);

/// Field handles whose evaluation performs the finite difference at z.
FieldHandle wirtinger_dz_field(const FieldHandle& h, double step = kDefaultStep);
FieldHandle wirtinger_dzbar_field(const FieldHandle& h,
                                  double step = kDefaultStep);
FieldHandle wirtinger_dzbar_field(const RealFieldHandle& h,
                                  double step = kDefaultStep);

}  // namespace vekua

#endif  // VEKUA_CALCULUS_HPP
