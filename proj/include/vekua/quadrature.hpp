#ifndef VEKUA_QUADRATURE_HPP
#define VEKUA_QUADRATURE_HPP

#include <vector>

#include "vekua/field.hpp"

namespace vekua {

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr int kMaxBisectionDepth = 20;

/// Complex contour integral of h along the polyline, by composite 8-point
/// Gauss-Legendre with adaptive bisection per segment. Throws
/// QuadratureError when the error estimate stays above tol at max depth.
Complex line_integral(const FieldHandle& h, const Path& path,
                      double tol = kDefaultQuadTol);

/// Partial integrals from path.start() to each node; front() is 0 and
/// back() equals line_integral over the whole path.
std::vector<Complex> cumulative_line_integrals(const FieldHandle& h,
                                               const Path& path,
                                               double tol = kDefaultQuadTol);

}  // namespace vekua

#endif  // VEKUA_QUADRATURE_HPP
