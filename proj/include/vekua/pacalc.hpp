#ifndef VEKUA_PACALC_HPP
#define VEKUA_PACALC_HPP

#include <functional>

#include "vekua/genpair.hpp"
#include "vekua/quadrature.hpp"

namespace vekua {

/// Strategy producing an integration path between two points. Domains are
/// declared star-shaped with respect to the base point, so straight
/// segments are the default; the axis-aligned builder matches the
/// rectangle-friendly two-leg path.
using PathBuilder = std::function<Path(Point, Point)>;

PathBuilder straight_path();
PathBuilder axis_aligned_path();

/// Threshold for the antigradient compatibility precheck.
inline constexpr double kCompatibilityTol = 1e-4;

/// (F,G)-derivative W_z - A W - B conj(W) as an evaluable field. For
/// (F,G)-pseudoanalytic W this is Bers's analogue of the complex
/// derivative; in particular it annihilates F and G themselves.
FieldHandle fg_derivative(const GeneratingPair& p, const FieldHandle& W,
                          double step = kDefaultStep);

/// (F,G)-integral over the path:
///   F(end) Re int G* w dz + G(end) Re int F* w dz
/// with (F*, G*) the adjoint pair. For w the (F,G)-derivative of W this is
/// path-independent and recovers W up to generator terms.
Complex fg_integral(const GeneratingPair& p, const FieldHandle& w,
                    const Path& path, double tol = kDefaultQuadTol);

/// Reconstructs the real phi with dphi/dz = Phi and phi(base) = 0, as
/// phi(z) = 2 Re int_base^z Phi dzeta. Requires the compatibility condition
/// d_y Phi_1 + d_x Phi_2 = 0; it is probed on compat_sample (or on a small
/// ring around base when the sample is empty) and failure throws
/// NotAGradientError.
RealFieldHandle antigradient(const FieldHandle& Phi, Point base,
                             const PathBuilder& paths = straight_path(),
                             double tol = kDefaultQuadTol,
                             const Grid& compat_sample = {});

/// Mirror operator for dphi/dzbar = Phi: phi(z) = 2 Re int conj(Phi) dzeta,
/// compatibility d_y Phi_1 - d_x Phi_2 = 0.
RealFieldHandle antigradient_bar(const FieldHandle& Phi, Point base,
                                 const PathBuilder& paths = straight_path(),
                                 double tol = kDefaultQuadTol,
                                 const Grid& compat_sample = {});

/// P = f d/dz f^{-1}: maps real solutions of (-Lap + nu)g = 0 into
/// solutions of the successor Vekua equation.
FieldHandle op_P(const RealFieldHandle& f, const RealFieldHandle& g,
                 double step = kDefaultStep);

/// S = f A f^{-1}: the inverse transplant; S(Pg) = g + c f.
RealFieldHandle op_S(const RealFieldHandle& f, const FieldHandle& w, Point base,
                     double tol = kDefaultQuadTol,
                     const PathBuilder& paths = straight_path());

/// Given W1 solving (-Lap + r1)W1 = 0 with r1 = Lap f / f, builds W2 with
/// r2 = 2(grad f)^2/f^2 - r1 such that W1 + i W2 solves the main Vekua
/// equation: W2 = f^{-1} Abar(i f^2 d_zbar(f^{-1} W1)). The free additive
/// c/f term is fixed by zeroing the antigradient at base.
RealFieldHandle conjugate_metaharmonic(const RealFieldHandle& f,
                                       const RealFieldHandle& W1, Point base,
                                       double tol = kDefaultQuadTol,
                                       const PathBuilder& paths = straight_path());

/// Inverse direction: W1 = -f Abar(i f^{-2} d_zbar(f W2)).
RealFieldHandle conjugate_metaharmonic_inverse(
    const RealFieldHandle& f, const RealFieldHandle& W2, Point base,
    double tol = kDefaultQuadTol, const PathBuilder& paths = straight_path());

/// Conductivity counterpart: U solving div(f^2 grad U) = 0 yields
/// V = Abar(i f^2 U_zbar) solving div(f^{-2} grad V) = 0, with
/// f U + i V / f solving the main Vekua equation.
RealFieldHandle conjugate_conductivity(const RealFieldHandle& f,
                                       const RealFieldHandle& U, Point base,
                                       double tol = kDefaultQuadTol,
                                       const PathBuilder& paths = straight_path());

/// Pointwise residual statistics over a sample grid.
struct ResidualReport {
  double max_abs = 0.0;
  double mean_abs = 0.0;
  std::size_t count = 0;
};

/// |W_zbar - (f_zbar/f) conj(W)| over the sample: how well W solves the
/// main Vekua equation.
ResidualReport vekua_residual(const RealFieldHandle& f, const FieldHandle& W,
                              const Grid& sample, double step = kDefaultStep);

/// Residuals of the p-analytic system phi_x = psi_y / f^2,
/// phi_y = -psi_x / f^2 for the second-kind function phi + i psi with
/// phi = Re(W)/f, psi = f Im(W).
ResidualReport panalytic_residual(const RealFieldHandle& f,
                                  const FieldHandle& W, const Grid& sample,
                                  double step = kDefaultStep);

/// Max over the sample of
///   | (Lap - nu) phi / 4 - (d_zbar + (f_z/f)C)(d_z - (f_z/f)C) phi |,
/// the two-sided factorization identity for a positive particular solution
/// f of (-Lap + nu)f = 0. The outer difference uses a sqrt(step)-scaled
/// step to keep the nested-difference noise under control.
double factorization_residual(const RealFieldHandle& f,
                              const RealFieldHandle& nu,
                              const RealFieldHandle& phi, const Grid& sample,
                              double step = kDefaultStep);

}  // namespace vekua

#endif  // VEKUA_PACALC_HPP
