#ifndef VEKUA_ELLIPTIC_HPP
#define VEKUA_ELLIPTIC_HPP

#include <utility>
#include <vector>

#include "vekua/formalpowers.hpp"

namespace vekua {

/// Step used for equation-level (second-order) finite-difference residuals;
/// wider than kDefaultStep because the 5-point Laplacian divides roundoff
/// by step^2.
inline constexpr double kResidualStep = 1e-4;

/// One of the three supported second-order elliptic equations, bundled with
/// the separable weight that powers the solution system:
///   schrodinger:        (-Lap + nu) u = 0, weight f solves it, f = U V;
///   conductivity:       div(f^2 grad u) = 0, f the separable coefficient root;
///   div_p_grad_plus_q:  (div p grad + q) u = 0 with positive particular
///                       solution u0; the weight must equal p^{1/2} u0.
class EquationDescriptor {
 public:
  enum class Kind { schrodinger, conductivity, div_p_grad_plus_q };

  static EquationDescriptor schrodinger(RealFieldHandle nu, SeparableWeight f);
  static EquationDescriptor conductivity(SeparableWeight f);
  static EquationDescriptor div_p_grad_plus_q(RealFieldHandle p,
                                              RealFieldHandle q,
                                              RealFieldHandle u0,
                                              SeparableWeight f);

  Kind kind() const { return kind_; }
  const SeparableWeight& weight() const { return weight_; }
  const RealFieldHandle& nu() const { return nu_; }
  const RealFieldHandle& p() const { return p_; }
  const RealFieldHandle& q() const { return q_; }
  const RealFieldHandle& u0() const { return u0_; }

 private:
  EquationDescriptor(Kind kind, SeparableWeight w)
      : kind_(kind), weight_(std::move(w)) {}
  Kind kind_;
  SeparableWeight weight_;
  RealFieldHandle nu_, p_, q_, u0_;
};

/// Mixed-partial separability residual |d2 log f / du dv| at z, computed in
/// the z-plane through the conformal map (no inverse map needed).
double separability_residual(const RealFieldHandle& f,
                             const CoordinateSystem& coords, Point z,
                             double step = kResidualStep);

/// The particular solution the equation supplies for Theorem-45 machinery:
/// f itself for schrodinger/conductivity, p^{1/2} u0 for the general case.
/// Throws NotSeparableError when log f fails the mixed-partial test on the
/// sample, with tolerance 1e-6 (1 + |log f|).
RealFieldHandle weight_from_equation(const EquationDescriptor& eq,
                                     const Grid& sample,
                                     double step = kResidualStep);

/// Checks the descriptor's own residual invariants (particular solution
/// quality, positivity, weight consistency) on a sample grid; throws on
/// violation.
void validate_equation(const EquationDescriptor& eq, const Grid& sample,
                       double step = kResidualStep);

/// Exact solutions of the equation, built from real parts of formal powers
/// (coefficient 1 then i per order). Members that vanish identically on the
/// probe grid (the a = i, n = 0 companion for a main pair) are dropped and
/// recorded.
struct CompleteSystem {
  struct Member {
    RealFieldHandle fn;
    int order;
    bool coeff_i;  // false: a = 1, true: a = i
  };
  std::vector<Member> members;
  std::vector<std::pair<int, bool>> dropped;
  std::size_t size() const { return members.size(); }
};

CompleteSystem complete_system(const EquationDescriptor& eq,
                               const FormalPowerBasis& basis, int N,
                               const Grid& probe);

/// Hard-coded closed-form systems transcribed for cross-checking the
/// generated ones: the exponential Yukawa family (orders 0..2, both
/// coefficients) and the Bragg-Dettman cosh/cos families (orders 0..3,
/// coefficient 1).
enum class ClosedFormKind { yukawa_exp, yukawa_cosh, helmholtz_cos };
CompleteSystem closed_form_system(ClosedFormKind kind, double c, int N);

/// Finite-difference residual of the equation applied to u over the sample.
ResidualReport equation_residual(const EquationDescriptor& eq,
                                 const RealFieldHandle& u, const Grid& sample,
                                 double step = kResidualStep);

/// r1 = Lap f / f and r2 = 2 (grad f)^2 / f^2 - r1: the potentials solved
/// by the real and imaginary parts of main-Vekua solutions.
std::pair<RealFieldHandle, RealFieldHandle> associated_potentials(
    const RealFieldHandle& f, double step = kResidualStep);

/// q1 = -(1/p)(q/p + 2 <grad p/p, grad u0/u0> + 2 (grad u0/u0)^2), the
/// potential of the associated equation solved by p^{1/2} Im W.
RealFieldHandle q1_potential(const RealFieldHandle& p, const RealFieldHandle& q,
                             const RealFieldHandle& u0,
                             double step = kResidualStep);

}  // namespace vekua

#endif  // VEKUA_ELLIPTIC_HPP
