#ifndef VEKUA_FORMALPOWERS_HPP
#define VEKUA_FORMALPOWERS_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vekua/pacalc.hpp"

namespace vekua {

/// Z_m^(0)(a, z0; .) = lambda F_m + mu G_m with real lambda, mu fixed by
/// lambda F_m(z0) + mu G_m(z0) = a.
FieldHandle order_zero(const GeneratingSequence& seq, int m, Complex a,
                       Point z0);

/// Formal powers Z^(n)(a, z0; z) for the sequence's main pair, all orders
/// n = 0..max_order, built by the integral recursion
///   Z_m^(n+1) = (n+1) int Z_{m+1}^(n) d_(F_m,G_m) zeta
/// evaluated in one sweep along a polyline from the center: every level's
/// cumulative integrals advance node by node, so one pass prices all
/// orders. Node count starts at max(32, ceil(64 L)) and doubles until two
/// refinements agree within quad_tol. Evaluations are cached per target
/// ray; the cache tolerates concurrent readers and writers.
class FormalPowerBasis {
 public:
  FormalPowerBasis(GeneratingSequence seq, Point center, int max_order,
                   double quad_tol = 1e-9,
                   PathBuilder paths = straight_path());

  /// Values for both unit coefficients at one point, n = 0..max_order.
  struct Values {
    std::vector<Complex> coeff_one;  // Z^(n)(1, z0; z)
    std::vector<Complex> coeff_i;    // Z^(n)(i, z0; z)
  };

  Values values(Point z) const;

  /// Z^(n)(a, z0; z); linear in a by construction:
  /// Re(a) coeff_one[n] + Im(a) coeff_i[n].
  Complex power(int n, Complex a, Point z) const;

  FieldHandle power_field(int n, Complex a) const;

  /// Z_m^(n)(a, z0; z) for sequence level m >= 0 with m + n <= max_order.
  /// Level 0 is power(); higher levels exist to verify the differential
  /// relation d Z_m^(n)/dz = n Z_{m+1}^(n-1). Uncached.
  Complex level_power(int level, int n, Complex a, Point z) const;

  int max_order() const;
  Point center() const;
  double quad_tol() const;
  const GeneratingSequence& sequence() const;
  const SeparableWeight& weight() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

inline Complex formal_power(const FormalPowerBasis& basis, int n, Complex a,
                            Point z) {
  return basis.power(n, a, z);
}

/// Bulk evaluation; per-point failures are collected, not fatal.
struct GridEvaluation {
  std::vector<std::optional<FormalPowerBasis::Values>> values;
  std::vector<std::pair<std::size_t, std::string>> failures;
};
GridEvaluation basis_on_grid(const FormalPowerBasis& basis, const Grid& grid);

/// Ratios |Z^(n)(a, z0; z)/(a (z - z0)^n) - 1| on rays from the center.
/// Near the center formal powers behave like true powers, so the ratios
/// must shrink with the radius.
struct AsymptoticEntry {
  double radius;
  double direction;
  double ratio;
};
struct AsymptoticReport {
  std::vector<AsymptoticEntry> entries;
  bool passed = false;
};
AsymptoticReport asymptotic_check(const FormalPowerBasis& basis, int n,
                                  Complex a, std::vector<double> radii,
                                  const std::vector<double>& directions);

/// W^[0](z0), ..., W^[m_max](z0) by nested (F_m, G_m)-derivatives. Each
/// nesting level loses about two digits to finite differences, so orders
/// above 3 are refused; the per-level step is widened accordingly. noisy
/// is set when a step refinement moves some value by more than 10%.
struct HigherDerivatives {
  std::vector<Complex> values;
  bool noisy = false;
};
HigherDerivatives higher_derivative(const GeneratingSequence& seq,
                                    const FieldHandle& W, int m_max, Point z0,
                                    double step = kDefaultStep);

/// Taylor coefficients a_n = W^[n](z0) / n!, n = 0..count-1, count <= 4.
std::vector<Complex> taylor_coefficients(const GeneratingSequence& seq,
                                         const FieldHandle& W, Point z0,
                                         int count, double step = kDefaultStep);

}  // namespace vekua

#endif  // VEKUA_FORMALPOWERS_HPP
