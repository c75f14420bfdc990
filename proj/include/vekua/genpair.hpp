#ifndef VEKUA_GENPAIR_HPP
#define VEKUA_GENPAIR_HPP

#include <map>
#include <memory>
#include <shared_mutex>

#include "vekua/calculus.hpp"
#include "vekua/expr.hpp"
#include "vekua/field.hpp"

namespace vekua {

/// Two complex fields with Im(conj(F)G) > 0 on their shared domain. Every
/// complex W then decomposes uniquely as W = phi F + psi G with real phi,
/// psi, generalizing the pair (1, i) of classical analytic function theory.
struct GeneratingPair {
  FieldHandle F;
  FieldHandle G;

  bool in_domain(Point z) const { return F.in_domain(z) && G.in_domain(z); }

  /// F conj(G) - conj(F) G = -2i Im(conj(F)G); purely imaginary, nonzero.
  Complex pairing(Point z) const {
    const Complex fv = F(z), gv = G(z);
    return fv * std::conj(gv) - std::conj(fv) * gv;
  }

  /// Real (phi, psi) with phi F(z0) + psi G(z0) = a; the 2x2 system is
  /// solvable because Im(conj(F)G)(z0) > 0.
  std::pair<double, double> decompose(Complex a, Point z0) const;
};

/// The four quotient fields a, b, A, B built from Wirtinger derivatives of
/// the generators. They define both the Vekua equation
/// W_zbar = a W + b conj(W) and the derivative W_z - A W - B conj(W).
struct CharacteristicCoefficients {
  FieldHandle a;
  FieldHandle b;
  FieldHandle A;
  FieldHandle B;
};

CharacteristicCoefficients characteristic_coefficients(
    const GeneratingPair& p, double step = kDefaultStep);

/// Adjoint pair (F*, G*) = (-2 conj(F)/d, 2 conj(G)/d), d the pairing.
GeneratingPair adjoint(const GeneratingPair& p);

/// Per-pair outcome of the Definition-of-successor identities
/// a_q = a_p and b_q = -B_p, measured on a sample grid.
struct SuccessorReport {
  double max_a_diff = 0.0;
  double max_b_diff = 0.0;
  bool passed = false;
};

SuccessorReport successor_check(const GeneratingPair& p,
                                const GeneratingPair& q, const Grid& sample,
                                double tol, double step = kDefaultStep);

/// Separable particular solution f = U(u) V(v) over an analytic orthogonal
/// coordinate map. The single user-supplied object everything else is
/// generated from. U and V are expression texts in the single variables u
/// and v; positivity of f is enforced at every evaluation.
class SeparableWeight {
 public:
  SeparableWeight(Expr bigU, Expr bigV, CoordinateSystem coords,
                  Bindings params = {});

  /// Constant weight f == 1 over Cartesian coordinates (classical case).
  static SeparableWeight unit();

  const RealFieldHandle& f() const { return f_; }
  const CoordinateSystem& coords() const { return coords_; }
  const Expr& bigU() const { return bigU_; }
  const Expr& bigV() const { return bigV_; }
  const Bindings& params() const { return params_; }

  double eval_U(double u) const;
  double eval_V(double v) const;

  /// U'(u)/U(u) and V'(v)/V(v) by one-dimensional central differences
  /// (relative step 1e-6).
  double logU_prime(double u) const;
  double logV_prime(double v) const;

  /// Positivity and differentiability probes over the sample's coordinate
  /// images; throws NonpositiveWeightError / Error on failure.
  void validate(const Grid& sample) const;

 private:
  Expr bigU_, bigV_;
  CoordinateSystem coords_;
  Bindings params_;
  RealFieldHandle f_;
};

/// F = f, G = i/f: the generating pair of the main Vekua equation
/// W_zbar = (f_zbar / f) conj(W).
GeneratingPair main_pair(const SeparableWeight& w);

/// The explicit generating sequence for a separable weight:
///   even m: (phi_z^m F, phi_z^m G)
///   odd  m: (phi_z^m F / U^2, phi_z^m U^2 G)
/// with (F, G) the main pair. Each (F_{m+1}, G_{m+1}) is a successor of
/// (F_m, G_m), so higher derivatives and formal powers can be formed.
class GeneratingSequence {
 public:
  explicit GeneratingSequence(SeparableWeight w);

  /// Memoized; safe for concurrent readers.
  const GeneratingPair& pair(int m) const;

  const SeparableWeight& weight() const { return state_->weight; }

 private:
  struct State {
    SeparableWeight weight;
    mutable std::map<int, GeneratingPair> cache;
    mutable std::shared_mutex mutex;
    explicit State(SeparableWeight w) : weight(std::move(w)) {}
  };
  GeneratingPair build_pair(int m) const;
  std::shared_ptr<State> state_;
};

inline GeneratingSequence generating_sequence(const SeparableWeight& w) {
  return GeneratingSequence(w);
}

}  // namespace vekua

#endif  // VEKUA_GENPAIR_HPP
