#include "vekua/genpair.hpp"

#include <cmath>
#include <mutex>

namespace vekua {

namespace {

constexpr double kDegenerateTol = 1e-12;
constexpr double kLogDerivStep = 1e-6;  // relative, for U'/U and V'/V

Complex pairing_checked(const GeneratingPair& p, Point z) {
  const Complex d = p.pairing(z);
  if (std::abs(d) < kDegenerateTol)
    throw DegeneratePairError("generating pair degenerate at (" +
                              std::to_string(z.x) + ", " + std::to_string(z.y) +
                              ")");
  return d;
}

}  // namespace

std::pair<double, double> GeneratingPair::decompose(Complex a, Point z0) const {
  const Complex fv = F(z0), gv = G(z0);
  // [Re F  Re G; Im F  Im G] [phi psi]^T = [Re a  Im a]^T
  const double det = fv.real() * gv.imag() - fv.imag() * gv.real();
  if (std::abs(det) < kDegenerateTol)
    throw DegeneratePairError("pair coefficient system singular at center");
  const double phi = (a.real() * gv.imag() - a.imag() * gv.real()) / det;
  const double psi = (fv.real() * a.imag() - fv.imag() * a.real()) / det;
  return {phi, psi};
}

CharacteristicCoefficients characteristic_coefficients(const GeneratingPair& p,
                                                       double step) {
  const FieldHandle F = p.F, G = p.G;
  auto quotient = [F, G, step](bool bar, bool lower) {
    // lower selects a/b (zbar derivatives); !lower selects A/B (z).
    // bar selects the first of each pair (a or A), carrying the minus sign
    // and the conjugated generators.
    return FieldHandle(
        [F, G, step, bar, lower](Point z) {
          const Complex fv = F(z), gv = G(z);
          const Complex d = fv * std::conj(gv) - std::conj(fv) * gv;
          if (std::abs(d) < kDegenerateTol)
            throw DegeneratePairError("degenerate pair at (" +
                                      std::to_string(z.x) + ", " +
                                      std::to_string(z.y) + ")");
          const Complex Fd = lower ? wirtinger_dzbar(F, z, step)
                                   : wirtinger_dz(F, z, step);
          const Complex Gd = lower ? wirtinger_dzbar(G, z, step)
                                   : wirtinger_dz(G, z, step);
          if (bar) return -(std::conj(fv) * Gd - Fd * std::conj(gv)) / d;
          return (fv * Gd - Fd * gv) / d;
        },
        both(F.domain(), G.domain()));
  };
  CharacteristicCoefficients cc;
  cc.a = quotient(true, true);
  cc.b = quotient(false, true);
  cc.A = quotient(true, false);
  cc.B = quotient(false, false);
  return cc;
}

GeneratingPair adjoint(const GeneratingPair& p) {
  const GeneratingPair q = p;
  GeneratingPair out;
  out.F = FieldHandle(
      [q](Point z) { return -2.0 * std::conj(q.F(z)) / pairing_checked(q, z); },
      both(q.F.domain(), q.G.domain()));
  out.G = FieldHandle(
      [q](Point z) { return 2.0 * std::conj(q.G(z)) / pairing_checked(q, z); },
      both(q.F.domain(), q.G.domain()));
  return out;
}

SuccessorReport successor_check(const GeneratingPair& p,
                                const GeneratingPair& q, const Grid& sample,
                                double tol, double step) {
  const CharacteristicCoefficients cp = characteristic_coefficients(p, step);
  const CharacteristicCoefficients cq = characteristic_coefficients(q, step);
  SuccessorReport report;
  for (const Point& z : sample.points) {
    report.max_a_diff = std::max(report.max_a_diff, std::abs(cq.a(z) - cp.a(z)));
    report.max_b_diff = std::max(report.max_b_diff, std::abs(cq.b(z) + cp.B(z)));
  }
  report.passed = report.max_a_diff < tol && report.max_b_diff < tol;
  return report;
}

SeparableWeight::SeparableWeight(Expr bigU, Expr bigV, CoordinateSystem coords,
                                 Bindings params)
    : bigU_(std::move(bigU)),
      bigV_(std::move(bigV)),
      coords_(std::move(coords)),
      params_(std::move(params)) {
  for (const auto& name : bigU_.free_identifiers())
    if (name != "u" && !params_.find(name))
      throw ConfigError("U expression references unbound '" + name + "'");
  for (const auto& name : bigV_.free_identifiers())
    if (name != "v" && !params_.find(name))
      throw ConfigError("V expression references unbound '" + name + "'");

  const Expr U = bigU_, V = bigV_;
  const Bindings par = params_;
  const FieldHandle phi = coords_.phi;
  f_ = RealFieldHandle(
      [U, V, par, phi](Point z) {
        const Complex w = phi(z);
        Bindings b = par;
        b.set("u", w.real());
        const double uval = U.evaluate(b);
        Bindings c = par;
        c.set("v", w.imag());
        const double vval = V.evaluate(c);
        const double f = uval * vval;
        if (!(f > 0.0))
          throw NonpositiveWeightError(
              "weight f nonpositive at (" + std::to_string(z.x) + ", " +
              std::to_string(z.y) + "): f = " + std::to_string(f));
        return f;
      },
      coords_.validity);
}

SeparableWeight SeparableWeight::unit() {
  return SeparableWeight(Expr::parse("1"), Expr::parse("1"), cartesian());
}

double SeparableWeight::eval_U(double u) const {
  Bindings b = params_;
  b.set("u", u);
  return bigU_.evaluate(b);
}

double SeparableWeight::eval_V(double v) const {
  Bindings b = params_;
  b.set("v", v);
  return bigV_.evaluate(b);
}

double SeparableWeight::logU_prime(double u) const {
  const double h = kLogDerivStep * std::max(1.0, std::abs(u));
  return (eval_U(u + h) - eval_U(u - h)) / (2.0 * h * eval_U(u));
}

double SeparableWeight::logV_prime(double v) const {
  const double h = kLogDerivStep * std::max(1.0, std::abs(v));
  return (eval_V(v + h) - eval_V(v - h)) / (2.0 * h * eval_V(v));
}

void SeparableWeight::validate(const Grid& sample) const {
  for (const Point& z : sample.points) {
    if (!f_.in_domain(z))
      throw Error("weight sample point outside coordinate validity region");
    f_(z);  // throws NonpositiveWeightError on failure
    const Complex w = coords_.phi(z);
    // Differentiability probe: for C^2-smooth U the centered second
    // difference shrinks by ~4 when the step halves; a slope kink only
    // shrinks it by ~2.
    for (int pass = 0; pass < 2; ++pass) {
      const bool on_u = pass == 0;
      const double t = on_u ? w.real() : w.imag();
      const double h = 1e-3 * std::max(1.0, std::abs(t));
      auto at = [&](double s) { return on_u ? eval_U(s) : eval_V(s); };
      const double d2 = at(t + h) - 2.0 * at(t) + at(t - h);
      const double d2half = at(t + h / 2) - 2.0 * at(t) + at(t - h / 2);
      const double scale = std::abs(at(t)) + 1.0;
      if (std::abs(d2) > 1e-7 * scale && std::abs(d2half) > 0.35 * std::abs(d2))
        throw Error(std::string("weight ") + (on_u ? "U" : "V") +
                    " fails smoothness probe near " + std::to_string(t));
    }
  }
}

GeneratingPair main_pair(const SeparableWeight& w) {
  const RealFieldHandle f = w.f();
  GeneratingPair p;
  p.F = FieldHandle([f](Point z) { return Complex(f(z), 0.0); }, f.domain());
  p.G = FieldHandle([f](Point z) { return Complex(0.0, 1.0 / f(z)); },
                    f.domain());
  return p;
}

GeneratingSequence::GeneratingSequence(SeparableWeight w)
    : state_(std::make_shared<State>(std::move(w))) {}

const GeneratingPair& GeneratingSequence::pair(int m) const {
  {
    std::shared_lock lock(state_->mutex);
    auto it = state_->cache.find(m);
    if (it != state_->cache.end()) return it->second;
  }
  GeneratingPair built = build_pair(m);
  std::unique_lock lock(state_->mutex);
  auto [it, inserted] = state_->cache.emplace(m, std::move(built));
  (void)inserted;  // a racing builder may have won; values are identical
  return it->second;
}

GeneratingPair GeneratingSequence::build_pair(int m) const {
  const SeparableWeight& w = state_->weight;
  const RealFieldHandle f = w.f();
  const FieldHandle phi = w.coords().phi;
  const FieldHandle phi_z = w.coords().phi_z;
  const bool odd = (m % 2) != 0;
  const SeparableWeight weight = w;

  auto phi_z_pow = [phi_z, m](Point z) {
    const Complex base = phi_z(z);
    const Complex value = std::pow(base, m);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()) ||
        (m != 0 && std::abs(value) == 0.0))
      throw RangeError("phi_z^" + std::to_string(m) +
                       " outside representable range at (" +
                       std::to_string(z.x) + ", " + std::to_string(z.y) + ")");
    return value;
  };

  GeneratingPair p;
  if (!odd) {
    p.F = FieldHandle(
        [phi_z_pow, f](Point z) { return phi_z_pow(z) * f(z); }, f.domain());
    p.G = FieldHandle(
        [phi_z_pow, f](Point z) {
          return phi_z_pow(z) * Complex(0.0, 1.0 / f(z));
        },
        f.domain());
  } else {
    p.F = FieldHandle(
        [phi_z_pow, f, phi, weight](Point z) {
          const double uu = weight.eval_U(phi(z).real());
          return phi_z_pow(z) * f(z) / (uu * uu);
        },
        f.domain());
    p.G = FieldHandle(
        [phi_z_pow, f, phi, weight](Point z) {
          const double uu = weight.eval_U(phi(z).real());
          return phi_z_pow(z) * Complex(0.0, uu * uu / f(z));
        },
        f.domain());
  }
  return p;
}

}  // namespace vekua
