#include "vekua/pacalc.hpp"

#include <cmath>

namespace vekua {

namespace {

// Points where the compatibility of an antigradient input is probed when
// the caller supplies no sample: two small rings around the base point.
Grid default_compat_sample(const FieldHandle& Phi, Point base) {
  Grid g;
  const double scale = std::max(1.0, base.abs());
  for (double radius : {0.05 * scale, 0.1 * scale}) {
    for (int k = 0; k < 10; ++k) {
      const double t = 2.0 * M_PI * k / 10.0;
      const Point p{base.x + radius * std::cos(t), base.y + radius * std::sin(t)};
      if (Phi.in_domain(p)) g.points.push_back(p);
    }
  }
  return g;
}

// sign = +1 checks d_y Phi_1 + d_x Phi_2 (operator A), sign = -1 checks
// d_y Phi_1 - d_x Phi_2 (operator Abar).
void check_compatibility(const FieldHandle& Phi, Point base, const Grid& sample,
                         double sign) {
  const Grid& probe_ref = sample;
  Grid fallback;
  if (probe_ref.points.empty()) fallback = default_compat_sample(Phi, base);
  const Grid& probe = probe_ref.points.empty() ? fallback : probe_ref;
  double worst = 0.0;
  for (const Point& z : probe.points) {
    const RealFieldHandle p1 = real_part(Phi);
    const RealFieldHandle p2 = imag_part(Phi);
    const double dy1 = gradient(p1, z).dy;
    const double dx2 = gradient(p2, z).dx;
    worst = std::max(worst, std::abs(dy1 + sign * dx2));
  }
  if (worst > kCompatibilityTol)
    throw NotAGradientError("compatibility residual " + std::to_string(worst) +
                            " exceeds " + std::to_string(kCompatibilityTol));
}

}  // namespace

PathBuilder straight_path() {
  return [](Point from, Point to) {
    if (distance(from, to) == 0.0) throw Error("degenerate path request");
    return Path::segment(from, to);
  };
}

PathBuilder axis_aligned_path() {
  return [](Point from, Point to) {
    if (distance(from, to) == 0.0) throw Error("degenerate path request");
    const Point corner{to.x, from.y};
    std::vector<Point> nodes{from};
    if (distance(from, corner) > 0.0) nodes.push_back(corner);
    if (distance(nodes.back(), to) > 0.0) nodes.push_back(to);
    return Path(std::move(nodes));
  };
}

FieldHandle fg_derivative(const GeneratingPair& p, const FieldHandle& W,
                          double step) {
  const CharacteristicCoefficients cc = characteristic_coefficients(p, step);
  const FieldHandle A = cc.A, B = cc.B;
  return FieldHandle(
      [A, B, W, step](Point z) {
        const Complex wv = W(z);
        return wirtinger_dz(W, z, step) - A(z) * wv - B(z) * std::conj(wv);
      },
      both(W.domain(), both(p.F.domain(), p.G.domain())));
}

Complex fg_integral(const GeneratingPair& p, const FieldHandle& w,
                    const Path& path, double tol) {
  const GeneratingPair adj = adjoint(p);
  const Point end = path.end();
  const double re_g = line_integral(adj.G * w, path, tol).real();
  const double re_f = line_integral(adj.F * w, path, tol).real();
  return p.F(end) * re_g + p.G(end) * re_f;
}

RealFieldHandle antigradient(const FieldHandle& Phi, Point base,
                             const PathBuilder& paths, double tol,
                             const Grid& compat_sample) {
  check_compatibility(Phi, base, compat_sample, +1.0);
  return RealFieldHandle(
      [Phi, base, paths, tol](Point z) {
        if (distance(base, z) == 0.0) return 0.0;
        return 2.0 * line_integral(Phi, paths(base, z), tol).real();
      },
      Phi.domain());
}

RealFieldHandle antigradient_bar(const FieldHandle& Phi, Point base,
                                 const PathBuilder& paths, double tol,
                                 const Grid& compat_sample) {
  check_compatibility(Phi, base, compat_sample, -1.0);
  const FieldHandle conj_phi = conj_field(Phi);
  return RealFieldHandle(
      [conj_phi, base, paths, tol](Point z) {
        if (distance(base, z) == 0.0) return 0.0;
        return 2.0 * line_integral(conj_phi, paths(base, z), tol).real();
      },
      Phi.domain());
}

FieldHandle op_P(const RealFieldHandle& f, const RealFieldHandle& g,
                 double step) {
  const RealFieldHandle quotient(
      [f, g](Point z) { return g(z) / f(z); }, both(f.domain(), g.domain()));
  return FieldHandle(
      [f, quotient, step](Point z) {
        return f(z) * wirtinger_dz(quotient, z, step);
      },
      quotient.domain());
}

RealFieldHandle op_S(const RealFieldHandle& f, const FieldHandle& w, Point base,
                     double tol, const PathBuilder& paths) {
  const FieldHandle scaled(
      [f, w](Point z) { return w(z) / f(z); }, both(f.domain(), w.domain()));
  const RealFieldHandle anti = antigradient(scaled, base, paths, tol);
  return RealFieldHandle([f, anti](Point z) { return f(z) * anti(z); },
                         anti.domain());
}

RealFieldHandle conjugate_metaharmonic(const RealFieldHandle& f,
                                       const RealFieldHandle& W1, Point base,
                                       double tol, const PathBuilder& paths) {
  const RealFieldHandle scaled(
      [f, W1](Point z) { return W1(z) / f(z); }, both(f.domain(), W1.domain()));
  const FieldHandle integrand(
      [f, scaled](Point z) {
        const double fv = f(z);
        return Complex(0.0, 1.0) * fv * fv * wirtinger_dzbar(scaled, z);
      },
      scaled.domain());
  const RealFieldHandle psi = antigradient_bar(integrand, base, paths, tol);
  return RealFieldHandle([f, psi](Point z) { return psi(z) / f(z); },
                         psi.domain());
}

RealFieldHandle conjugate_metaharmonic_inverse(const RealFieldHandle& f,
                                               const RealFieldHandle& W2,
                                               Point base, double tol,
                                               const PathBuilder& paths) {
  const RealFieldHandle scaled(
      [f, W2](Point z) { return f(z) * W2(z); }, both(f.domain(), W2.domain()));
  const FieldHandle integrand(
      [f, scaled](Point z) {
        const double fv = f(z);
        return Complex(0.0, 1.0) / (fv * fv) * wirtinger_dzbar(scaled, z);
      },
      scaled.domain());
  const RealFieldHandle anti = antigradient_bar(integrand, base, paths, tol);
  return RealFieldHandle([f, anti](Point z) { return -f(z) * anti(z); },
                         anti.domain());
}

RealFieldHandle conjugate_conductivity(const RealFieldHandle& f,
                                       const RealFieldHandle& U, Point base,
                                       double tol, const PathBuilder& paths) {
  const FieldHandle integrand(
      [f, U](Point z) {
        const double fv = f(z);
        return Complex(0.0, 1.0) * Complex(fv * fv, 0.0) *
               wirtinger_dzbar(U, z);
      },
      both(f.domain(), U.domain()));
  return antigradient_bar(integrand, base, paths, tol);
}

ResidualReport vekua_residual(const RealFieldHandle& f, const FieldHandle& W,
                              const Grid& sample, double step) {
  ResidualReport report;
  double sum = 0.0;
  for (const Point& z : sample.points) {
    const Complex coeff = wirtinger_dzbar(f, z, step) / f(z);
    const Complex r = wirtinger_dzbar(W, z, step) - coeff * std::conj(W(z));
    const double a = std::abs(r);
    report.max_abs = std::max(report.max_abs, a);
    sum += a;
    ++report.count;
  }
  report.mean_abs = report.count ? sum / report.count : 0.0;
  return report;
}

ResidualReport panalytic_residual(const RealFieldHandle& f,
                                  const FieldHandle& W, const Grid& sample,
                                  double step) {
  const RealFieldHandle phi(
      [f, W](Point z) { return W(z).real() / f(z); }, both(f.domain(), W.domain()));
  const RealFieldHandle psi(
      [f, W](Point z) { return f(z) * W(z).imag(); }, both(f.domain(), W.domain()));
  ResidualReport report;
  double sum = 0.0;
  for (const Point& z : sample.points) {
    const Gradient gphi = gradient(phi, z, step);
    const Gradient gpsi = gradient(psi, z, step);
    const double p = f(z) * f(z);
    const double r1 = std::abs(gphi.dx - gpsi.dy / p);
    const double r2 = std::abs(gphi.dy + gpsi.dx / p);
    report.max_abs = std::max({report.max_abs, r1, r2});
    sum += r1 + r2;
    report.count += 2;
  }
  report.mean_abs = report.count ? sum / report.count : 0.0;
  return report;
}

double factorization_residual(const RealFieldHandle& f,
                              const RealFieldHandle& nu,
                              const RealFieldHandle& phi, const Grid& sample,
                              double step) {
  const FieldHandle logderiv(
      [f, step](Point z) { return wirtinger_dz(f, z, step) / f(z); },
      f.domain());
  // Right factor (d_z - (f_z/f)C) phi; phi is real so C acts trivially.
  const FieldHandle inner(
      [phi, logderiv, step](Point z) {
        return wirtinger_dz(phi, z, step) - logderiv(z) * phi(z);
      },
      both(phi.domain(), f.domain()));
  const double outer_step = std::sqrt(step);
  double worst = 0.0;
  for (const Point& z : sample.points) {
    const Complex lhs = 0.25 * (laplacian(phi, z, step) - nu(z) * phi(z));
    const Complex rhs = wirtinger_dzbar(inner, z, outer_step) +
                        logderiv(z) * std::conj(inner(z));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace vekua
