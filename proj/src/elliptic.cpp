#include "vekua/elliptic.hpp"

#include <cmath>

namespace vekua {

namespace {

constexpr double kParticularSolutionTol = 1e-5;
constexpr double kDuplicateTol = 1e-12;

double second_xx(const RealFieldHandle& h, Point z, double s) {
  return (h({z.x + s, z.y}) - 2.0 * h(z) + h({z.x - s, z.y})) / (s * s);
}

double second_yy(const RealFieldHandle& h, Point z, double s) {
  return (h({z.x, z.y + s}) - 2.0 * h(z) + h({z.x, z.y - s})) / (s * s);
}

double second_xy(const RealFieldHandle& h, Point z, double s) {
  return (h({z.x + s, z.y + s}) - h({z.x + s, z.y - s}) -
          h({z.x - s, z.y + s}) + h({z.x - s, z.y - s})) /
         (4.0 * s * s);
}

}  // namespace

EquationDescriptor EquationDescriptor::schrodinger(RealFieldHandle nu,
                                                   SeparableWeight f) {
  EquationDescriptor eq(Kind::schrodinger, std::move(f));
  eq.nu_ = std::move(nu);
  return eq;
}

EquationDescriptor EquationDescriptor::conductivity(SeparableWeight f) {
  return EquationDescriptor(Kind::conductivity, std::move(f));
}

EquationDescriptor EquationDescriptor::div_p_grad_plus_q(RealFieldHandle p,
                                                         RealFieldHandle q,
                                                         RealFieldHandle u0,
                                                         SeparableWeight f) {
  EquationDescriptor eq(Kind::div_p_grad_plus_q, std::move(f));
  eq.p_ = std::move(p);
  eq.q_ = std::move(q);
  eq.u0_ = std::move(u0);
  return eq;
}

double separability_residual(const RealFieldHandle& f,
                             const CoordinateSystem& coords, Point z,
                             double step) {
  const RealFieldHandle logf(
      [f](Point w) { return std::log(f(w)); }, f.domain());
  const double s = step * std::max(1.0, z.abs());
  const Gradient g = gradient(logf, z, step);
  const Complex g_z = 0.5 * Complex(g.dx, -g.dy);
  const Complex g_zz = 0.25 * Complex(second_xx(logf, z, s) - second_yy(logf, z, s),
                                      -2.0 * second_xy(logf, z, s));
  const Complex pz = coords.phi_z(z);
  const Complex pzz = wirtinger_dz(coords.phi_z, z);
  // d2(log f)/du dv = -2 Im(g_zz z_w^2 + g_z z_ww) with z_w = 1/phi_z
  const Complex dww = g_zz / (pz * pz) - g_z * pzz / (pz * pz * pz);
  return std::abs(-2.0 * dww.imag());
}

RealFieldHandle weight_from_equation(const EquationDescriptor& eq,
                                     const Grid& sample, double step) {
  RealFieldHandle f;
  if (eq.kind() == EquationDescriptor::Kind::div_p_grad_plus_q) {
    const RealFieldHandle p = eq.p(), u0 = eq.u0();
    f = RealFieldHandle(
        [p, u0](Point z) {
          const double pv = p(z);
          if (!(pv > 0.0))
            throw NonpositiveWeightError("p nonpositive at (" +
                                         std::to_string(z.x) + ", " +
                                         std::to_string(z.y) + ")");
          return std::sqrt(pv) * u0(z);
        },
        both(p.domain(), u0.domain()));
  } else {
    f = eq.weight().f();
  }
  for (const Point& z : sample.points) {
    const double residual = separability_residual(f, eq.weight().coords(), z, step);
    const double tol = 1e-6 * (1.0 + std::abs(std::log(f(z))));
    if (residual > tol)
      throw NotSeparableError(
          "log f mixed partial " + std::to_string(residual) + " at (" +
          std::to_string(z.x) + ", " + std::to_string(z.y) +
          ") exceeds " + std::to_string(tol));
  }
  return f;
}

void validate_equation(const EquationDescriptor& eq, const Grid& sample,
                       double step) {
  const RealFieldHandle f = eq.weight().f();
  switch (eq.kind()) {
    case EquationDescriptor::Kind::schrodinger: {
      const RealFieldHandle nu = eq.nu();
      for (const Point& z : sample.points) {
        const double r = std::abs(laplacian(f, z, step) - nu(z) * f(z));
        if (r > kParticularSolutionTol)
          throw Error("particular solution residual " + std::to_string(r) +
                      " at (" + std::to_string(z.x) + ", " +
                      std::to_string(z.y) + ") exceeds " +
                      std::to_string(kParticularSolutionTol));
      }
      break;
    }
    case EquationDescriptor::Kind::conductivity:
      for (const Point& z : sample.points) f(z);  // positivity
      break;
    case EquationDescriptor::Kind::div_p_grad_plus_q: {
      const RealFieldHandle p = eq.p(), q = eq.q(), u0 = eq.u0();
      const ResidualReport rep = equation_residual(eq, u0, sample, step);
      if (rep.max_abs > kParticularSolutionTol)
        throw Error("particular solution u0 residual " +
                    std::to_string(rep.max_abs) + " exceeds " +
                    std::to_string(kParticularSolutionTol));
      for (const Point& z : sample.points) {
        if (!(p(z) > 0.0)) throw NonpositiveWeightError("p nonpositive");
        if (!(u0(z) > 0.0)) throw NonpositiveWeightError("u0 nonpositive");
        const double implied = std::sqrt(p(z)) * u0(z);
        const double fv = f(z);
        if (std::abs(implied - fv) > 1e-8 * (1.0 + std::abs(fv)))
          throw Error("weight U(u)V(v) disagrees with p^{1/2} u0 at (" +
                      std::to_string(z.x) + ", " + std::to_string(z.y) + ")");
      }
      break;
    }
  }
}

CompleteSystem complete_system(const EquationDescriptor& eq,
                               const FormalPowerBasis& basis, int N,
                               const Grid& probe) {
  if (N > basis.max_order())
    throw Error("system order exceeds the basis max_order");
  const RealFieldHandle f = eq.weight().f();
  const RealFieldHandle p = eq.p();

  RealFieldHandle multiplier;
  switch (eq.kind()) {
    case EquationDescriptor::Kind::schrodinger:
      multiplier = RealFieldHandle::constant(1.0);
      break;
    case EquationDescriptor::Kind::conductivity:
      multiplier = RealFieldHandle([f](Point z) { return 1.0 / f(z); },
                                   f.domain());
      break;
    case EquationDescriptor::Kind::div_p_grad_plus_q:
      multiplier = RealFieldHandle(
          [p](Point z) { return 1.0 / std::sqrt(p(z)); }, p.domain());
      break;
  }

  CompleteSystem sys;
  for (int n = 0; n <= N; ++n) {
    for (int variant = 0; variant < 2; ++variant) {
      const bool coeff_i = variant == 1;
      const Complex a = coeff_i ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
      const FieldHandle power = basis.power_field(n, a);
      RealFieldHandle member(
          [multiplier, power](Point z) {
            return multiplier(z) * power(z).real();
          },
          both(multiplier.domain(), power.domain()));
      double largest = 0.0;
      for (const Point& z : probe.points)
        largest = std::max(largest, std::abs(member(z)));
      if (!probe.points.empty() && largest < kDuplicateTol) {
        sys.dropped.emplace_back(n, coeff_i);
        continue;
      }
      sys.members.push_back({std::move(member), n, coeff_i});
    }
  }
  return sys;
}

CompleteSystem closed_form_system(ClosedFormKind kind, double c, int N) {
  if (c == 0.0) throw Error("closed-form systems need c != 0");
  CompleteSystem sys;
  auto add = [&sys](RealFieldHandle::Eval fn, int order, bool coeff_i,
                    FieldHandle::DomainPred domain = {}) {
    sys.members.push_back(
        {RealFieldHandle(std::move(fn), std::move(domain)), order, coeff_i});
  };
  switch (kind) {
    case ClosedFormKind::yukawa_exp: {
      if (N > 2) throw Error("yukawa_exp closed forms stop at order 2");
      add([c](Point z) { return std::exp(c * z.y); }, 0, false);
      if (N >= 1) {
        add([c](Point z) { return z.x * std::exp(c * z.y); }, 1, false);
        add([c](Point z) { return -std::sinh(c * z.y) / c; }, 1, true);
      }
      if (N >= 2) {
        add(
            [c](Point z) {
              return (z.x * z.x - z.y / c) * std::exp(c * z.y) +
                     std::sinh(c * z.y) / (c * c);
            },
            2, false);
        add([c](Point z) { return -2.0 * z.x * std::sinh(c * z.y) / c; }, 2,
            true);
      }
      break;
    }
    case ClosedFormKind::yukawa_cosh: {
      if (N > 3) throw Error("yukawa_cosh closed forms stop at order 3");
      add([c](Point z) { return std::cosh(c * z.y); }, 0, false);
      if (N >= 1)
        add([c](Point z) { return z.x * std::cosh(c * z.y); }, 1, false);
      if (N >= 2)
        add(
            [c](Point z) {
              return z.x * z.x * std::cosh(c * z.y) -
                     (z.y / c) * std::sinh(c * z.y);
            },
            2, false);
      if (N >= 3)
        add(
            [c](Point z) {
              return z.x * z.x * z.x * std::cosh(c * z.y) -
                     (3.0 * z.x * z.y / c) * std::sinh(c * z.y);
            },
            3, false);
      break;
    }
    case ClosedFormKind::helmholtz_cos: {
      if (N > 3) throw Error("helmholtz_cos closed forms stop at order 3");
      const double half_pi = 0.5 * M_PI;
      auto strip = [c, half_pi](Point z) {
        return std::abs(c * z.y) < half_pi;
      };
      add([c](Point z) { return std::cos(c * z.y); }, 0, false, strip);
      if (N >= 1)
        add([c](Point z) { return z.x * std::cos(c * z.y); }, 1, false, strip);
      if (N >= 2)
        add(
            [c](Point z) {
              return z.x * z.x * std::cos(c * z.y) -
                     (z.y / c) * std::sin(c * z.y);
            },
            2, false, strip);
      if (N >= 3)
        add(
            [c](Point z) {
              return z.x * z.x * z.x * std::cos(c * z.y) -
                     (3.0 * z.x * z.y / c) * std::sin(c * z.y);
            },
            3, false, strip);
      break;
    }
  }
  return sys;
}

ResidualReport equation_residual(const EquationDescriptor& eq,
                                 const RealFieldHandle& u, const Grid& sample,
                                 double step) {
  ResidualReport report;
  double sum = 0.0;
  for (const Point& z : sample.points) {
    double r = 0.0;
    switch (eq.kind()) {
      case EquationDescriptor::Kind::schrodinger:
        r = laplacian(u, z, step) - eq.nu()(z) * u(z);
        break;
      case EquationDescriptor::Kind::conductivity: {
        const RealFieldHandle& f = eq.weight().f();
        const double fv = f(z);
        const Gradient gf = gradient(f, z, step);
        const Gradient gu = gradient(u, z, step);
        r = fv * fv * laplacian(u, z, step) +
            2.0 * fv * (gf.dx * gu.dx + gf.dy * gu.dy);
        break;
      }
      case EquationDescriptor::Kind::div_p_grad_plus_q: {
        const Gradient gp = gradient(eq.p(), z, step);
        const Gradient gu = gradient(u, z, step);
        r = eq.p()(z) * laplacian(u, z, step) + gp.dx * gu.dx + gp.dy * gu.dy +
            eq.q()(z) * u(z);
        break;
      }
    }
    const double a = std::abs(r);
    report.max_abs = std::max(report.max_abs, a);
    sum += a;
    ++report.count;
  }
  report.mean_abs = report.count ? sum / report.count : 0.0;
  return report;
}

std::pair<RealFieldHandle, RealFieldHandle> associated_potentials(
    const RealFieldHandle& f, double step) {
  RealFieldHandle r1(
      [f, step](Point z) { return laplacian(f, z, step) / f(z); }, f.domain());
  RealFieldHandle r2(
      [f, r1, step](Point z) {
        const double fv = f(z);
        const Gradient g = gradient(f, z, step);
        return 2.0 * (g.dx * g.dx + g.dy * g.dy) / (fv * fv) - r1(z);
      },
      f.domain());
  return {std::move(r1), std::move(r2)};
}

RealFieldHandle q1_potential(const RealFieldHandle& p, const RealFieldHandle& q,
                             const RealFieldHandle& u0, double step) {
  return RealFieldHandle(
      [p, q, u0, step](Point z) {
        const double pv = p(z), u0v = u0(z);
        const Gradient gp = gradient(p, z, step);
        const Gradient gu = gradient(u0, z, step);
        const double cross =
            (gp.dx * gu.dx + gp.dy * gu.dy) / (pv * u0v);
        const double logu0_sq =
            (gu.dx * gu.dx + gu.dy * gu.dy) / (u0v * u0v);
        return -(q(z) / pv + 2.0 * cross + 2.0 * logu0_sq) / pv;
      },
      both(p.domain(), both(q.domain(), u0.domain())));
}

}  // namespace vekua
