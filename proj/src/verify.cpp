#include "vekua/verify.hpp"

#include <algorithm>
#include <cmath>

namespace vekua::cli {

namespace {

Grid subsample(const Grid& grid, std::size_t want) {
  Grid out;
  const std::size_t stride = std::max<std::size_t>(1, grid.size() / want);
  for (std::size_t i = 0; i < grid.size(); i += stride)
    out.points.push_back(grid.points[i]);
  return out;
}

double domain_reach(const RunConfig& cfg, const Grid& grid) {
  double reach = 0.0;
  for (const Point& z : grid.points)
    reach = std::max(reach, distance(z, cfg.center));
  return reach;
}

}  // namespace

std::vector<VerifyCheck> run_verification(const RunConfig& cfg) {
  std::vector<VerifyCheck> checks;
  auto add = [&checks](const std::string& name, double measured,
                       double threshold, bool passed, std::string note = "") {
    checks.push_back({name, measured, threshold, passed, std::move(note)});
  };

  const Grid grid = cfg.domain.interior_grid(std::min(cfg.grid_n, 21));
  const Grid sample = subsample(grid, 40);
  const RealFieldHandle f = cfg.weight.f();
  const double reach = domain_reach(cfg, grid);

  // coordinate map: analyticity and the supplied derivative
  {
    double worst_cr = 0.0, worst_dz = 0.0;
    for (const Point& z : sample.points) {
      worst_cr = std::max(worst_cr, std::abs(wirtinger_dzbar(cfg.coords.phi, z)));
      worst_dz = std::max(
          worst_dz, std::abs(wirtinger_dz(cfg.coords.phi, z) - cfg.coords.phi_z(z)));
    }
    add("coords_analyticity", worst_cr, 1e-8, worst_cr < 1e-8);
    add("coords_phi_z", worst_dz, 1e-6, worst_dz < 1e-6);
  }

  // weight positivity, smoothness, separability
  {
    bool ok = true;
    std::string note;
    try {
      cfg.weight.validate(sample);
    } catch (const Error& e) {
      ok = false;
      note = e.what();
    }
    add("weight_positive_smooth", ok ? 1.0 : 0.0, 1.0, ok, note);

    double worst = 0.0;
    for (const Point& z : sample.points) {
      const double r = separability_residual(f, cfg.coords, z);
      const double tol = 1e-6 * (1.0 + std::abs(std::log(f(z))));
      worst = std::max(worst, r / tol);
    }
    add("weight_separable", worst, 1.0, worst < 1.0);
  }

  // the weight must actually solve its equation
  {
    double worst = 0.0;
    switch (cfg.eq.kind()) {
      case EquationDescriptor::Kind::schrodinger:
        for (const Point& z : sample.points)
          worst = std::max(worst, std::abs(laplacian(f, z, kResidualStep) -
                                           cfg.eq.nu()(z) * f(z)));
        break;
      case EquationDescriptor::Kind::conductivity:
        worst = 0.0;  // f is a coefficient here, not a solution
        break;
      case EquationDescriptor::Kind::div_p_grad_plus_q:
        worst = equation_residual(cfg.eq, cfg.eq.u0(), sample).max_abs;
        break;
    }
    add("particular_solution", worst, 1e-5, worst < 1e-5);
  }

  GeneratingSequence seq(cfg.weight);

  // generating pairs: positivity, successor identities, a == 0, closed form
  {
    double min_pairing = 1e300;
    for (int m = -2; m <= 3; ++m) {
      const GeneratingPair& p = seq.pair(m);
      for (const Point& z : sample.points)
        min_pairing =
            std::min(min_pairing, std::imag(std::conj(p.F(z)) * p.G(z)));
    }
    add("pair_positivity_min", min_pairing, 0.0, min_pairing > 0.0);

    double worst_succ = 0.0;
    for (int m = -2; m <= 2; ++m) {
      const SuccessorReport rep =
          successor_check(seq.pair(m), seq.pair(m + 1), sample, 1e-5);
      worst_succ = std::max({worst_succ, rep.max_a_diff, rep.max_b_diff});
    }
    add("successor_identities", worst_succ, 1e-5, worst_succ < 1e-5);

    double worst_a = 0.0;
    for (int m = -2; m <= 3; ++m) {
      const CharacteristicCoefficients cc =
          characteristic_coefficients(seq.pair(m));
      for (const Point& z : sample.points)
        worst_a = std::max(worst_a, std::abs(cc.a(z)));
    }
    add("a_vanishing", worst_a, 1e-7, worst_a < 1e-7);

    const CharacteristicCoefficients cc =
        characteristic_coefficients(seq.pair(0));
    double worst_b = 0.0;
    for (const Point& z : sample.points)
      worst_b = std::max(worst_b,
                         std::abs(cc.B(z) - wirtinger_dz(f, z) / f(z)));
    add("main_pair_B_closed_form", worst_b, 1e-6, worst_b < 1e-6);
  }

  // formal powers: antiderivative identity, closed loops, Vekua residuals,
  // asymptotics
  {
    FormalPowerBasis basis(seq, cfg.center, std::min(cfg.order, 2),
                           cfg.quad_tol);
    const GeneratingPair& p = seq.pair(0);
    const FieldHandle Z1 = basis.power_field(1, Complex(1, 0));
    const FieldHandle dZ1 = fg_derivative(p, Z1);

    double worst_anti = 0.0;
    const Grid targets = subsample(sample, 3);
    for (const Point& z : targets.points) {
      if (distance(z, cfg.center) < 0.1 * reach) continue;
      const Complex got =
          fg_integral(p, dZ1, Path::segment(cfg.center, z), 1e-8);
      worst_anti = std::max(worst_anti, std::abs(got - Z1(z)));
    }
    add("antiderivative_identity", worst_anti, 1e-5, worst_anti < 1e-5);

    const double rho = 0.45 * reach;
    std::vector<Point> loop;
    for (int k = 0; k <= 4; ++k) {
      const double t = 2.0 * M_PI * k / 4.0 + 0.4;
      loop.push_back({cfg.center.x + rho * std::cos(t),
                      cfg.center.y + rho * std::sin(t)});
    }
    const Complex loop_val = fg_integral(p, dZ1, Path(loop), 1e-8);
    add("closed_loop_integral", std::abs(loop_val), 1e-7,
        std::abs(loop_val) < 1e-7);

    double worst_vekua = 0.0;
    const Grid vk = subsample(sample, 10);
    for (int n = 0; n <= std::min(cfg.order, 2); ++n) {
      const ResidualReport rep =
          vekua_residual(f, basis.power_field(n, Complex(1, 0)), vk);
      worst_vekua = std::max(worst_vekua, rep.max_abs);
    }
    add("formal_power_vekua_residual", worst_vekua, 1e-4, worst_vekua < 1e-4);

    FormalPowerBasis abasis(seq, cfg.center, std::min(cfg.order, 3),
                            cfg.quad_tol);
    double worst_ratio = 0.0;
    bool shape_ok = true;
    for (int n = 1; n <= std::min(cfg.order, 3); ++n) {
      const AsymptoticReport rep = asymptotic_check(
          abasis, n, Complex(1, 0), {1e-1, 1e-2, 1e-3}, {0.5, 2.2});
      shape_ok = shape_ok && rep.passed;
      for (const auto& e : rep.entries)
        if (e.radius == 1e-3) worst_ratio = std::max(worst_ratio, e.ratio);
    }
    add("asymptotic_ratio_at_1e-3", worst_ratio, 5e-3,
        shape_ok && worst_ratio < 5e-3);
  }

  // complete-system members solve the equation
  {
    const int N = std::min(cfg.order, 3);
    FormalPowerBasis basis(seq, cfg.center, N, cfg.quad_tol);
    const CompleteSystem sys = complete_system(cfg.eq, basis, N, sample);
    double worst = 0.0;
    const Grid rg = subsample(sample, 12);
    for (const auto& m : sys.members)
      worst = std::max(worst, equation_residual(cfg.eq, m.fn, rg).max_abs);
    add("member_equation_residual", worst, 1e-3, worst < 1e-3);

    // S P g = g + c f for a member-derived Schrodinger solution
    const RealFieldHandle g = real_part(basis.power_field(1, Complex(1, 0)));
    const FieldHandle Pg = op_P(f, g);
    const RealFieldHandle SPg = op_S(f, Pg, cfg.center, 1e-9);
    std::vector<double> ratios;
    double mean = 0.0;
    for (const Point& z : rg.points) {
      const double r = (SPg(z) - g(z)) / f(z);
      ratios.push_back(r);
      mean += r;
    }
    mean /= ratios.size();
    double var = 0.0;
    for (double r : ratios) var += (r - mean) * (r - mean);
    const double stddev = std::sqrt(var / ratios.size());
    add("SPg_constancy_std", stddev, 1e-4, stddev < 1e-4);
  }

  // classical reduction when f == 1
  {
    bool is_unit = true;
    for (const Point& z : sample.points)
      if (std::abs(f(z) - 1.0) > 1e-14) {
        is_unit = false;
        break;
      }
    if (is_unit) {
      FormalPowerBasis basis(seq, cfg.center, 8, 1e-11);
      double worst = 0.0;
      for (const Point& z : subsample(sample, 8).points) {
        const Complex dz = z.to_complex() - cfg.center.to_complex();
        Complex zn = 1.0;
        const auto v = basis.values(z);
        for (int n = 0; n <= 8; ++n) {
          worst = std::max(worst, std::abs(v.coeff_one[n] - zn));
          zn *= dz;
        }
      }
      add("classical_monomials", worst, 1e-10, worst < 1e-10);

      const RealFieldHandle h(
          [](Point z) { return z.x * z.x - z.y * z.y; });
      const RealFieldHandle conj_h =
          conjugate_metaharmonic(f, h, cfg.center, 1e-11);
      double worst_conj = 0.0;
      for (const Point& z : subsample(sample, 10).points)
        worst_conj = std::max(
            worst_conj, std::abs(conj_h(z) - (2.0 * z.x * z.y -
                                              2.0 * cfg.center.x * cfg.center.y)));
      add("classical_conjugate", worst_conj, 1e-8, worst_conj < 1e-8);
    }
  }

  return checks;
}

}  // namespace vekua::cli
