#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "vekua/genpair.hpp"

using namespace vekua;
using vekua::testing::catalog_weights;
using vekua::testing::random_grid_in_disk;
using vekua::testing::random_point_in_disk;

namespace {

SeparableWeight exp_y_weight(double c = 1.0) {
  return SeparableWeight(Expr::parse("1"), Expr::parse("exp(c*v)"), cartesian(),
                         {{"c", c}});
}

GeneratingPair classical_pair() {
  return {FieldHandle::constant(Complex(1, 0)),
          FieldHandle::constant(Complex(0, 1))};
}

}  // namespace

TEST_CASE("main pair of a separable weight") {
  const GeneratingPair p = main_pair(exp_y_weight());
  CHECK(p.F({0, 1}).real() == doctest::Approx(M_E).epsilon(1e-14));
  CHECK(p.G({0, 1}).imag() == doctest::Approx(1.0 / M_E).epsilon(1e-14));

  const GeneratingPair unit = main_pair(SeparableWeight::unit());
  CHECK(unit.F({2, -3}) == Complex(1, 0));
  CHECK(unit.G({2, -3}) == Complex(0, 1));
  // Im(conj(F) G) == 1 for any positive f
  for (int i = 0; i < 10; ++i) {
    const Point z = random_point_in_disk({0, 0}, 2.0);
    CHECK(std::imag(std::conj(unit.F(z)) * unit.G(z)) == doctest::Approx(1.0));
  }
}

TEST_CASE("characteristic coefficients of the classical pair vanish") {
  const CharacteristicCoefficients cc =
      characteristic_coefficients(classical_pair());
  const Point z{0.4, -0.2};
  CHECK(std::abs(cc.a(z)) < 1e-12);
  CHECK(std::abs(cc.b(z)) < 1e-12);
  CHECK(std::abs(cc.A(z)) < 1e-12);
  CHECK(std::abs(cc.B(z)) < 1e-12);
}

TEST_CASE("main pair coefficients match the closed forms") {
  // for f = e^y: f_z/f = -i/2 and f_zbar/f = i/2, while a = A = 0
  const GeneratingPair p = main_pair(exp_y_weight());
  const CharacteristicCoefficients cc = characteristic_coefficients(p);
  for (const Point& z : random_grid_in_disk({0, 0}, 0.9, 200).points) {
    CHECK(std::abs(cc.a(z)) < 1e-7);
    CHECK(std::abs(cc.A(z)) < 1e-7);
    CHECK(std::abs(cc.B(z) - Complex(0.0, -0.5)) < 1e-6);
    CHECK(std::abs(cc.b(z) - Complex(0.0, 0.5)) < 1e-6);
  }
}

TEST_CASE("coefficients match the separable closed form B = u_z (U'/U - i V'/V)") {
  for (const auto& wc : catalog_weights()) {
    const GeneratingPair p = main_pair(wc.weight);
    const CharacteristicCoefficients cc = characteristic_coefficients(p);
    const CoordinateSystem& cs = wc.weight.coords();
    for (int i = 0; i < 25; ++i) {
      const Point z = random_point_in_disk(wc.center, wc.radius);
      const Complex w = cs.phi(z);
      const Complex uz = 0.5 * cs.phi_z(z);  // u_z = phi_z / 2 for analytic phi
      const Complex closed =
          uz * Complex(wc.weight.logU_prime(w.real()),
                       -wc.weight.logV_prime(w.imag()));
      CHECK_MESSAGE(std::abs(cc.B(z) - closed) < 1e-5, wc.name);
    }
  }
}

TEST_CASE("adjoint pair") {
  // hand substitution for (1, i): d = -2i, F* = -i, G* = 1
  const GeneratingPair adj = adjoint(classical_pair());
  const Point z{0.1, 0.9};
  CHECK(std::abs(adj.F(z) - Complex(0, -1)) < 1e-14);
  CHECK(std::abs(adj.G(z) - Complex(1, 0)) < 1e-14);

  // for the main pair: F* = -i f, G* = 1/f
  const SeparableWeight w = exp_y_weight();
  const GeneratingPair main = main_pair(w);
  const GeneratingPair madj = adjoint(main);
  for (int i = 0; i < 20; ++i) {
    const Point p = random_point_in_disk({0, 0}, 0.9);
    const double f = w.f()(p);
    CHECK(std::abs(madj.F(p) - Complex(0, -f)) < 1e-12);
    CHECK(std::abs(madj.G(p) - Complex(1.0 / f, 0)) < 1e-12);
    const GeneratingPair twice = adjoint(madj);
    CHECK(std::abs(twice.F(p) - main.F(p)) < 1e-12);
    CHECK(std::abs(twice.G(p) - main.G(p)) < 1e-12);
  }
}

TEST_CASE("degenerate pairs are rejected") {
  const GeneratingPair bad = {FieldHandle::constant(Complex(1, 0)),
                              FieldHandle::constant(Complex(1, 0))};
  CHECK_THROWS_AS(adjoint(bad).F({0, 0}), DegeneratePairError);
  CHECK_THROWS_AS(characteristic_coefficients(bad).b({0, 0}),
                  DegeneratePairError);
}

TEST_CASE("separable weight evaluation and log derivatives") {
  const SeparableWeight w(Expr::parse("exp(2*u)"), Expr::parse("cosh(v)"),
                          cartesian());
  CHECK(w.f()({0.5, 0.0}) == doctest::Approx(std::exp(1.0)));
  CHECK(w.logU_prime(0.3) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(w.logV_prime(0.4) == doctest::Approx(std::tanh(0.4)).epsilon(1e-6));

  const SeparableWeight xw(Expr::parse("u"), Expr::parse("1"), cartesian());
  CHECK_THROWS_AS(xw.f()({-1.0, 0.0}), NonpositiveWeightError);
  CHECK_THROWS_AS(xw.validate(random_grid_in_disk({-2, 0}, 0.1, 5)),
                  NonpositiveWeightError);
  CHECK_NOTHROW(xw.validate(random_grid_in_disk({2, 0}, 0.5, 10)));
}

TEST_CASE("unbound weight parameters are rejected early") {
  CHECK_THROWS_AS(
      SeparableWeight(Expr::parse("1"), Expr::parse("exp(c*v)"), cartesian()),
      ConfigError);
}

TEST_CASE("sequence of an x-independent weight has period one") {
  const GeneratingSequence seq(exp_y_weight());
  const GeneratingPair& base = seq.pair(0);
  for (int m : {-2, -1, 1, 2, 3}) {
    const GeneratingPair& pm = seq.pair(m);
    for (int i = 0; i < 10; ++i) {
      const Point z = random_point_in_disk({0, 0}, 0.9);
      CHECK(std::abs(pm.F(z) - base.F(z)) < 1e-12);
      CHECK(std::abs(pm.G(z) - base.G(z)) < 1e-12);
    }
  }
}

TEST_CASE("sequence of an x-dependent weight has period two") {
  // f = x over a disk in the right half-plane
  const SeparableWeight w(Expr::parse("u"), Expr::parse("1"), cartesian());
  const GeneratingSequence seq(w);
  for (int i = 0; i < 10; ++i) {
    const Point z = random_point_in_disk({2, 0}, 0.6);
    const double x = z.x;
    // (F1, G1) = (F/U^2, U^2 G) = (1/x, i x); (F2, G2) = (F, G)
    CHECK(std::abs(seq.pair(1).F(z) - Complex(1.0 / x, 0)) < 1e-12);
    CHECK(std::abs(seq.pair(1).G(z) - Complex(0, x)) < 1e-12);
    CHECK(std::abs(seq.pair(2).F(z) - seq.pair(0).F(z)) < 1e-12);
    CHECK(std::abs(seq.pair(2).G(z) - seq.pair(0).G(z)) < 1e-12);
  }
}

TEST_CASE("pair positivity across the catalog") {
  for (const auto& wc : catalog_weights()) {
    const GeneratingSequence seq(wc.weight);
    for (int m = -2; m <= 3; ++m) {
      const GeneratingPair& p = seq.pair(m);
      for (int i = 0; i < 80; ++i) {
        const Point z = random_point_in_disk(wc.center, wc.radius);
        CHECK_MESSAGE(std::imag(std::conj(p.F(z)) * p.G(z)) > 0.0, wc.name);
      }
    }
  }
}

TEST_CASE("successor identities hold along the sequence") {
  for (const auto& wc : catalog_weights()) {
    const GeneratingSequence seq(wc.weight);
    const Grid sample = random_grid_in_disk(wc.center, 0.8 * wc.radius, 30);
    for (int m = -2; m <= 2; ++m) {
      const SuccessorReport report =
          successor_check(seq.pair(m), seq.pair(m + 1), sample, 1e-5);
      CHECK_MESSAGE(report.passed,
                    wc.name << " m=" << m << " a=" << report.max_a_diff
                            << " b=" << report.max_b_diff);
    }
  }
}

TEST_CASE("a-coefficient vanishes along the sequence") {
  for (const auto& wc : catalog_weights()) {
    const GeneratingSequence seq(wc.weight);
    for (int m = -2; m <= 3; ++m) {
      const CharacteristicCoefficients cc =
          characteristic_coefficients(seq.pair(m));
      for (int i = 0; i < 15; ++i) {
        const Point z = random_point_in_disk(wc.center, 0.8 * wc.radius);
        CHECK_MESSAGE(std::abs(cc.a(z)) < 1e-7, wc.name << " m=" << m);
      }
    }
  }
}

TEST_CASE("successor check accepts and rejects as expected") {
  const GeneratingPair unit = classical_pair();
  const Grid sample = random_grid_in_disk({0, 0}, 1.0, 20);
  CHECK(successor_check(unit, unit, sample, 1e-5).passed);

  // b of the e^y main pair is i/2, not -B_(1,i) = 0
  const SuccessorReport bad =
      successor_check(unit, main_pair(exp_y_weight()), sample, 1e-5);
  CHECK_FALSE(bad.passed);
  CHECK(bad.max_b_diff == doctest::Approx(0.5).epsilon(1e-4));
}
