#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "vekua/formalpowers.hpp"

using namespace vekua;
using vekua::testing::catalog_weights;
using vekua::testing::random_grid_in_disk;
using vekua::testing::random_point_in_disk;
using vekua::testing::uniform;

namespace {

SeparableWeight exp_y_weight() {
  return SeparableWeight(Expr::parse("1"), Expr::parse("exp(c*v)"), cartesian(),
                         {{"c", 1.0}});
}

// Yukawa (c = 1) formal powers with center 0 in closed form.
Complex Z0_one(Point z) { return {std::exp(z.y), 0.0}; }
Complex Z0_i(Point z) { return {0.0, std::exp(-z.y)}; }
Complex Z1_one(Point z) { return {z.x * std::exp(z.y), std::sinh(z.y)}; }
Complex Z1_i(Point z) { return {-std::sinh(z.y), z.x * std::exp(-z.y)}; }
Complex Z2_one(Point z) {
  return {(z.x * z.x - z.y) * std::exp(z.y) + std::sinh(z.y),
          2.0 * z.x * std::sinh(z.y)};
}
Complex Z2_i(Point z) {
  return {-2.0 * z.x * std::sinh(z.y),
          (z.x * z.x + z.y) * std::exp(-z.y) - std::sinh(z.y)};
}

Complex cpow(Complex z, int n) {
  Complex r = 1.0;
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

}  // namespace

TEST_CASE("order-zero powers pin the coefficient at the center") {
  const GeneratingSequence seq(exp_y_weight());
  const FieldHandle h1 = order_zero(seq, 0, Complex(1, 0), {0, 0});
  const FieldHandle hi = order_zero(seq, 0, Complex(0, 1), {0, 0});
  for (int k = 0; k < 15; ++k) {
    const Point z = random_point_in_disk({0, 0}, 0.9);
    CHECK(std::abs(h1(z) - Z0_one(z)) < 1e-13);
    CHECK(std::abs(hi(z) - Z0_i(z)) < 1e-13);
  }

  const GeneratingSequence unit(SeparableWeight::unit());
  const FieldHandle hc = order_zero(unit, 2, Complex(2, 3), {0.4, -0.1});
  CHECK(std::abs(hc({-1, 1}) - Complex(2, 3)) < 1e-14);
}

TEST_CASE("formal powers match the Yukawa closed forms") {
  const GeneratingSequence seq(exp_y_weight());
  const FormalPowerBasis basis(seq, {0, 0}, 2);

  const Point probe{0.5, 0.5};
  const Complex expected1 =
      Complex(0.5 * std::exp(0.5), std::sinh(0.5));
  CHECK(std::abs(basis.power(1, Complex(1, 0), probe) - expected1) < 1e-6);

  const Point probe2{0.3, 0.2};
  CHECK(std::abs(basis.power(2, Complex(1, 0), probe2) - Z2_one(probe2)) <
        1e-5);

  for (int k = 0; k < 40; ++k) {
    const Point z = random_point_in_disk({0, 0}, 0.9);
    const auto v = basis.values(z);
    CHECK(std::abs(v.coeff_one[0] - Z0_one(z)) < 1e-5);
    CHECK(std::abs(v.coeff_i[0] - Z0_i(z)) < 1e-5);
    CHECK(std::abs(v.coeff_one[1] - Z1_one(z)) < 1e-5);
    CHECK(std::abs(v.coeff_i[1] - Z1_i(z)) < 1e-5);
    CHECK(std::abs(v.coeff_one[2] - Z2_one(z)) < 1e-5);
    CHECK(std::abs(v.coeff_i[2] - Z2_i(z)) < 1e-5);
  }
}

TEST_CASE("unit weight reproduces the classical powers") {
  const GeneratingSequence seq(SeparableWeight::unit());
  const FormalPowerBasis basis(seq, {0, 0}, 8, 1e-11);
  for (int k = 0; k < 12; ++k) {
    const Point z = random_point_in_disk({0, 0}, 0.9);
    const auto v = basis.values(z);
    for (int n = 0; n <= 8; ++n) {
      const Complex zn = cpow(z.to_complex(), n);
      CHECK(std::abs(v.coeff_one[n] - zn) < 1e-10);
      CHECK(std::abs(v.coeff_i[n] - Complex(0, 1) * zn) < 1e-10);
    }
  }
  // shifted center: powers of (z - z0)
  const FormalPowerBasis shifted(seq, {0.3, -0.2}, 5, 1e-11);
  const Point z{0.8, 0.4};
  const auto vs = shifted.values(z);
  for (int n = 0; n <= 5; ++n) {
    const Complex zn = cpow(Complex(0.5, 0.6), n);
    CHECK(std::abs(vs.coeff_one[n] - zn) < 1e-10);
  }
}

TEST_CASE("linearity in the coefficient is exact") {
  const GeneratingSequence seq(exp_y_weight());
  const FormalPowerBasis basis(seq, {0, 0}, 3);
  for (int k = 0; k < 10; ++k) {
    const Point z = random_point_in_disk({0, 0}, 0.9);
    const Complex a{uniform(-2, 2), uniform(-2, 2)};
    const auto v = basis.values(z);
    for (int n = 0; n <= 3; ++n) {
      const Complex assembled =
          a.real() * v.coeff_one[n] + a.imag() * v.coeff_i[n];
      CHECK(std::abs(basis.power(n, a, z) - assembled) < 1e-12);
    }
  }
}

TEST_CASE("differential relation connects adjacent levels") {
  // d_(F_m,G_m) Z_m^(n) = n Z_{m+1}^(n-1), checked on a weight with
  // genuinely distinct odd/even pairs
  const SeparableWeight w(Expr::parse("u"), Expr::parse("exp(v)"), cartesian());
  const GeneratingSequence seq(w);
  const FormalPowerBasis basis(seq, {2, 0}, 3);
  for (int n : {1, 2}) {
    const FieldHandle Zn(
        [basis, n](Point z) { return basis.power(n, Complex(1, 0), z); });
    const FieldHandle dZn = fg_derivative(seq.pair(0), Zn);
    for (int k = 0; k < 8; ++k) {
      const Point z = random_point_in_disk({2, 0}, 0.5);
      const Complex expected =
          static_cast<double>(n) * basis.level_power(1, n - 1, Complex(1, 0), z);
      CHECK(std::abs(dZn(z) - expected) < 1e-4);
    }
  }
}

TEST_CASE("path independence across builders") {
  const SeparableWeight w(Expr::parse("u"), Expr::parse("exp(v)"), cartesian());
  const GeneratingSequence seq(w);
  const double tol = 1e-9;
  const FormalPowerBasis straight(seq, {2, 0}, 3, tol);
  const FormalPowerBasis bent(seq, {2, 0}, 3, tol, axis_aligned_path());
  for (int k = 0; k < 10; ++k) {
    const Point z = random_point_in_disk({2, 0}, 0.6);
    const auto vs = straight.values(z);
    const auto vb = bent.values(z);
    for (int n = 0; n <= 3; ++n) {
      CHECK(std::abs(vs.coeff_one[n] - vb.coeff_one[n]) < 5 * tol);
      CHECK(std::abs(vs.coeff_i[n] - vb.coeff_i[n]) < 5 * tol);
    }
  }
}

TEST_CASE("formal powers solve the main Vekua equation") {
  for (const auto& wc : catalog_weights()) {
    const GeneratingSequence seq(wc.weight);
    const FormalPowerBasis basis(seq, wc.center, 2);
    const Grid sample = random_grid_in_disk(wc.center, 0.7 * wc.radius, 12);
    for (int n = 0; n <= 2; ++n) {
      const auto rep =
          vekua_residual(wc.weight.f(), basis.power_field(n, Complex(1, 0)),
                         sample);
      CHECK_MESSAGE(rep.max_abs < 1e-4, wc.name << " n=" << n);
    }
  }
}

TEST_CASE("grid evaluation consistency and the radial fan") {
  const GeneratingSequence seq(exp_y_weight());
  const FormalPowerBasis basis(seq, {0, 0}, 2);

  Grid single;
  single.points.push_back({0.4, 0.3});
  const GridEvaluation one = basis_on_grid(basis, single);
  REQUIRE(one.values[0].has_value());
  CHECK(std::abs(one.values[0]->coeff_one[1] -
                 basis.power(1, Complex(1, 0), {0.4, 0.3})) < 2e-9);

  // collinear targets share a ray; values must match independent sweeps
  Grid ray;
  for (double r : {0.2, 0.4, 0.6, 0.8})
    ray.points.push_back({r * 0.6, r * 0.8});
  const GridEvaluation fan = basis_on_grid(basis, ray);
  for (std::size_t i = 0; i < ray.points.size(); ++i) {
    REQUIRE(fan.values[i].has_value());
    for (int n = 0; n <= 2; ++n)
      CHECK(std::abs(fan.values[i]->coeff_one[n] -
                     basis.values(ray.points[i]).coeff_one[n]) < 5e-9);
  }

  // monomial table for the unit weight
  const GeneratingSequence unit(SeparableWeight::unit());
  const FormalPowerBasis ubasis(unit, {0, 0}, 4, 1e-11);
  const Grid g10 = Grid::rectangular({-0.5, -0.5}, {0.5, 0.5}, 10, 10);
  const GridEvaluation table = basis_on_grid(ubasis, g10);
  CHECK(table.failures.empty());
  for (std::size_t i = 0; i < g10.size(); ++i) {
    const Complex z = g10.points[i].to_complex();
    for (int n = 0; n <= 4; ++n)
      CHECK(std::abs(table.values[i]->coeff_one[n] - cpow(z, n)) < 1e-10);
  }

  // closed forms on a 5x5 grid
  const FormalPowerBasis ybasis(seq, {0, 0}, 2);
  const Grid g5 = Grid::rectangular({-0.6, -0.6}, {0.6, 0.6}, 5, 5);
  const GridEvaluation ytable = basis_on_grid(ybasis, g5);
  for (std::size_t i = 0; i < g5.size(); ++i) {
    CHECK(std::abs(ytable.values[i]->coeff_one[2] - Z2_one(g5.points[i])) <
          1e-5);
  }
}

TEST_CASE("per-point failures are collected, not fatal") {
  const SeparableWeight w(Expr::parse("u"), Expr::parse("1"), cartesian());
  const GeneratingSequence seq(w);
  const FormalPowerBasis basis(seq, {2, 0}, 1);
  Grid g;
  g.points.push_back({2.5, 0.0});
  g.points.push_back({-1.0, 0.0});  // f <= 0 on the way there
  const GridEvaluation eval = basis_on_grid(basis, g);
  CHECK(eval.values[0].has_value());
  CHECK_FALSE(eval.values[1].has_value());
  REQUIRE(eval.failures.size() == 1);
  CHECK(eval.failures[0].first == 1);
}

TEST_CASE("asymptotics near the center") {
  const GeneratingSequence unit(SeparableWeight::unit());
  const FormalPowerBasis ubasis(unit, {0, 0}, 3);
  const auto flat = asymptotic_check(ubasis, 2, Complex(1, 0),
                                     {1e-1, 1e-2, 1e-3}, {0.3, 2.1});
  CHECK(flat.passed);
  for (const auto& e : flat.entries) CHECK(e.ratio < 1e-8);

  // directions off the x-axis, where the order-1 power is exact and the
  // ratio degenerates to zero
  const GeneratingSequence seq(exp_y_weight());
  const FormalPowerBasis basis(seq, {0, 0}, 3);
  const auto rep = asymptotic_check(basis, 1, Complex(1, 0),
                                    {1e-1, 1e-2, 1e-3}, {0.5, M_PI / 3});
  CHECK(rep.passed);
  // ratios decrease with the radius (descending radii per direction)
  for (std::size_t i = 1; i < 3; ++i)
    CHECK(rep.entries[i].ratio < rep.entries[i - 1].ratio);

  const auto rep2 = asymptotic_check(basis, 2, Complex(1, 0), {1e-3}, {0.7});
  CHECK(rep2.entries.front().ratio < 5e-3);
}

TEST_CASE("higher derivatives and Taylor coefficients") {
  const GeneratingSequence seq(exp_y_weight());

  // derivatives of a generator vanish
  const auto dF = higher_derivative(seq, seq.pair(0).F, 1, {0.1, 0.2});
  CHECK(std::abs(dF.values[1]) < 1e-6);

  // classical cubic
  const GeneratingSequence unit(SeparableWeight::unit());
  const FieldHandle zcube([](Point z) { return cpow(z.to_complex(), 3); });
  const auto d3 = higher_derivative(unit, zcube, 3, {0, 0});
  CHECK(std::abs(d3.values[0]) < 1e-10);
  CHECK(std::abs(d3.values[1]) < 1e-8);
  CHECK(std::abs(d3.values[2]) < 1e-4);
  CHECK(std::abs(d3.values[3] - Complex(6, 0)) < 5e-3);

  // the order-2 power has W^[1](0) = 0 and W^[2](0) = 2
  const FieldHandle Z2([](Point z) { return Z2_one(z); });
  const auto dZ = higher_derivative(seq, Z2, 2, {0, 0});
  CHECK(std::abs(dZ.values[1]) < 5e-3);
  CHECK(std::abs(dZ.values[2] - Complex(2, 0)) < 5e-3);

  const auto coeffs = taylor_coefficients(seq, Z2, {0, 0}, 3);
  CHECK(std::abs(coeffs[0]) < 1e-10);
  CHECK(std::abs(coeffs[1]) < 5e-3);
  CHECK(std::abs(coeffs[2] - Complex(1, 0)) < 5e-3);

  // coefficient a is read off at order zero
  const FieldHandle Z0i([](Point z) { return Z0_i(z); });
  const auto c0 = taylor_coefficients(seq, Z0i, {0, 0}, 1);
  CHECK(std::abs(c0[0] - Complex(0, 1)) < 1e-12);

  // truncated exponential in the classical case: a_n = 1/n!
  const FieldHandle expz([](Point z) {
    const Complex zz = z.to_complex();
    return 1.0 + zz + zz * zz / 2.0 + zz * zz * zz / 6.0;
  });
  const auto ce = taylor_coefficients(unit, expz, {0, 0}, 4);
  CHECK(std::abs(ce[0] - 1.0) < 1e-10);
  CHECK(std::abs(ce[1] - 1.0) < 1e-7);
  CHECK(std::abs(ce[2] - 0.5) < 1e-3);
  CHECK(std::abs(ce[3] - 1.0 / 6.0) < 5e-3);

  CHECK_THROWS_AS(higher_derivative(seq, Z2, 4, {0, 0}), Error);
}

TEST_CASE("basis guards its preconditions") {
  const GeneratingSequence seq(exp_y_weight());
  const FormalPowerBasis basis(seq, {0, 0}, 2);
  CHECK_THROWS_AS(basis.power(3, Complex(1, 0), {0.1, 0.1}), Error);

  // center where the weight is nonpositive
  const SeparableWeight xw(Expr::parse("u"), Expr::parse("1"), cartesian());
  CHECK_THROWS_AS(FormalPowerBasis(GeneratingSequence(xw), {-1, 0}, 2),
                  NonpositiveWeightError);

  // path leaves the positivity region
  const FormalPowerBasis xbasis(GeneratingSequence(xw), {2, 0}, 2);
  CHECK_THROWS_AS(xbasis.power(1, Complex(1, 0), {-2.0, 0.0}), Error);
}

TEST_CASE("values at the center and reproducibility") {
  const GeneratingSequence seq(exp_y_weight());
  const FormalPowerBasis basis(seq, {0, 0}, 3);
  const auto v = basis.values({0, 0});
  CHECK(v.coeff_one[0] == Complex(1, 0));
  CHECK(v.coeff_i[0] == Complex(0, 1));
  for (int n = 1; n <= 3; ++n) {
    CHECK(std::abs(v.coeff_one[n]) == 0.0);
    CHECK(std::abs(v.coeff_i[n]) == 0.0);
  }

  // a fresh basis recomputes the same values
  const FormalPowerBasis again(seq, {0, 0}, 3);
  const Point z{0.33, -0.41};
  for (int n = 0; n <= 3; ++n)
    CHECK(std::abs(basis.power(n, Complex(1, 0), z) -
                   again.power(n, Complex(1, 0), z)) < 2 * basis.quad_tol());
}
