#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "vekua/quadrature.hpp"

using namespace vekua;
using vekua::testing::uniform;

namespace {

// random field smooth in x, y (polynomial in z and conj z)
FieldHandle random_smooth_field() {
  Complex c[4][4];
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k + j < 4; ++k)
      c[j][k] = Complex(uniform(-1, 1), uniform(-1, 1));
  return FieldHandle([c](Point p) {
    const Complex z = p.to_complex();
    Complex sum = 0.0;
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k + j < 4; ++k)
        sum += c[j][k] * std::pow(z, j) * std::pow(std::conj(z), k);
    return sum;
  });
}

Path random_path(int nodes) {
  std::vector<Point> pts;
  pts.push_back({uniform(-1, 1), uniform(-1, 1)});
  while (static_cast<int>(pts.size()) < nodes) {
    Point next{uniform(-1, 1), uniform(-1, 1)};
    if (distance(pts.back(), next) > 1e-3) pts.push_back(next);
  }
  return Path(pts);
}

}  // namespace

TEST_CASE("constant integrand integrates to the displacement") {
  const FieldHandle one = FieldHandle::constant(1.0);
  const Complex I = line_integral(one, Path::segment({0, 0}, {1, 1}));
  CHECK(std::abs(I - Complex(1.0, 1.0)) < 1e-14);
}

TEST_CASE("analytic integrand over a closed square vanishes") {
  const FieldHandle f([](Point z) { return z.to_complex(); });
  const Path square({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}});
  CHECK(std::abs(line_integral(f, square, 1e-10)) < 1e-10);
}

TEST_CASE("1/z around the origin gives 2 pi i") {
  const FieldHandle f([](Point z) { return 1.0 / z.to_complex(); });
  std::vector<Point> nodes;
  for (int k = 0; k <= 256; ++k) {
    const double t = 2.0 * M_PI * k / 256.0;
    nodes.push_back({std::cos(t), std::sin(t)});
  }
  const Complex I = line_integral(f, Path(nodes), 1e-10);
  CHECK(std::abs(I - Complex(0.0, 2.0 * M_PI)) < 1e-3);
}

TEST_CASE("cumulative integrals at the polyline nodes") {
  const FieldHandle one = FieldHandle::constant(1.0);
  const auto partial =
      cumulative_line_integrals(one, Path({{0, 0}, {1, 0}, {1, 1}}));
  REQUIRE(partial.size() == 3);
  CHECK(std::abs(partial[0]) < 1e-15);
  CHECK(std::abs(partial[1] - Complex(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(partial[2] - Complex(1.0, 1.0)) < 1e-14);

  // int z dz = z^2 / 2
  const FieldHandle ident([](Point z) { return z.to_complex(); });
  const auto partial2 =
      cumulative_line_integrals(ident, Path({{0, 0}, {1, 0}, {2, 0}}));
  CHECK(std::abs(partial2[1] - Complex(0.5, 0.0)) < 1e-13);
  CHECK(std::abs(partial2[2] - Complex(2.0, 0.0)) < 1e-13);
}

TEST_CASE("additivity, reversal and cumulative consistency") {
  const double tol = 1e-10;
  for (int trial = 0; trial < 50; ++trial) {
    const FieldHandle f = random_smooth_field();
    const Path path = random_path(4);
    const auto& nodes = path.nodes();

    const Complex whole = line_integral(f, path, tol);
    const Complex left = line_integral(f, Path({nodes[0], nodes[1], nodes[2]}), tol);
    const Complex right = line_integral(f, Path({nodes[2], nodes[3]}), tol);
    CHECK(std::abs(whole - left - right) < 2 * tol);

    const Complex reversed = line_integral(f, path.reversed(), tol);
    CHECK(std::abs(whole + reversed) < 2 * tol);

    const auto partial = cumulative_line_integrals(f, path, tol);
    CHECK(std::abs(partial.back() - whole) < 2 * tol);
  }
}

TEST_CASE("pole on the path defeats refinement") {
  // pole away from every dyadic midpoint, so no symmetric cancellation
  const FieldHandle f([](Point z) { return 1.0 / (z.to_complex() - 0.3); });
  CHECK_THROWS_AS(line_integral(f, Path::segment({0, 0}, {1, 0}), 1e-12),
                  QuadratureError);
}
