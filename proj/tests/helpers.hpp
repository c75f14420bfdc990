#ifndef VEKUA_TESTS_HELPERS_HPP
#define VEKUA_TESTS_HELPERS_HPP

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "vekua/genpair.hpp"

namespace vekua::testing {

inline std::mt19937& rng() {
  static std::mt19937 gen(0xC0FFEE);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Point random_point_in_disk(Point center, double radius) {
  while (true) {
    const double x = uniform(-radius, radius);
    const double y = uniform(-radius, radius);
    if (x * x + y * y <= radius * radius)
      return {center.x + x, center.y + y};
  }
}

inline Grid random_grid_in_disk(Point center, double radius, std::size_t n) {
  Grid g;
  g.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    g.points.push_back(random_point_in_disk(center, radius));
  return g;
}

/// Separable weights exercised across the suites, each with a disk on
/// which its coordinates are valid and f stays positive.
struct WeightCase {
  std::string name;
  SeparableWeight weight;
  Point center;
  double radius;
};

inline std::vector<WeightCase> catalog_weights() {
  std::vector<WeightCase> cases;
  cases.push_back({"yukawa_exp",
                   SeparableWeight(Expr::parse("1"), Expr::parse("exp(c*v)"),
                                   cartesian(), {{"c", 1.0}}),
                   {0.0, 0.0},
                   0.9});
  cases.push_back({"yukawa_cosh",
                   SeparableWeight(Expr::parse("1"), Expr::parse("cosh(c*v)"),
                                   cartesian(), {{"c", 1.0}}),
                   {0.0, 0.0},
                   0.9});
  cases.push_back({"helmholtz_cos",
                   SeparableWeight(Expr::parse("1"), Expr::parse("cos(c*v)"),
                                   cartesian(), {{"c", 1.0}}),
                   {0.0, 0.0},
                   0.9});
  cases.push_back({"x_exp",
                   SeparableWeight(Expr::parse("u"), Expr::parse("exp(v)"),
                                   cartesian()),
                   {2.0, 0.0},
                   0.7});
  cases.push_back({"polar_radial",
                   SeparableWeight(Expr::parse("exp(2*u)"), Expr::parse("1"),
                                   polar()),
                   {2.0, 0.0},
                   0.7});
  cases.push_back({"bipolar_exp",
                   SeparableWeight(Expr::parse("exp(u)"), Expr::parse("1"),
                                   bipolar(3.0)),
                   {0.0, 0.8},
                   0.5});
  cases.push_back({"elliptic_exp",
                   SeparableWeight(Expr::parse("exp(u)"), Expr::parse("1"),
                                   elliptic(2.0)),
                   {0.0, 0.5},
                   0.4});
  return cases;
}

/// True when the 4-point Wirtinger stencil at z stays inside the validity
/// region with the given margin.
inline bool stencil_ok(const FieldHandle::DomainPred& valid, Point z,
                       double margin) {
  if (valid && !valid(z)) return false;
  for (Point p : {Point{z.x + margin, z.y}, Point{z.x - margin, z.y},
                  Point{z.x, z.y + margin}, Point{z.x, z.y - margin}})
    if (valid && !valid(p)) return false;
  return true;
}

}  // namespace vekua::testing

#endif  // VEKUA_TESTS_HELPERS_HPP
