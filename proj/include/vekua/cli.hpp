#ifndef VEKUA_CLI_HPP
#define VEKUA_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vekua/bvpsolve.hpp"

namespace vekua::cli {

/// Solve/evaluation region. Disks and rectangles are star-shaped from any
/// interior point; strips carry no boundary curve and only support basis
/// evaluation and verification.
struct DomainSpec {
  enum class Type { disk, rectangle, strip };
  Type type = Type::disk;
  Point center{0, 0};
  double radius = 1.0;
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;

  bool contains(Point z) const;
  /// n-by-n bounding grid clipped strictly inside (margin keeps residual
  /// stencils interior).
  Grid interior_grid(int n, double margin = 5e-3) const;
  BoundaryCurve boundary() const;
};

/// Everything a command needs, decoded from one JSON document.
struct RunConfig {
  CoordinateSystem coords;
  Bindings params;
  SeparableWeight weight;
  EquationDescriptor eq;
  Point center;
  int order = 2;
  DomainSpec domain;
  std::optional<RealFieldHandle> boundary_data;
  std::optional<RealFieldHandle> exact_solution;
  int grid_n = 41;
  int collocation_points = 0;  // 0: 4x system size
  double quad_tol = 1e-9;
  std::vector<int> orders;  // convergence schedule
};

RunConfig load_config(const std::string& path);

/// Exit codes: 0 ok, 2 config error, 3 numeric failure, 4 rank collapse,
/// 5 verification failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace vekua::cli

#endif  // VEKUA_CLI_HPP
