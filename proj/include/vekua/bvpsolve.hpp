#ifndef VEKUA_BVPSOLVE_HPP
#define VEKUA_BVPSOLVE_HPP

#include <functional>
#include <optional>

#include "vekua/elliptic.hpp"

namespace vekua {

/// Relative singular-value cutoff for the collocation least squares.
inline constexpr double kSvdTruncation = 1e-13;

/// Closed simple curve parameterized over t in [0, 1).
struct BoundaryCurve {
  std::function<Point(double)> at;

  static BoundaryCurve circle(Point center, double radius);
  static BoundaryCurve rectangle(double x0, double x1, double y0, double y1);
};

/// Dirichlet problem: equation + boundary + data, with an interior grid for
/// error reporting and an optional known solution.
struct BoundaryValueProblem {
  EquationDescriptor eq;
  BoundaryCurve boundary;
  RealFieldHandle data;
  Point center;  // basis center, strictly inside
  Grid interior_grid;
  std::optional<RealFieldHandle> exact_solution;
};

struct CollocationSolution {
  std::vector<double> coefficients;
  CompleteSystem system;
  double boundary_residual = 0.0;
  std::optional<double> max_interior_error;
  double sigma_max = 0.0;  // singular-value range of the collocation matrix
  double sigma_min = 0.0;
  int rank = 0;
};

/// Least-squares fit of sum a_n u_n to the data at M equispaced boundary
/// points, via SVD with relative truncation 1e-13. Trefftz-type matrices
/// are severely ill-conditioned, so truncation (not normal equations) keeps
/// the noise amplification bounded. Needs M >= 2 * system size; throws
/// RankCollapseError when every singular value is cut.
CollocationSolution collocate(const BoundaryValueProblem& bvp,
                              const CompleteSystem& sys, int M);

double evaluate_solution(const CollocationSolution& sol, Point z);

struct ConvergenceRow {
  int order;
  std::size_t system_size = 0;
  double boundary_residual = 0.0;
  double max_interior_error = 0.0;
  double runtime_seconds = 0.0;
};

/// Re-runs the experiment at each order in n_list (M = 4x system size).
/// Requires exact_solution.
std::vector<ConvergenceRow> convergence_table(const BoundaryValueProblem& bvp,
                                              const std::vector<int>& n_list,
                                              double quad_tol = 1e-9);

}  // namespace vekua

#endif  // VEKUA_BVPSOLVE_HPP
