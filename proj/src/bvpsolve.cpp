#include "vekua/bvpsolve.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace vekua {

BoundaryCurve BoundaryCurve::circle(Point center, double radius) {
  return {[center, radius](double t) {
    const double a = 2.0 * M_PI * t;
    return Point{center.x + radius * std::cos(a),
                 center.y + radius * std::sin(a)};
  }};
}

BoundaryCurve BoundaryCurve::rectangle(double x0, double x1, double y0,
                                       double y1) {
  const double w = x1 - x0, h = y1 - y0;
  const double per = 2.0 * (w + h);
  return {[x0, x1, y0, y1, w, h, per](double t) {
    double s = t * per;
    if (s < w) return Point{x0 + s, y0};
    s -= w;
    if (s < h) return Point{x1, y0 + s};
    s -= h;
    if (s < w) return Point{x1 - s, y1};
    s -= w;
    return Point{x0, y1 - s};
  }};
}

CollocationSolution collocate(const BoundaryValueProblem& bvp,
                              const CompleteSystem& sys, int M) {
  const int n = static_cast<int>(sys.size());
  if (n == 0) throw Error("empty solution system");
  if (M < 2 * n)
    throw Error("need at least twice as many collocation points as basis "
                "functions (M = " + std::to_string(M) + ", size = " +
                std::to_string(n) + ")");

  Eigen::MatrixXd A(M, n);
  Eigen::VectorXd rhs(M);
  std::vector<Point> pts(M);
  for (int k = 0; k < M; ++k) {
    const Point z = bvp.boundary.at(static_cast<double>(k) / M);
    pts[k] = z;
    rhs(k) = bvp.data(z);
    for (int j = 0; j < n; ++j) A(k, j) = sys.members[j].fn(z);
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kSvdTruncation);
  CollocationSolution sol;
  sol.system = sys;
  sol.sigma_max = svd.singularValues()(0);
  sol.sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
  sol.rank = static_cast<int>(svd.rank());
  if (sol.rank == 0)
    throw RankCollapseError("all singular values below relative cutoff " +
                            std::to_string(kSvdTruncation));
  const Eigen::VectorXd coef = svd.solve(rhs);
  sol.coefficients.assign(coef.data(), coef.data() + coef.size());

  for (int k = 0; k < M; ++k) {
    double fitted = 0.0;
    for (int j = 0; j < n; ++j) fitted += coef(j) * A(k, j);
    sol.boundary_residual =
        std::max(sol.boundary_residual, std::abs(fitted - rhs(k)));
  }

  if (bvp.exact_solution) {
    double worst = 0.0;
    for (const Point& z : bvp.interior_grid.points)
      worst = std::max(worst,
                       std::abs(evaluate_solution(sol, z) -
                                (*bvp.exact_solution)(z)));
    sol.max_interior_error = worst;
  }
  return sol;
}

double evaluate_solution(const CollocationSolution& sol, Point z) {
  double sum = 0.0;
  for (std::size_t j = 0; j < sol.coefficients.size(); ++j)
    sum += sol.coefficients[j] * sol.system.members[j].fn(z);
  return sum;
}

std::vector<ConvergenceRow> convergence_table(const BoundaryValueProblem& bvp,
                                              const std::vector<int>& n_list,
                                              double quad_tol) {
  if (!bvp.exact_solution)
    throw Error("convergence table needs an exact solution");
  std::vector<ConvergenceRow> rows;
  rows.reserve(n_list.size());
  for (int N : n_list) {
    const auto t0 = std::chrono::steady_clock::now();
    GeneratingSequence seq(bvp.eq.weight());
    FormalPowerBasis basis(seq, bvp.center, N, quad_tol);
    const CompleteSystem sys =
        complete_system(bvp.eq, basis, N, bvp.interior_grid);
    const CollocationSolution sol =
        collocate(bvp, sys, 4 * static_cast<int>(sys.size()));
    const auto t1 = std::chrono::steady_clock::now();
    ConvergenceRow row;
    row.order = N;
    row.system_size = sys.size();
    row.boundary_residual = sol.boundary_residual;
    row.max_interior_error = sol.max_interior_error.value_or(0.0);
    row.runtime_seconds = std::chrono::duration<double>(t1 - t0).count();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace vekua
