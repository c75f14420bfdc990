#ifndef VEKUA_GEOMETRY_HPP
#define VEKUA_GEOMETRY_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "vekua/errors.hpp"

namespace vekua {

using Complex = std::complex<double>;

/// A point of the plane, identified with z = x + iy.
struct Point {
  double x = 0.0;
  double y = 0.0;

  Point() = default;
  Point(double px, double py) : x(px), y(py) {}
  explicit Point(Complex z) : x(z.real()), y(z.imag()) {}

  Complex to_complex() const { return {x, y}; }
  double abs() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
  friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
};

inline double distance(Point a, Point b) { return (a - b).abs(); }

/// Polyline from nodes.front() to nodes.back().
class Path {
 public:
  explicit Path(std::vector<Point> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2) throw Error("path needs at least 2 nodes");
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
      if (!nodes_[i].finite() || distance(nodes_[i], nodes_[i + 1]) == 0.0)
        throw Error("path nodes must be finite and consecutive nodes distinct");
    }
    if (!nodes_.back().finite()) throw Error("path nodes must be finite");
  }

  static Path segment(Point a, Point b) { return Path({a, b}); }

  const std::vector<Point>& nodes() const { return nodes_; }
  Point start() const { return nodes_.front(); }
  Point end() const { return nodes_.back(); }
  std::size_t segments() const { return nodes_.size() - 1; }

  double length() const {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
      total += distance(nodes_[i], nodes_[i + 1]);
    return total;
  }

  Path reversed() const {
    return Path(std::vector<Point>(nodes_.rbegin(), nodes_.rend()));
  }

 private:
  std::vector<Point> nodes_;
};

/// Flat list of sample points; rows/cols are set for structured grids.
struct Grid {
  std::vector<Point> points;
  int rows = 0;
  int cols = 0;
  double dx = 0.0;
  double dy = 0.0;

  std::size_t size() const { return points.size(); }
  bool structured() const { return rows > 0 && cols > 0; }

  /// Uniform nx-by-ny grid covering [lo.x, hi.x] x [lo.y, hi.y].
  static Grid rectangular(Point lo, Point hi, int nx, int ny) {
    Grid g;
    g.cols = nx;
    g.rows = ny;
    g.dx = nx > 1 ? (hi.x - lo.x) / (nx - 1) : 0.0;
    g.dy = ny > 1 ? (hi.y - lo.y) / (ny - 1) : 0.0;
    g.points.reserve(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        g.points.push_back({lo.x + i * g.dx, lo.y + j * g.dy});
    return g;
  }

  /// Points of the n-by-n bounding grid that fall inside the disk
  /// |z - center| <= radius. Unstructured result.
  static Grid disk(Point center, double radius, int n) {
    Grid box = rectangular({center.x - radius, center.y - radius},
                           {center.x + radius, center.y + radius}, n, n);
    Grid g;
    for (const Point& p : box.points)
      if (distance(p, center) <= radius) g.points.push_back(p);
    return g;
  }
};

}  // namespace vekua

#endif  // VEKUA_GEOMETRY_HPP
