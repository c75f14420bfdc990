#include "vekua/quadrature.hpp"

#include <cmath>

namespace vekua {

namespace {

// 8-point Gauss-Legendre abscissae/weights on [-1, 1].
constexpr double kGlNode[4] = {0.18343464249564980494, 0.52553240991632898582,
                               0.79666647741362673959, 0.96028985649753623168};
constexpr double kGlWeight[4] = {0.36268378337836198297, 0.31370664587788728734,
                                 0.22238103445337447054, 0.10122853629037625915};

Complex gl8(const FieldHandle& h, Complex a, Complex b) {
  const Complex mid = 0.5 * (a + b);
  const Complex half = 0.5 * (b - a);
  Complex sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Complex d = half * kGlNode[i];
    sum += kGlWeight[i] * (h(Point(mid + d)) + h(Point(mid - d)));
  }
  return half * sum;
}

Complex adaptive_segment(const FieldHandle& h, Complex a, Complex b, double tol,
                         int depth) {
  const Complex whole = gl8(h, a, b);
  const Complex mid = 0.5 * (a + b);
  const Complex halves = gl8(h, a, mid) + gl8(h, mid, b);
  const double est = std::abs(halves - whole);
  if (est <= tol) return halves;
  if (depth >= kMaxBisectionDepth)
    throw QuadratureError("line integral did not converge", est);
  return adaptive_segment(h, a, mid, 0.5 * tol, depth + 1) +
         adaptive_segment(h, mid, b, 0.5 * tol, depth + 1);
}

void require_on_path(const FieldHandle& h, Complex a, Complex b) {
  // Endpoints and midpoint; Gauss nodes are interior to the segment.
  for (Complex z : {a, b, Complex(0.5 * (a + b))})
    if (!h.in_domain(Point(z)))
      throw DomainError("integrand undefined on path near (" +
                        std::to_string(z.real()) + ", " +
                        std::to_string(z.imag()) + ")");
}

}  // namespace

Complex line_integral(const FieldHandle& h, const Path& path, double tol) {
  const double total_len = path.length();
  Complex sum = 0.0;
  const auto& nodes = path.nodes();
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const Complex a = nodes[i].to_complex();
    const Complex b = nodes[i + 1].to_complex();
    require_on_path(h, a, b);
    const double share = distance(nodes[i], nodes[i + 1]) / total_len;
    sum += adaptive_segment(h, a, b, tol * share, 0);
  }
  return sum;
}

std::vector<Complex> cumulative_line_integrals(const FieldHandle& h,
                                               const Path& path, double tol) {
  const double total_len = path.length();
  const auto& nodes = path.nodes();
  std::vector<Complex> partial;
  partial.reserve(nodes.size());
  partial.push_back(0.0);
  Complex sum = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const Complex a = nodes[i].to_complex();
    const Complex b = nodes[i + 1].to_complex();
    require_on_path(h, a, b);
    const double share = distance(nodes[i], nodes[i + 1]) / total_len;
    sum += adaptive_segment(h, a, b, tol * share, 0);
    partial.push_back(sum);
  }
  return partial;
}

}  // namespace vekua
