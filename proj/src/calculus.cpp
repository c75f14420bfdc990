#include "vekua/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace vekua {

namespace {

double scaled_step(Point z, double step) {
  return step * std::max(1.0, z.abs());
}

template <typename Handle>
void require_stencil(const Handle& h, Point p) {
  if (!h.in_domain(p)) throw StencilError(p.x, p.y);
}

}  // namespace

Complex wirtinger_dz(const FieldHandle& h, Point z, double step) {
  const double s = scaled_step(z, step);
  const Point e{z.x + s, z.y}, w{z.x - s, z.y}, n{z.x, z.y + s}, so{z.x, z.y - s};
  for (Point p : {e, w, n, so}) require_stencil(h, p);
  const Complex ddx = (h(e) - h(w)) / (2.0 * s);
  const Complex ddy = (h(n) - h(so)) / (2.0 * s);
  return 0.5 * (ddx - Complex(0, 1) * ddy);
}

Complex wirtinger_dzbar(const FieldHandle& h, Point z, double step) {
  const double s = scaled_step(z, step);
  const Point e{z.x + s, z.y}, w{z.x - s, z.y}, n{z.x, z.y + s}, so{z.x, z.y - s};
  for (Point p : {e, w, n, so}) require_stencil(h, p);
  const Complex ddx = (h(e) - h(w)) / (2.0 * s);
  const Complex ddy = (h(n) - h(so)) / (2.0 * s);
  return 0.5 * (ddx + Complex(0, 1) * ddy);
}

Complex wirtinger_dz(const RealFieldHandle& h, Point z, double step) {
  return wirtinger_dz(h.as_complex(), z, step);
}

Complex wirtinger_dzbar(const RealFieldHandle& h, Point z, double step) {
  return wirtinger_dzbar(h.as_complex(), z, step);
}

double laplacian(const RealFieldHandle& h, Point z, double step) {
  const double s = scaled_step(z, step);
  const Point e{z.x + s, z.y}, w{z.x - s, z.y}, n{z.x, z.y + s}, so{z.x, z.y - s};
  for (Point p : {e, w, n, so}) require_stencil(h, p);
  require_stencil(h, z);
  return (h(e) + h(w) + h(n) + h(so) - 4.0 * h(z)) / (s * s);
}

Gradient gradient(const RealFieldHandle& h, Point z, double step) {
  const double s = scaled_step(z, step);
  const Point e{z.x + s, z.y}, w{z.x - s, z.y}, n{z.x, z.y + s}, so{z.x, z.y - s};
  for (Point p : {e, w, n, so}) require_stencil(h, p);
  return {(h(e) - h(w)) / (2.0 * s), (h(n) - h(so)) / (2.0 * s)};
}

FieldHandle wirtinger_dz_field(const FieldHandle& h, double step) {
  return FieldHandle([h, step](Point z) { return wirtinger_dz(h, z, step); },
                     h.domain());
}

FieldHandle wirtinger_dzbar_field(const FieldHandle& h, double step) {
  return FieldHandle([h, step](Point z) { return wirtinger_dzbar(h, z, step); },
                     h.domain());
}

FieldHandle wirtinger_dzbar_field(const RealFieldHandle& h, double step) {
  return wirtinger_dzbar_field(h.as_complex(), step);
}

}  // namespace vekua
