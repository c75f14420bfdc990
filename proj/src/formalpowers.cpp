#include "vekua/formalpowers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <unordered_map>

namespace vekua {

namespace {

constexpr int kMinIntervals = 32;
constexpr int kIntervalsPerUnit = 64;
constexpr int kMaxSweepRefines = 9;

Complex cpow_int(Complex base, int e) {
  if (e == 0) return 1.0;
  const bool negative = e < 0;
  unsigned k = negative ? static_cast<unsigned>(-(long long)e)
                        : static_cast<unsigned>(e);
  Complex r = 1.0, b = base;
  for (; k != 0; k >>= 1) {
    if (k & 1) r *= b;
    b *= b;
  }
  return negative ? 1.0 / r : r;
}

// ---------------------------------------------------------------------------
// Node layout along a polyline. Quadrature nodes are near-uniform per
// segment; requested stop arclengths become exact nodes so the cumulative
// tables report values exactly there. Stops must be strictly increasing.

struct NodeSet {
  std::vector<Complex> pos;
  std::vector<double> arc;
  std::vector<int> seg_of_interval;
  std::vector<Complex> seg_dir;
  std::vector<int> seg_first_node;
  std::vector<int> seg_last_node;
  std::vector<int> stop_node;
  int intervals() const { return static_cast<int>(pos.size()) - 1; }
};

NodeSet build_nodes(const Path& path, const std::vector<double>& stops,
                    int target_intervals) {
  const auto& pn = path.nodes();
  const double total = path.length();
  NodeSet ns;
  ns.stop_node.assign(stops.size(), -1);
  double off = 0.0;
  std::size_t next_stop = 0;
  for (std::size_t seg = 0; seg + 1 < pn.size(); ++seg) {
    const Complex a = pn[seg].to_complex();
    const Complex b = pn[seg + 1].to_complex();
    const double len = std::abs(b - a);
    const Complex dir = (b - a) / len;
    const int k = std::max(
        8, static_cast<int>(std::llround(double(target_intervals) * len / total)));
    const double h = len / k;
    const double snap = 1e-12 * std::max(1.0, len);

    // this segment's stops as local arclengths in (0, len]
    std::vector<std::pair<double, int>> specials;
    while (next_stop < stops.size() &&
           stops[next_stop] <= off + len + 1e-12 * std::max(1.0, total)) {
      const double s = std::clamp(stops[next_stop] - off, 0.0, len);
      if (s <= snap) throw Error("internal: stop collides with path start");
      specials.emplace_back(s, static_cast<int>(next_stop));
      ++next_stop;
    }

    // merge uniform nodes with stops; stops within snap of a uniform node
    // tag it in place, and interior uniform nodes within h/4 of a stop are
    // dropped to keep the spacing regular
    struct Tagged {
      double s;
      int stop;
    };
    std::vector<Tagged> merged;
    merged.reserve(k + 1 + specials.size());
    std::size_t si = 0;
    for (int j = 0; j <= k; ++j) {
      const double u = (j == k) ? len : j * h;
      while (si < specials.size() && specials[si].first < u - snap) {
        merged.push_back({specials[si].first, specials[si].second});
        ++si;
      }
      if (si < specials.size() && std::abs(specials[si].first - u) <= snap) {
        merged.push_back({u, specials[si].second});
        ++si;
        continue;
      }
      bool crowded = false;
      if (j != 0 && j != k) {
        if (!merged.empty() && merged.back().stop >= 0 &&
            u - merged.back().s <= 0.25 * h)
          crowded = true;
        if (si < specials.size() && specials[si].first - u <= 0.25 * h)
          crowded = true;
      }
      if (!crowded) merged.push_back({u, -1});
    }

    ns.seg_dir.push_back(dir);
    ns.seg_first_node.push_back(seg == 0 ? 0
                                         : static_cast<int>(ns.pos.size()) - 1);
    for (std::size_t j = (seg == 0 ? 0 : 1); j < merged.size(); ++j) {
      const bool is_end = j + 1 == merged.size();
      ns.pos.push_back(is_end ? b : a + dir * merged[j].s);
      ns.arc.push_back(off + merged[j].s);
      if (merged[j].stop >= 0)
        ns.stop_node[merged[j].stop] = static_cast<int>(ns.pos.size()) - 1;
      ns.seg_of_interval.push_back(static_cast<int>(seg));
    }
    if (seg == 0) ns.seg_of_interval.pop_back();  // first node opens no interval
    ns.seg_last_node.push_back(static_cast<int>(ns.pos.size()) - 1);
    off += len;
  }
  for (std::size_t i = 0; i < stops.size(); ++i)
    if (ns.stop_node[i] < 0) throw Error("internal: stop not materialized");
  return ns;
}

// Cumulative integration: per interval a 4-node interpolatory rule (exact
// for cubics); stencils never cross a polyline corner.
struct CumulativeScheme {
  std::vector<std::array<int, 4>> stencil;
  std::vector<std::array<double, 4>> weight;
  std::vector<Complex> dir;
};

CumulativeScheme build_scheme(const NodeSet& ns) {
  CumulativeScheme sch;
  const int m = ns.intervals();
  sch.stencil.resize(m);
  sch.weight.resize(m);
  sch.dir.resize(m);
  for (int t = 0; t < m; ++t) {
    const int seg = ns.seg_of_interval[t];
    const int lo = ns.seg_first_node[seg];
    const int hi = ns.seg_last_node[seg];
    const int base = std::clamp(t - 1, lo, hi - 3);
    std::array<double, 4> s;
    for (int i = 0; i < 4; ++i) s[i] = ns.arc[base + i];
    const double mid = 0.5 * (ns.arc[t] + ns.arc[t + 1]);
    const double half = 0.5 * (ns.arc[t + 1] - ns.arc[t]);
    const double g = half / std::sqrt(3.0);
    auto lagrange = [&s](int i, double x) {
      double prod = 1.0;
      for (int j = 0; j < 4; ++j)
        if (j != i) prod *= (x - s[j]) / (s[i] - s[j]);
      return prod;
    };
    for (int i = 0; i < 4; ++i) {
      sch.stencil[t][i] = base + i;
      // two-point Gauss integrates the cubic Lagrange basis exactly
      sch.weight[t][i] = half * (lagrange(i, mid - g) + lagrange(i, mid + g));
    }
    sch.dir[t] = ns.seg_dir[seg];
  }
  return sch;
}

void cumulative_integral(const CumulativeScheme& sch,
                         const std::vector<Complex>& g,
                         std::vector<Complex>& out) {
  out.resize(g.size());
  out[0] = 0.0;
  for (std::size_t t = 0; t + 1 < g.size(); ++t) {
    Complex piece = 0.0;
    for (int i = 0; i < 4; ++i)
      piece += sch.weight[t][i] * g[sch.stencil[t][i]];
    out[t + 1] = out[t] + sch.dir[t] * piece;
  }
}

// Generator tables along the nodes. With (F, G) = (f, i/f) the pairing of
// every level is -2i |phi_z|^{2j}, so the adjoints collapse to
// F*_j = -i fpart phi_z^{-j}, G*_j = gpart phi_z^{-j}.
struct GeneratorTables {
  int levels;
  int nodes;
  std::vector<Complex> F, G, Fs, Gs;  // indexed j * nodes + t
};

GeneratorTables tabulate(const SeparableWeight& w, const NodeSet& ns, int N) {
  GeneratorTables tab;
  tab.levels = N + 1;
  tab.nodes = static_cast<int>(ns.pos.size());
  const std::size_t size = static_cast<std::size_t>(tab.levels) * tab.nodes;
  tab.F.resize(size);
  tab.G.resize(size);
  tab.Fs.resize(size);
  tab.Gs.resize(size);
  const RealFieldHandle& f = w.f();
  const FieldHandle& phi = w.coords().phi;
  const FieldHandle& phi_z = w.coords().phi_z;
  const bool needs_odd = N >= 1;
  for (int t = 0; t < tab.nodes; ++t) {
    const Point zp{ns.pos[t].real(), ns.pos[t].imag()};
    if (!f.in_domain(zp))
      throw DomainError("sweep path exits the domain at (" +
                        std::to_string(zp.x) + ", " + std::to_string(zp.y) +
                        ")");
    const double fv = f(zp);
    const Complex pz = phi_z(zp);
    const double apz = std::abs(pz);
    if (!(apz > 0.0) || !std::isfinite(apz))
      throw RangeError("phi_z vanishes or overflows on the sweep path");
    double uu = 1.0;
    if (needs_odd) {
      const double Uv = w.eval_U(phi(zp).real());
      uu = Uv * Uv;
    }
    Complex p_acc = 1.0;
    Complex ip_acc = 1.0;
    const Complex ipz = 1.0 / pz;
    for (int j = 0; j <= N; ++j) {
      const bool odd = (j % 2) != 0;
      const double fpart = odd ? fv / uu : fv;
      const double gpart = odd ? uu / fv : 1.0 / fv;
      const std::size_t idx = static_cast<std::size_t>(j) * tab.nodes + t;
      tab.F[idx] = p_acc * fpart;
      tab.G[idx] = p_acc * Complex(0.0, gpart);
      tab.Fs[idx] = ip_acc * Complex(0.0, -fpart);
      tab.Gs[idx] = ip_acc * gpart;
      p_acc *= pz;
      ip_acc *= ipz;
    }
  }
  return tab;
}

// out[variant][level][order][stop] for level + order <= N; variant 0
// carries coefficient 1, variant 1 coefficient i. Level 0 is the basis
// proper; higher levels feed the differential-relation checks.
using LevelTable = std::vector<std::vector<std::vector<Complex>>>;
using SweepOutput = std::array<LevelTable, 2>;

SweepOutput run_sweep(const SeparableWeight& w, const NodeSet& ns, int N) {
  const CumulativeScheme sch = build_scheme(ns);
  const GeneratorTables tab = tabulate(w, ns, N);
  const int nodes = tab.nodes;
  const std::size_t nstops = ns.stop_node.size();

  SweepOutput out;
  for (int var = 0; var < 2; ++var) {
    out[var].resize(N + 1);
    for (int j = 0; j <= N; ++j)
      out[var][j].assign(N - j + 1, std::vector<Complex>(nstops));
    const Complex a = var == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0);

    std::vector<double> lam(N + 1), mu(N + 1);
    for (int j = 0; j <= N; ++j) {
      const Complex Fc = tab.F[static_cast<std::size_t>(j) * nodes];
      const Complex Gc = tab.G[static_cast<std::size_t>(j) * nodes];
      const double det = Fc.real() * Gc.imag() - Fc.imag() * Gc.real();
      if (std::abs(det) < 1e-12)
        throw DegeneratePairError("pair degenerate at the basis center");
      lam[j] = (a.real() * Gc.imag() - a.imag() * Gc.real()) / det;
      mu[j] = (Fc.real() * a.imag() - Fc.imag() * a.real()) / det;
    }

    // cur[j] holds Z_j^(k) along the nodes; k advances one per pass
    std::vector<std::vector<Complex>> cur(N + 1);
    for (int j = 0; j <= N; ++j) {
      cur[j].resize(nodes);
      for (int t = 0; t < nodes; ++t) {
        const std::size_t idx = static_cast<std::size_t>(j) * nodes + t;
        cur[j][t] = lam[j] * tab.F[idx] + mu[j] * tab.G[idx];
      }
    }
    for (int j = 0; j <= N; ++j)
      for (std::size_t s = 0; s < nstops; ++s)
        out[var][j][0][s] = cur[j][ns.stop_node[s]];

    std::vector<Complex> g1(nodes), g2(nodes), I1, I2;
    for (int k = 1; k <= N; ++k) {
      for (int j = 0; j <= N - k; ++j) {
        const std::vector<Complex>& upper = cur[j + 1];
        for (int t = 0; t < nodes; ++t) {
          const std::size_t idx = static_cast<std::size_t>(j) * nodes + t;
          g1[t] = tab.Gs[idx] * upper[t];
          g2[t] = tab.Fs[idx] * upper[t];
        }
        cumulative_integral(sch, g1, I1);
        cumulative_integral(sch, g2, I2);
        std::vector<Complex>& dst = cur[j];
        for (int t = 0; t < nodes; ++t) {
          const std::size_t idx = static_cast<std::size_t>(j) * nodes + t;
          dst[t] = static_cast<double>(k) *
                   (tab.F[idx] * I1[t].real() + tab.G[idx] * I2[t].real());
        }
        for (std::size_t s = 0; s < nstops; ++s)
          out[var][j][k][s] = cur[j][ns.stop_node[s]];
      }
    }
  }
  return out;
}

double max_difference(const SweepOutput& a, const SweepOutput& b) {
  double worst = 0.0;
  for (int var = 0; var < 2; ++var)
    for (std::size_t j = 0; j < a[var].size(); ++j)
      for (std::size_t n = 0; n < a[var][j].size(); ++n)
        for (std::size_t s = 0; s < a[var][j][n].size(); ++s)
          worst = std::max(worst, std::abs(a[var][j][n][s] - b[var][j][n][s]));
  return worst;
}

SweepOutput converged_sweep(const SeparableWeight& w, const Path& path,
                            const std::vector<double>& stops, int N,
                            double quad_tol) {
  const double L = path.length();
  const int base = std::max(
      kMinIntervals, static_cast<int>(std::ceil(kIntervalsPerUnit * L)));
  SweepOutput prev;
  double diff = 0.0;
  for (int refine = 0; refine <= kMaxSweepRefines; ++refine) {
    const NodeSet ns = build_nodes(path, stops, base << refine);
    SweepOutput cur = run_sweep(w, ns, N);
    if (refine > 0) {
      diff = max_difference(prev, cur);
      if (diff < quad_tol) return cur;
    }
    prev = std::move(cur);
  }
  throw QuadratureError("formal power sweep did not converge", diff);
}

FormalPowerBasis::Values values_from_output(const SweepOutput& out, int N,
                                            std::size_t stop) {
  FormalPowerBasis::Values v;
  v.coeff_one.resize(N + 1);
  v.coeff_i.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    v.coeff_one[n] = out[0][0][n][stop];
    v.coeff_i[n] = out[1][0][n][stop];
  }
  return v;
}

struct PointKey {
  double x, y;
  bool operator==(const PointKey&) const = default;
};

struct PointKeyHash {
  std::size_t operator()(const PointKey& k) const {
    std::uint64_t a, b;
    std::memcpy(&a, &k.x, sizeof a);
    std::memcpy(&b, &k.y, sizeof b);
    a ^= b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2);
    return static_cast<std::size_t>(a);
  }
};

}  // namespace

FieldHandle order_zero(const GeneratingSequence& seq, int m, Complex a,
                       Point z0) {
  const GeneratingPair& p = seq.pair(m);
  const auto [lam, mu] = p.decompose(a, z0);
  const FieldHandle F = p.F, G = p.G;
  return FieldHandle(
      [lam = lam, mu = mu, F, G](Point z) { return lam * F(z) + mu * G(z); },
      both(F.domain(), G.domain()));
}

struct FormalPowerBasis::Impl {
  GeneratingSequence seq;
  Point center;
  int max_order;
  double quad_tol;
  PathBuilder paths;

  mutable std::unordered_map<PointKey, Values, PointKeyHash> cache;
  mutable std::mutex cache_mutex;

  Impl(GeneratingSequence s, Point c, int n, double tol, PathBuilder pb)
      : seq(std::move(s)),
        center(c),
        max_order(n),
        quad_tol(tol),
        paths(std::move(pb)) {}

  bool at_center(Point z) const {
    return distance(center, z) < 1e-13 * std::max(1.0, center.abs());
  }

  Values center_values() const {
    Values v;
    v.coeff_one.assign(max_order + 1, 0.0);
    v.coeff_i.assign(max_order + 1, 0.0);
    v.coeff_one[0] = Complex(1.0, 0.0);
    v.coeff_i[0] = Complex(0.0, 1.0);
    return v;
  }

  Values lookup(Point z) const {
    if (at_center(z)) return center_values();
    const PointKey key{z.x, z.y};
    {
      std::lock_guard lock(cache_mutex);
      auto it = cache.find(key);
      if (it != cache.end()) return it->second;
    }
    const Path path = paths(center, z);
    const SweepOutput out = converged_sweep(seq.weight(), path,
                                            {path.length()}, max_order, quad_tol);
    Values v = values_from_output(out, max_order, 0);
    std::lock_guard lock(cache_mutex);
    return cache.emplace(key, std::move(v)).first->second;
  }

  void store(Point z, Values v) const {
    std::lock_guard lock(cache_mutex);
    cache.emplace(PointKey{z.x, z.y}, std::move(v));
  }
};

FormalPowerBasis::FormalPowerBasis(GeneratingSequence seq, Point center,
                                   int max_order, double quad_tol,
                                   PathBuilder paths)
    : impl_(std::make_shared<Impl>(std::move(seq), center, max_order, quad_tol,
                                   std::move(paths))) {
  if (max_order < 0) throw Error("max_order must be nonnegative");
  if (!impl_->seq.weight().f().in_domain(center))
    throw Error("basis center outside the weight's domain");
  impl_->seq.weight().f()(center);  // throws unless f(center) > 0
}

FormalPowerBasis::Values FormalPowerBasis::values(Point z) const {
  return impl_->lookup(z);
}

Complex FormalPowerBasis::power(int n, Complex a, Point z) const {
  if (n < 0 || n > impl_->max_order)
    throw Error("formal power order " + std::to_string(n) +
                " exceeds basis max_order " + std::to_string(impl_->max_order));
  const Values v = impl_->lookup(z);
  return a.real() * v.coeff_one[n] + a.imag() * v.coeff_i[n];
}

FieldHandle FormalPowerBasis::power_field(int n, Complex a) const {
  FormalPowerBasis self = *this;
  return FieldHandle([self, n, a](Point z) { return self.power(n, a, z); },
                     impl_->seq.weight().f().domain());
}

Complex FormalPowerBasis::level_power(int level, int n, Complex a,
                                      Point z) const {
  if (level < 0 || n < 0 || level + n > impl_->max_order)
    throw Error("level_power needs level + n <= max_order");
  if (impl_->at_center(z)) return n == 0 ? a : Complex(0.0, 0.0);
  const Path path = impl_->paths(impl_->center, z);
  const SweepOutput out =
      converged_sweep(impl_->seq.weight(), path, {path.length()},
                      impl_->max_order, impl_->quad_tol);
  return a.real() * out[0][level][n][0] + a.imag() * out[1][level][n][0];
}

int FormalPowerBasis::max_order() const { return impl_->max_order; }
Point FormalPowerBasis::center() const { return impl_->center; }
double FormalPowerBasis::quad_tol() const { return impl_->quad_tol; }
const GeneratingSequence& FormalPowerBasis::sequence() const {
  return impl_->seq;
}
const SeparableWeight& FormalPowerBasis::weight() const {
  return impl_->seq.weight();
}

GridEvaluation basis_on_grid(const FormalPowerBasis& basis, const Grid& grid) {
  GridEvaluation result;
  result.values.resize(grid.size());

  // Radial fan: targets on a common ray from the center share one sweep
  // whose stop list carries every radius on the ray.
  struct RayGroup {
    std::vector<std::pair<double, std::size_t>> radii;
  };
  std::map<std::pair<double, double>, RayGroup> rays;
  const Point c = basis.center();
  const double center_eps = 1e-13 * std::max(1.0, c.abs());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point z = grid.points[i];
    const double r = distance(c, z);
    if (r < center_eps) {
      result.values[i] = basis.values(z);
      continue;
    }
    const double dx = (z.x - c.x) / r, dy = (z.y - c.y) / r;
    rays[{dx, dy}].radii.emplace_back(r, i);
  }

  for (auto& entry : rays) {
    RayGroup& group = entry.second;
    std::sort(group.radii.begin(), group.radii.end());
    std::vector<double> stops;
    const double dedupe = 1e-12 * std::max(1.0, group.radii.back().first);
    for (const auto& ri : group.radii)
      if (stops.empty() || ri.first > stops.back() + dedupe)
        stops.push_back(ri.first);
    const double rmax = stops.back();
    const Point target{c.x + entry.first.first * rmax,
                       c.y + entry.first.second * rmax};
    try {
      const Path path = Path::segment(c, target);
      const SweepOutput out = converged_sweep(
          basis.weight(), path, stops, basis.max_order(), basis.quad_tol());
      for (const auto& ri : group.radii) {
        auto it = std::lower_bound(stops.begin(), stops.end(),
                                   ri.first - dedupe);
        const std::size_t stop = static_cast<std::size_t>(it - stops.begin());
        result.values[ri.second] =
            values_from_output(out, basis.max_order(), stop);
      }
    } catch (const Error& err) {
      for (const auto& ri : group.radii)
        result.failures.emplace_back(ri.second, err.what());
    }
  }
  return result;
}

AsymptoticReport asymptotic_check(const FormalPowerBasis& basis, int n,
                                  Complex a, std::vector<double> radii,
                                  const std::vector<double>& directions) {
  if (std::abs(a) == 0.0)
    throw Error("asymptotic check needs a nonzero coefficient");
  std::sort(radii.begin(), radii.end(), std::greater<>());
  AsymptoticReport report;
  report.passed = true;
  const Point c = basis.center();
  for (double theta : directions) {
    const Complex e{std::cos(theta), std::sin(theta)};
    double prev = -1.0;
    for (double r : radii) {
      const Point z{c.x + r * e.real(), c.y + r * e.imag()};
      const Complex expected = a * cpow_int(r * e, n);
      const double ratio = std::abs(basis.power(n, a, z) / expected - 1.0);
      report.entries.push_back({r, theta, ratio});
      if (prev >= 0.0 && ratio > prev * 1.1 + 1e-9) report.passed = false;
      prev = ratio;
    }
    if (prev >= 0.05) report.passed = false;
  }
  return report;
}

HigherDerivatives higher_derivative(const GeneratingSequence& seq,
                                    const FieldHandle& W, int m_max, Point z0,
                                    double step) {
  if (m_max > 3)
    throw Error("higher derivatives capped at order 3: nested differences "
                "lose ~2 digits per level");
  if (step < 1e-12) throw RangeError("derivative step underflow");
  HigherDerivatives result;
  result.values.push_back(W(z0));
  FieldHandle cur = W;
  for (int m = 1; m <= m_max; ++m) {
    // widened per-level step balances truncation against amplified noise
    const double h = std::pow(step, 2.0 / (m + 1));
    const GeneratingPair& pair = seq.pair(m - 1);
    const FieldHandle next = fg_derivative(pair, cur, h);
    const FieldHandle next_fine = fg_derivative(pair, cur, 0.5 * h);
    const Complex v = next(z0);
    const Complex v_fine = next_fine(z0);
    const double scale = std::max({std::abs(v), std::abs(v_fine), 1e-8});
    if (std::abs(v - v_fine) > 0.1 * scale) result.noisy = true;
    result.values.push_back(v_fine);
    cur = next;
  }
  return result;
}

std::vector<Complex> taylor_coefficients(const GeneratingSequence& seq,
                                         const FieldHandle& W, Point z0,
                                         int count, double step) {
  if (count < 1 || count > 4)
    throw Error("taylor_coefficients supports 1..4 coefficients");
  const HigherDerivatives d = higher_derivative(seq, W, count - 1, z0, step);
  std::vector<Complex> out(count);
  double factorial = 1.0;
  for (int n = 0; n < count; ++n) {
    if (n > 0) factorial *= n;
    out[n] = d.values[n] / factorial;
  }
  return out;
}

}  // namespace vekua
