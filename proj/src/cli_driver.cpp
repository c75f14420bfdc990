#include "vekua/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "vekua/verify.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace vekua::cli {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// config decoding

Point decode_point(const ordered_json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2)
    throw ConfigError(what + " must be a [x, y] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

DomainSpec decode_domain(const ordered_json& j) {
  DomainSpec d;
  const std::string type = j.value("type", "disk");
  if (type == "disk") {
    d.type = DomainSpec::Type::disk;
    if (j.contains("center")) d.center = decode_point(j["center"], "domain.center");
    d.radius = j.value("radius", 1.0);
    if (!(d.radius > 0)) throw ConfigError("domain.radius must be positive");
  } else if (type == "rectangle") {
    d.type = DomainSpec::Type::rectangle;
    d.x0 = j.value("x0", -1.0);
    d.x1 = j.value("x1", 1.0);
    d.y0 = j.value("y0", -1.0);
    d.y1 = j.value("y1", 1.0);
    if (!(d.x0 < d.x1 && d.y0 < d.y1))
      throw ConfigError("rectangle domain needs x0 < x1 and y0 < y1");
  } else if (type == "strip") {
    d.type = DomainSpec::Type::strip;
    d.x0 = j.value("xmin", -1.0);
    d.x1 = j.value("xmax", 1.0);
    d.y0 = j.value("ymin", -1.0);
    d.y1 = j.value("ymax", 1.0);
    if (!(d.x0 < d.x1 && d.y0 < d.y1))
      throw ConfigError("strip domain needs xmin < xmax and ymin < ymax");
  } else {
    throw ConfigError("unknown domain type '" + type + "'");
  }
  return d;
}

Expr decode_expr(const ordered_json& j, const std::string& what) {
  if (!j.is_string()) throw ConfigError(what + " must be an expression string");
  try {
    return Expr::parse(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

RunConfig config_from_json(const ordered_json& j) {
  const ordered_json jcoords = j.value("coords", ordered_json{{"name", "cartesian"}});
  const std::string cname = jcoords.value("name", "cartesian");
  const double alpha = jcoords.value("alpha", 1.0);
  CoordinateSystem coords = coordinate_system(cname, alpha);

  Bindings params;
  if (j.contains("params"))
    for (const auto& [key, value] : j["params"].items())
      params.set(key, value.get<double>());

  if (!j.contains("weight"))
    throw ConfigError("config needs a weight {U, V} object");
  const ordered_json& jw = j["weight"];
  if (jw.contains("params"))
    for (const auto& [key, value] : jw["params"].items())
      params.set(key, value.get<double>());
  SeparableWeight weight(decode_expr(jw.value("U", ordered_json("1")), "weight.U"),
                         decode_expr(jw.value("V", ordered_json("1")), "weight.V"),
                         coords, params);

  if (!j.contains("equation")) throw ConfigError("config needs an equation");
  const ordered_json& je = j["equation"];
  const std::string kind = je.value("kind", "schrodinger");
  std::optional<EquationDescriptor> eq;
  if (kind == "schrodinger") {
    if (!je.contains("nu")) throw ConfigError("schrodinger equation needs nu");
    eq = EquationDescriptor::schrodinger(
        to_field(decode_expr(je["nu"], "equation.nu"), coords, params), weight);
  } else if (kind == "conductivity") {
    eq = EquationDescriptor::conductivity(weight);
  } else if (kind == "div_p_grad_plus_q") {
    for (const char* field : {"p", "q", "u0"})
      if (!je.contains(field))
        throw ConfigError("div_p_grad_plus_q equation needs p, q and u0");
    eq = EquationDescriptor::div_p_grad_plus_q(
        to_field(decode_expr(je["p"], "equation.p"), coords, params),
        to_field(decode_expr(je["q"], "equation.q"), coords, params),
        to_field(decode_expr(je["u0"], "equation.u0"), coords, params), weight);
  } else {
    throw ConfigError("unknown equation kind '" + kind + "'");
  }

  RunConfig cfg{std::move(coords),
                params,
                std::move(weight),
                std::move(*eq),
                j.contains("center") ? decode_point(j["center"], "center")
                                     : Point{0, 0},
                j.value("order", 2),
                decode_domain(j.value("domain", ordered_json{{"type", "disk"}})),
                std::nullopt,
                std::nullopt,
                j.value("grid", 41),
                j.value("collocation_points", 0),
                j.value("quad_tol", 1e-9),
                {}};
  if (j.contains("boundary_data"))
    cfg.boundary_data =
        to_field(decode_expr(j["boundary_data"], "boundary_data"), cfg.coords,
                 cfg.params);
  if (j.contains("exact_solution"))
    cfg.exact_solution =
        to_field(decode_expr(j["exact_solution"], "exact_solution"), cfg.coords,
                 cfg.params);
  if (j.contains("orders"))
    for (const auto& n : j["orders"]) cfg.orders.push_back(n.get<int>());

  if (cfg.order < 0) throw ConfigError("order must be nonnegative");
  if (cfg.grid_n < 2) throw ConfigError("grid must be at least 2");
  if (!cfg.domain.contains(cfg.center))
    throw ConfigError("basis center must lie inside the domain");
  return cfg;
}

// ---------------------------------------------------------------------------
// output helpers

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

struct BasisArtifacts {
  GeneratingSequence seq;
  FormalPowerBasis basis;
  CompleteSystem system;
  Grid grid;
  Grid probe;
};

BasisArtifacts build_artifacts(const RunConfig& cfg, int grid_n, int order,
                               double quad_tol) {
  GeneratingSequence seq(cfg.weight);
  FormalPowerBasis basis(seq, cfg.center, order, quad_tol);
  Grid grid = cfg.domain.interior_grid(grid_n);
  if (grid.points.empty()) throw ConfigError("interior grid is empty");
  Grid probe;
  const std::size_t stride = std::max<std::size_t>(1, grid.size() / 20);
  for (std::size_t i = 0; i < grid.size(); i += stride)
    probe.points.push_back(grid.points[i]);
  CompleteSystem system = complete_system(cfg.eq, basis, order, probe);
  return {std::move(seq), std::move(basis), std::move(system), std::move(grid),
          std::move(probe)};
}

std::string coeff_tag(bool coeff_i) { return coeff_i ? "i" : "1"; }

int cmd_basis(const RunConfig& cfg, const fs::path& out_dir, std::ostream& out) {
  BasisArtifacts art = build_artifacts(cfg, cfg.grid_n, cfg.order, cfg.quad_tol);
  const int N = cfg.order;

  const GridEvaluation table = basis_on_grid(art.basis, art.grid);

  // member values on the grid reuse the tabulated powers
  RealFieldHandle multiplier;
  switch (cfg.eq.kind()) {
    case EquationDescriptor::Kind::schrodinger:
      multiplier = RealFieldHandle::constant(1.0);
      break;
    case EquationDescriptor::Kind::conductivity: {
      const RealFieldHandle f = cfg.weight.f();
      multiplier = RealFieldHandle([f](Point z) { return 1.0 / f(z); });
      break;
    }
    case EquationDescriptor::Kind::div_p_grad_plus_q: {
      const RealFieldHandle p = cfg.eq.p();
      multiplier =
          RealFieldHandle([p](Point z) { return 1.0 / std::sqrt(p(z)); });
      break;
    }
  }

  std::string csv;
  csv += "x,y";
  for (int n = 0; n <= N; ++n)
    for (bool ci : {false, true}) {
      csv += ",re_Z" + std::to_string(n) + "_" + coeff_tag(ci);
      csv += ",im_Z" + std::to_string(n) + "_" + coeff_tag(ci);
    }
  for (std::size_t k = 0; k < art.system.members.size(); ++k)
    csv += ",u_" + std::to_string(k);
  csv += "\n";
  for (std::size_t i = 0; i < art.grid.size(); ++i) {
    if (!table.values[i]) continue;
    const auto& v = *table.values[i];
    const Point z = art.grid.points[i];
    csv += fmt17(z.x) + "," + fmt17(z.y);
    for (int n = 0; n <= N; ++n) {
      csv += "," + fmt17(v.coeff_one[n].real()) + "," +
             fmt17(v.coeff_one[n].imag());
      csv += "," + fmt17(v.coeff_i[n].real()) + "," + fmt17(v.coeff_i[n].imag());
    }
    const double mult = multiplier(z);
    for (const auto& m : art.system.members) {
      const Complex zv = m.coeff_i ? v.coeff_i[m.order] : v.coeff_one[m.order];
      csv += "," + fmt17(mult * zv.real());
    }
    csv += "\n";
  }
  write_file(out_dir / "basis.csv", csv);

  ordered_json manifest;
  manifest["coords"] = cfg.coords.name;
  ordered_json jparams = ordered_json::object();
  for (const auto& [name, value] : cfg.weight.params().entries())
    jparams[name] = value;
  manifest["weight"] = {{"U", cfg.weight.bigU().print()},
                        {"V", cfg.weight.bigV().print()},
                        {"params", jparams}};
  manifest["center"] = {cfg.center.x, cfg.center.y};
  manifest["order"] = N;
  manifest["quad_tol"] = cfg.quad_tol;
  manifest["grid_points"] = art.grid.size();
  ordered_json columns = ordered_json::array();
  columns.push_back({{"column", "x"}, {"kind", "coordinate"}});
  columns.push_back({{"column", "y"}, {"kind", "coordinate"}});
  for (int n = 0; n <= N; ++n)
    for (bool ci : {false, true})
      for (const char* part : {"re", "im"})
        columns.push_back({{"column", std::string(part) + "_Z" +
                                          std::to_string(n) + "_" + coeff_tag(ci)},
                           {"kind", "formal_power"},
                           {"order", n},
                           {"coeff", coeff_tag(ci)},
                           {"part", part}});
  Grid residual_grid;
  {
    const std::size_t stride = std::max<std::size_t>(1, art.grid.size() / 25);
    for (std::size_t i = 0; i < art.grid.size(); i += stride)
      residual_grid.points.push_back(art.grid.points[i]);
  }
  for (std::size_t k = 0; k < art.system.members.size(); ++k) {
    const auto& m = art.system.members[k];
    const ResidualReport rep =
        equation_residual(cfg.eq, m.fn, residual_grid);
    columns.push_back({{"column", "u_" + std::to_string(k)},
                       {"kind", "system_member"},
                       {"order", m.order},
                       {"coeff", coeff_tag(m.coeff_i)},
                       {"equation_residual_max", rep.max_abs},
                       {"equation_residual_mean", rep.mean_abs}});
  }
  manifest["columns"] = columns;
  ordered_json dropped = ordered_json::array();
  for (const auto& [n, ci] : art.system.dropped)
    dropped.push_back({{"order", n}, {"coeff", coeff_tag(ci)}});
  manifest["dropped_members"] = dropped;
  ordered_json failures = ordered_json::array();
  for (const auto& [idx, message] : table.failures)
    failures.push_back({{"point_index", idx}, {"error", message}});
  manifest["failures"] = failures;
  write_file(out_dir / "basis_manifest.json", manifest.dump(2) + "\n");

  out << "basis: wrote " << art.grid.size() << " grid rows, "
      << art.system.members.size() << " members\n";
  return 0;
}

int cmd_solve(const RunConfig& cfg, const fs::path& out_dir, std::ostream& out) {
  if (!cfg.boundary_data)
    throw ConfigError("solve needs boundary_data in the config");
  const auto t0 = std::chrono::steady_clock::now();
  BasisArtifacts art = build_artifacts(cfg, cfg.grid_n, cfg.order, cfg.quad_tol);

  BoundaryValueProblem bvp{cfg.eq,          cfg.domain.boundary(),
                           *cfg.boundary_data, cfg.center,
                           art.grid,        cfg.exact_solution};
  const int M = cfg.collocation_points > 0
                    ? cfg.collocation_points
                    : 4 * static_cast<int>(art.system.size());
  const CollocationSolution sol = collocate(bvp, art.system, M);
  const auto t1 = std::chrono::steady_clock::now();

  ordered_json report;
  report["order"] = cfg.order;
  report["system_size"] = art.system.size();
  report["collocation_points"] = M;
  ordered_json coeffs = ordered_json::array();
  for (std::size_t k = 0; k < sol.coefficients.size(); ++k) {
    const auto& m = art.system.members[k];
    coeffs.push_back({{"order", m.order},
                      {"coeff", coeff_tag(m.coeff_i)},
                      {"value", sol.coefficients[k]}});
  }
  report["coefficients"] = coeffs;
  report["boundary_residual"] = sol.boundary_residual;
  if (sol.max_interior_error)
    report["max_interior_error"] = *sol.max_interior_error;
  report["singular_value_range"] = {{"max", sol.sigma_max},
                                    {"min", sol.sigma_min}};
  report["rank"] = sol.rank;
  report["runtime_ms"] =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  write_file(out_dir / "solution.json", report.dump(2) + "\n");

  std::string csv = "x,y,u\n";
  for (const Point& z : art.grid.points)
    csv += fmt17(z.x) + "," + fmt17(z.y) + "," +
           fmt17(evaluate_solution(sol, z)) + "\n";
  write_file(out_dir / "solution_field.csv", csv);

  out << "solve: boundary_residual " << sol.boundary_residual;
  if (sol.max_interior_error)
    out << ", max_interior_error " << *sol.max_interior_error;
  out << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const std::vector<VerifyCheck> checks = run_verification(cfg);
  bool all_passed = true;
  for (const VerifyCheck& c : checks) {
    all_passed = all_passed && c.passed;
    out << (c.passed ? "PASS " : "FAIL ") << c.name
        << " measured=" << fmt17(c.measured)
        << " threshold=" << fmt17(c.threshold);
    if (!c.note.empty()) out << " (" << c.note << ")";
    out << "\n";
  }
  out << (all_passed ? "verification passed" : "verification FAILED") << "\n";
  return all_passed ? 0 : 5;
}

int cmd_convergence(const RunConfig& cfg, const fs::path& out_dir,
                    std::ostream& out) {
  if (!cfg.boundary_data)
    throw ConfigError("convergence needs boundary_data in the config");
  if (!cfg.exact_solution)
    throw ConfigError("convergence needs exact_solution in the config");
  const std::vector<int> orders =
      cfg.orders.empty() ? std::vector<int>{2, 4, 6, 8, 10} : cfg.orders;

  BoundaryValueProblem bvp{cfg.eq,
                           cfg.domain.boundary(),
                           *cfg.boundary_data,
                           cfg.center,
                           cfg.domain.interior_grid(cfg.grid_n),
                           cfg.exact_solution};
  const auto rows = convergence_table(bvp, orders, cfg.quad_tol);

  std::string csv = "order,system_size,boundary_residual,max_interior_error,runtime_seconds\n";
  for (const auto& row : rows) {
    csv += std::to_string(row.order) + "," + std::to_string(row.system_size) +
           "," + fmt17(row.boundary_residual) + "," +
           fmt17(row.max_interior_error) + "," + fmt17(row.runtime_seconds) +
           "\n";
    out << "order " << row.order << ": max_interior_error "
        << row.max_interior_error << "\n";
  }
  write_file(out_dir / "convergence.csv", csv);
  return 0;
}

int classify_exception(const Error& e) {
  if (dynamic_cast<const RankCollapseError*>(&e)) return 4;
  if (dynamic_cast<const ConfigError*>(&e)) return 2;
  if (dynamic_cast<const ParseError*>(&e)) return 2;
  return 3;
}

}  // namespace

bool DomainSpec::contains(Point z) const {
  switch (type) {
    case Type::disk:
      return distance(z, center) <= radius;
    case Type::rectangle:
    case Type::strip:
      return z.x >= x0 && z.x <= x1 && z.y >= y0 && z.y <= y1;
  }
  return false;
}

Grid DomainSpec::interior_grid(int n, double margin) const {
  Grid box;
  Grid result;
  switch (type) {
    case Type::disk: {
      const double m = margin * std::max(1.0, radius);
      box = Grid::rectangular({center.x - radius, center.y - radius},
                              {center.x + radius, center.y + radius}, n, n);
      for (const Point& z : box.points)
        if (distance(z, center) <= radius - m) result.points.push_back(z);
      return result;
    }
    case Type::rectangle:
    case Type::strip: {
      const double mx = margin * std::max(1.0, x1 - x0);
      const double my = margin * std::max(1.0, y1 - y0);
      return Grid::rectangular({x0 + mx, y0 + my}, {x1 - mx, y1 - my}, n, n);
    }
  }
  return result;
}

BoundaryCurve DomainSpec::boundary() const {
  switch (type) {
    case Type::disk:
      return BoundaryCurve::circle(center, radius);
    case Type::rectangle:
      return BoundaryCurve::rectangle(x0, x1, y0, y1);
    case Type::strip:
      throw ConfigError("strip domains have no boundary curve; use basis or "
                        "verify commands");
  }
  throw ConfigError("bad domain");
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"formal powers for the main Vekua equation: complete solution "
               "systems and Dirichlet collocation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  int grid_override = 0;
  int order_override = -1;
  double tol_override = 0.0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")
        ->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--grid", grid_override, "interior grid resolution");
    sub->add_option("--order", order_override, "maximal formal-power order");
    sub->add_option("--tol", tol_override, "sweep quadrature tolerance");
  };
  CLI::App* basis = app.add_subcommand("basis", "evaluate the solution system on a grid");
  CLI::App* solve = app.add_subcommand("solve", "solve the Dirichlet problem by collocation");
  CLI::App* verify = app.add_subcommand("verify", "run the structural identity suites");
  CLI::App* convergence = app.add_subcommand("convergence", "error vs order table");
  for (CLI::App* sub : {basis, solve, verify, convergence}) add_common(sub);

  std::vector<const char*> argv;
  argv.push_back("vekua");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    RunConfig cfg = load_config(config_path);
    if (grid_override > 0) cfg.grid_n = grid_override;
    if (order_override >= 0) cfg.order = order_override;
    if (tol_override > 0) cfg.quad_tol = tol_override;

    const fs::path dir(out_dir);
    fs::create_directories(dir);
    if (basis->parsed()) return cmd_basis(cfg, dir, out);
    if (solve->parsed()) return cmd_solve(cfg, dir, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (convergence->parsed()) return cmd_convergence(cfg, dir, out);
    err << "error: no command\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return classify_exception(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace vekua::cli
