#include "fraclap/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "fraclap/csv.hpp"
#include "fraclap/elliptic.hpp"
#include "fraclap/error.hpp"
#include "fraclap/localization.hpp"
#include "fraclap/parabolic.hpp"
#include "fraclap/regularity.hpp"
#include "fraclap/spaces.hpp"
#include "fraclap/special.hpp"
#include "json.hpp"

namespace fraclap {
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

class Context {
 public:
  Context(const Config& cfg, fs::path out, std::string name) : cfg(cfg), out_(std::move(out)) {
    result.experiment = std::move(name);
    fs::create_directories(out_);
    manifest["experiment"] = result.experiment;
    manifest["version"] = FRACLAP_VERSION;
  }

  fs::path file(const std::string& name) {
    result.files.push_back(name);
    return out_ / name;
  }

  csv::Writer writer(const std::string& name, const std::vector<std::string>& header) {
    return csv::Writer(file(name), header);
  }

  void write_text(const std::string& name, const std::string& text) {
    std::ofstream os(file(name));
    require(static_cast<bool>(os), ErrorKind::Io, "cannot write " + (out_ / name).string());
    os << text;
  }

  void check(const std::string& name, double value, const std::string& relation, double threshold) {
    bool pass = false;
    if (relation == "<=") pass = value <= threshold;
    else if (relation == ">=") pass = value >= threshold;
    else if (relation == "<") pass = value < threshold;
    else if (relation == ">") pass = value > threshold;
    result.checks.push_back({name, value, relation, threshold, pass});
  }

  ExperimentResult finish() {
    manifest["config"] = cfg.dump();
    {
      csv::Writer w = writer("checks.csv", {"check", "value", "relation", "threshold", "pass"});
      for (const auto& c : result.checks) {
        w.cell(c.name).cell(c.value).cell(c.relation).cell(c.threshold).cell(c.pass ? 1 : 0);
        w.end_row();
      }
    }
    write_text("manifest.json", manifest.dump(2) + "\n");
    return result;
  }

  const Config& cfg;
  json manifest;
  ExperimentResult result;

 private:
  fs::path out_;
};

int read_dim(const Config& cfg) {
  const int dim = cfg.get_int("problem.dim", 1);
  require(dim == 1 || dim == 2, ErrorKind::InvalidArgument, "problem.dim must be 1 or 2");
  return dim;
}

Region read_omega(const Config& cfg, int dim, const Region& fallback) {
  return cfg.has_section("omega") ? Region::from_config(cfg.section("omega"), dim) : fallback;
}

Region unit_ball(int dim) { return Region::ball(dim, {0.0, 0.0}, 1.0); }

Region bounds_region(const std::vector<double>& b, int dim, const std::string& key) {
  if (dim == 1) {
    require(b.size() == 2, ErrorKind::Parse, key + ": expected lo,hi");
    return Region::interval(b[0], b[1]);
  }
  if (b.size() == 2) return Region::box(2, {b[0], b[0]}, {b[1], b[1]});
  require(b.size() == 4, ErrorKind::Parse, key + ": expected lo,hi[,lo,hi]");
  return Region::box(2, {b[0], b[2]}, {b[1], b[3]});
}

Region read_bounds(const Config& cfg, const std::string& key, int dim, const std::vector<double>& fallback) {
  return bounds_region(cfg.get_doubles(key, fallback), dim, key);
}

CutoffSpec read_window(const Config& cfg, const std::string& sec, int dim, const std::vector<double>& inner,
                       const std::vector<double>& outer) {
  CutoffSpec spec;
  spec.inner = read_bounds(cfg, sec + ".inner", dim, inner);
  spec.outer = read_bounds(cfg, sec + ".outer", dim, outer);
  spec.order = cfg.get_int(sec + ".order", 3);
  return spec;
}

std::pair<double, double> read_box(const Config& cfg, std::vector<double> fallback) {
  const auto b = cfg.get_doubles("grid.box", fallback);
  require(b.size() == 2, ErrorKind::Parse, "grid.box: expected lo,hi");
  return {b[0], b[1]};
}

/// Source profile from the [source] section: profile name plus numeric options.
GridFunction read_source(const Config& cfg, const GridPtr& grid, const std::string& fallback,
                         std::map<std::string, double> options = {}) {
  const std::string name = cfg.get_string("source.profile", fallback);
  for (const auto& [k, v] : cfg.section("source"))
    if (k != "profile" && k != "csv") options[k] = cfg.get_double("source." + k);
  if (cfg.has("source.csv")) return load_profile_csv(grid, cfg.get_string("source.csv"));
  return make_profile(grid, name, options);
}

json region_json(const Region& r) {
  json j;
  for (const auto& [k, v] : r.to_config()) j[k] = v;
  return j;
}

json window_json(const CutoffSpec& w) {
  json j;
  j["inner"] = region_json(w.inner);
  j["outer"] = region_json(w.outer);
  j["order"] = w.order;
  return j;
}

double omega_lp(const GridPtr& grid, const std::vector<double>& v, double p) {
  return lp_norm(extend_by_zero(v, grid), p);
}

void write_profile(csv::Writer& w, const Grid& grid, std::size_t node) {
  const Point x = grid.coord(node);
  w.cell(x[0]);
  if (grid.dim() == 2) w.cell(x[1]);
}

std::vector<std::string> coord_header(int dim, std::initializer_list<std::string> rest) {
  std::vector<std::string> h = {"x"};
  if (dim == 2) h.push_back("y");
  h.insert(h.end(), rest);
  return h;
}

// ---------------------------------------------------------------------------

void run_getoor(Context& ctx) {
  const Config& cfg = ctx.cfg;
  const int dim = read_dim(cfg);
  const double s = cfg.get_double("problem.s", 0.5);
  const auto levels = cfg.get_ints("grid.levels", {129, 257, 513});
  const auto [lo, hi] = read_box(cfg, {-2.0, 2.0});
  const Region omega = read_omega(cfg, dim, unit_ball(dim));
  require(omega.kind == Region::Kind::Ball, ErrorKind::InvalidArgument, "getoor needs a ball domain");
  const double g = getoor_constant(dim, s);
  const double r = omega.radius;

  ctx.manifest["dim"] = dim;
  ctx.manifest["s"] = {s};
  ctx.manifest["n"] = levels;
  ctx.manifest["tau"] = nullptr;
  ctx.manifest["regions"] = {{"omega", region_json(omega)}};

  auto errors = ctx.writer("errors.csv", {"n", "h", "omega_nodes", "max_rel_error_inner", "max_abs_error",
                                          "residual", "observed_order"});
  std::vector<double> rel_errors;
  GridFunction last_u, last_exact;
  for (int n : levels) {
    const GridPtr grid = Grid::build(dim, lo, hi, n, omega);
    const FractionalParams params = FractionalParams::make(dim, s);
    const GridFunction f = make_profile(grid, "constant");
    const GridFunction u = solve_dirichlet(f, params);
    const GridFunction exact = GridFunction::on_omega(grid, [&](const Point& x) {
      double d2 = 0.0;
      for (int a = 0; a < dim; ++a) d2 += (x[a] - omega.center[a]) * (x[a] - omega.center[a]);
      return std::pow(std::max(r * r - d2, 0.0), s) / g;
    });
    double rel = 0.0, abs_err = 0.0;
    for (std::size_t node : grid->omega_nodes()) {
      const double e = std::abs(u.values[node] - exact.values[node]);
      abs_err = std::max(abs_err, e);
      if (grid->rho()[node] > 0.5 * r) rel = std::max(rel, e / exact.values[node]);
    }
    const double res = residual_check(u, f, params);
    const double order = rel_errors.empty() ? NAN : std::log2(rel_errors.back() / rel);
    rel_errors.push_back(rel);
    errors.cell(n).cell(grid->h()).cell(grid->omega_count()).cell(rel).cell(abs_err).cell(res).cell(order);
    errors.end_row();
    last_u = u;
    last_exact = exact;
  }

  auto sol = ctx.writer("solution.csv", coord_header(dim, {"u", "exact"}));
  for (std::size_t node : last_u.grid->omega_nodes()) {
    write_profile(sol, *last_u.grid, node);
    sol.cell(last_u.values[node]).cell(last_exact.values[node]);
    sol.end_row();
  }

  bool decreasing = true;
  for (std::size_t k = 1; k < rel_errors.size(); ++k) decreasing = decreasing && rel_errors[k] < rel_errors[k - 1];
  ctx.check("max_rel_error_inner_finest", rel_errors.back(), "<=", cfg.get_double("check.max_rel_error", 0.02));
  ctx.check("errors_decreasing", decreasing ? 1.0 : 0.0, ">=", 1.0);
}

void run_symbol(Context& ctx) {
  const Config& cfg = ctx.cfg;
  const auto svals = cfg.get_doubles("problem.s", {0.3, 0.5, 0.7});
  const auto kvals = cfg.get_doubles("symbol.k", {1.0, 2.0, 4.0});
  const auto hvals = cfg.get_doubles("symbol.h", {0.04, 0.02, 0.01, 0.005});
  const double center = cfg.get_double("window.center", std::numbers::pi / 8);
  const double flat = cfg.get_double("window.flat", 8.0);
  const double support = cfg.get_double("window.support", 20.0);
  // Box and domain are centred on the evaluation point, so it is a node at every h
  // as long as the box half-width is a multiple of h.
  const double half = cfg.get_double("omega.half_width", 21.0);
  const double box_half = cfg.get_double("grid.half_width", 32.0);
  require(half > support, ErrorKind::InvalidNesting, "symbol: window support must lie inside the domain");
  const Region omega = Region::interval(center - half, center + half);
  const double lo = center - box_half, hi = center + box_half;

  ctx.manifest["dim"] = 1;
  ctx.manifest["s"] = svals;
  std::vector<int> ns;
  for (double h : hvals) {
    const double cells = (hi - lo) / h;
    require(std::abs(cells - std::round(cells)) < 1e-9 && std::lround(cells) % 2 == 0, ErrorKind::InvalidArgument,
            "symbol: 2 * grid.half_width must be an even multiple of every h");
    ns.push_back(static_cast<int>(std::lround(cells)) + 1);
  }
  ctx.manifest["n"] = ns;
  ctx.manifest["tau"] = nullptr;
  ctx.manifest["regions"] = {{"omega", region_json(omega)},
                             {"window", {{"center", center}, {"flat", flat}, {"support", support}}}};

  auto w = ctx.writer("symbol.csv", {"s", "k", "h", "n", "x", "value", "symbol", "rel_error", "self_order"});
  double worst_error = 0.0;
  double worst_order = INFINITY;
  for (double s : svals) {
    const FractionalParams params = FractionalParams::make(1, s);
    for (double k : kvals) {
      std::vector<double> values;
      double rel = 0.0;
      for (int n : ns) {
        const GridPtr grid = Grid::build(1, lo, hi, n, omega);
        const GridFunction u = GridFunction::on_omega(
            grid, [&](const Point& x) { return std::sin(k * x[0]) * smooth_window(x[0] - center, flat, support); });
        const auto node = static_cast<std::size_t>(n / 2);
        const double x = grid->coord(node)[0];
        const double value = apply_at(u, params, node);
        const double symbol = std::pow(std::abs(k), 2.0 * s) * std::sin(k * x);
        rel = std::abs(value - symbol) / std::abs(symbol);
        values.push_back(value);
        double order = NAN;
        if (values.size() >= 3) {
          const std::size_t l = values.size() - 1;
          order = std::log2(std::abs(values[l - 1] - values[l - 2]) / std::abs(values[l] - values[l - 1]));
        }
        w.cell(s).cell(k).cell(grid->h()).cell(n).cell(x).cell(value).cell(symbol).cell(rel).cell(order);
        w.end_row();
        if (values.size() == ns.size() && values.size() >= 3) worst_order = std::min(worst_order, order);
      }
      worst_error = std::max(worst_error, rel);
    }
  }
  ctx.check("max_rel_error_finest", worst_error, "<=", cfg.get_double("check.max_rel_error", 0.01));
  if (ns.size() >= 3) ctx.check("min_self_convergence_order", worst_order, ">=", cfg.get_double("check.min_order", 1.5));
}

void run_product_rule(Context& ctx) {
  const Config& cfg = ctx.cfg;
  const int dim = read_dim(cfg);
  const auto svals = cfg.get_doubles("problem.s", {0.3, 0.5, 0.7});
  const auto levels = cfg.get_ints("grid.levels", dim == 1 ? std::vector<int>{129, 257, 513} : std::vector<int>{17, 33, 65});
  const auto [lo, hi] = read_box(cfg, {-2.0, 2.0});
  const Region omega = read_omega(cfg, dim, Region::box(dim, {-1.0, -1.0}, {1.0, 1.0}));
  const CutoffSpec window = read_window(cfg, "cutoff", dim, {-0.2, 0.3}, {-0.5, 0.6});
  const double bc = cfg.get_double("bump.center", 0.1);
  const double br = cfg.get_double("bump.radius", 0.6);
  const double bp = cfg.get_double("bump.power", 5.0);

  ctx.manifest["dim"] = dim;
  ctx.manifest["s"] = svals;
  ctx.manifest["n"] = levels;
  ctx.manifest["tau"] = nullptr;
  ctx.manifest["regions"] = {{"omega", region_json(omega)}, {"cutoff", window_json(window)}};

  auto w = ctx.writer("residuals.csv", {"s", "n", "h", "residual", "factor"});
  double worst_factor = INFINITY;
  for (double s : svals) {
    const FractionalParams params = FractionalParams::make(dim, s);
    double prev = NAN;
    for (int n : levels) {
      const GridPtr grid = Grid::build(dim, lo, hi, n, omega);
      const GridFunction u = make_profile(grid, "bump", {{"center", bc}, {"center_y", bc}, {"radius", br}, {"power", bp}});
      const GridFunction eta = build_cutoff(grid, window);
      const double res = product_rule_residual(u, eta, params);
      const double factor = prev / res;
      if (!std::isnan(prev)) worst_factor = std::min(worst_factor, factor);
      w.cell(s).cell(n).cell(grid->h()).cell(res).cell(factor);
      w.end_row();
      prev = res;
    }
  }
  ctx.check("min_reduction_factor", worst_factor, ">=", cfg.get_double("check.min_factor", 2.0));
}

void run_parabolic_energy(Context& ctx) {
  const Config& cfg = ctx.cfg;
  const int dim = read_dim(cfg);
  const double s = cfg.get_double("problem.s", 0.5);
  const int n = cfg.get_int("grid.n", 129);
  const auto [lo, hi] = read_box(cfg, {-2.0, 2.0});
  const Region omega = read_omega(cfg, dim, unit_ball(dim));
  const double horizon = cfg.get_double("time.horizon", 1.0);
  const auto steps = cfg.get_ints("time.steps", {64, 128});
  const double theta = cfg.get_double("time.theta", 1.0);
  const double slack = cfg.get_double("check.energy_slack", 0.05);
  const auto thetas = cfg.get_doubles("steady.thetas", {0.5, 1.0});
  const auto multipliers = cfg.get_doubles("steady.multipliers", {1.25, 1.5, 2.0});
  const double per_unit = cfg.get_double("steady.steps_per_unit", 20.0);
  const double tol = cfg.get_double("steady.tolerance", 1e-4);

  const GridPtr grid = Grid::build(dim, lo, hi, n, omega);
  const FractionalParams params = FractionalParams::make(dim, s);
  const OperatorMatrix a = OperatorMatrix::assemble(grid, params);
  const GridFunction profile = read_source(cfg, grid, "constant");
  const TimeSource f = TimeSource::constant(profile);

  std::vector<double> taus;
  for (int nt : steps) taus.push_back(horizon / nt);
  ctx.manifest["dim"] = dim;
  ctx.manifest["s"] = {s};
  ctx.manifest["n"] = {n};
  ctx.manifest["tau"] = taus;
  ctx.manifest["regions"] = {{"omega", region_json(omega)}};

  auto summary = ctx.writer("energy_summary.csv", {"steps", "tau", "theta", "total_dissipation", "sup_energy",
                                                   "total_source", "worst_ratio", "max_step_residual", "violated"});
  for (int nt : steps) {
    const Trajectory traj = solve_parabolic(f, horizon, nt, theta, a);
    const EnergyReport rep = energy_report(traj, f, a, slack);
    write_ledger_csv(rep, ctx.file("ledger_nt" + std::to_string(nt) + ".csv"));
    double max_res = 0.0;
    for (const auto& r : traj.records) max_res = std::max(max_res, r.residual);
    if (cfg.get_int("output.snapshots", 0) != 0)
      export_trajectory(traj, rep, ctx.file("trajectory_nt" + std::to_string(nt)));
    summary.cell(nt).cell(traj.tau).cell(theta).cell(rep.total_dissipation).cell(rep.sup_energy);
    summary.cell(rep.total_source).cell(rep.worst_ratio).cell(max_res).cell(rep.violated ? 1 : 0);
    summary.end_row();
    ctx.check("energy_ratio_nt" + std::to_string(nt), rep.worst_ratio, "<=", 1.0 + slack);
    ctx.check("step_residual_nt" + std::to_string(nt), max_res, "<=", 1e-10);
  }

  // Steady state: relaxation time from the smallest eigenvalue.
  const std::vector<double> rhs = restrict_to_omega(profile);
  const std::vector<double> u_inf = DirichletSolver(a).solve(rhs);
  const double lambda1 = smallest_eigenvalue(a);
  double u_inf_max = 0.0;
  for (double v : u_inf) u_inf_max = std::max(u_inf_max, std::abs(v));
  const double relax = std::log(std::max(u_inf_max, tol) / tol) / lambda1;
  ctx.manifest["relaxation_time"] = relax;
  ctx.manifest["lambda1"] = lambda1;

  auto steady = ctx.writer("steady_state.csv", {"theta", "multiplier", "T", "steps", "error"});
  for (double th : thetas) {
    double prev = INFINITY;
    bool monotone = true;
    double worst = 0.0;
    for (double mult : multipliers) {
      const double t_end = mult * relax;
      const int nt = std::max(2, static_cast<int>(std::ceil(per_unit * t_end)));
      const Trajectory traj = solve_parabolic(f, t_end, nt, th, a);
      double err = 0.0;
      for (std::size_t i = 0; i < u_inf.size(); ++i) err = std::max(err, std::abs(traj.u.back()[i] - u_inf[i]));
      steady.cell(th).cell(mult).cell(t_end).cell(nt).cell(err);
      steady.end_row();
      monotone = monotone && err < prev;
      prev = err;
      worst = std::max(worst, err);
    }
    ctx.check("steady_error_theta" + short_num(th), worst, "<=", tol);
    ctx.check("steady_monotone_theta" + short_num(th), monotone ? 1.0 : 0.0, ">=", 1.0);
  }
}

void run_semigroup(Context& ctx) {
  const Config& cfg = ctx.cfg;
  const int dim = read_dim(cfg);
  const double s = cfg.get_double("problem.s", 0.5);
  const int n = cfg.get_int("grid.n", 65);
  const auto [lo, hi] = read_box(cfg, {-2.0, 2.0});
  const Region omega = read_omega(cfg, dim, unit_ball(dim));
  const int samples = cfg.get_int("random.samples", 100);
  const auto seed = static_cast<std::uint64_t>(cfg.get_int("random.seed", 12345));
  const auto times = cfg.get_doubles("time.t", {0.1, 1.0});
  const int steps = cfg.get_int("time.steps", 20);
  const auto ps = cfg.get_doubles("norms.p", {1.0, 2.0, kInf});

  const GridPtr grid = Grid::build(dim, lo, hi, n, omega);
  const FractionalParams params = FractionalParams::make(dim, s);
  const OperatorMatrix a = OperatorMatrix::assemble(grid, params);
  const std::size_t m = a.order();

  std::vector<double> taus;
  for (double t : times) taus.push_back(t / steps);
  ctx.manifest["dim"] = dim;
  ctx.manifest["s"] = {s};
  ctx.manifest["n"] = {n};
  ctx.manifest["tau"] = taus;
  ctx.manifest["regions"] = {{"omega", region_json(omega)}};
  ctx.manifest["seed"] = seed;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<std::vector<double>> phis(static_cast<std::size_t>(samples), std::vector<double>(m));
  for (auto& phi : phis)
    for (double& v : phi) v = dist(rng);

  auto cw = ctx.writer("contraction.csv", {"t", "p", "max_ratio", "max_excess"});
  auto pw = ctx.writer("positivity.csv", {"t", "min_value"});
  double worst_excess = -INFINITY;
  double worst_min = INFINITY;
  for (double t : times) {
    const Semigroup sg(a, t / steps);
    std::vector<double> max_ratio(ps.size(), 0.0), max_excess(ps.size(), -INFINITY);
    double min_value = INFINITY;
    for (const auto& phi : phis) {
      const std::vector<double> out = sg.apply(phi, steps);
      for (std::size_t k = 0; k < ps.size(); ++k) {
        const double before = omega_lp(grid, phi, ps[k]);
        const double after = omega_lp(grid, out, ps[k]);
        max_ratio[k] = std::max(max_ratio[k], after / before);
        max_excess[k] = std::max(max_excess[k], after - before);
      }
      std::vector<double> pos(phi);
      for (double& v : pos) v = std::abs(v);
      for (double v : sg.apply(pos, steps)) min_value = std::min(min_value, v);
    }
    for (std::size_t k = 0; k < ps.size(); ++k) {
      cw.cell(t).cell(ps[k]).cell(max_ratio[k]).cell(max_excess[k]);
      cw.end_row();
      worst_excess = std::max(worst_excess, max_excess[k]);
    }
    pw.cell(t).cell(min_value);
    pw.end_row();
    worst_min = std::min(worst_min, min_value);
  }
  ctx.check("max_norm_excess", worst_excess, "<=", 1e-12);
  ctx.check("min_value_nonneg_datum", worst_min, ">=", -1e-12);
}

struct ProbeSetup {
  int dim;
  std::vector<double> svals;
  std::vector<int> levels;
  double lo, hi;
  Region omega;
  CutoffSpec interior, boundary;
  double p;
  Method method;
  std::vector<double> sweep;
  double threshold;
};

ProbeSetup read_probe(const Config& cfg, std::vector<double> default_s) {
  ProbeSetup ps;
  ps.dim = read_dim(cfg);
  ps.svals = cfg.get_doubles("problem.s", default_s);
  ps.levels = cfg.get_ints("grid.levels", {513, 1025, 2049, 4097});
  std::tie(ps.lo, ps.hi) = read_box(cfg, {-1.5, 1.5});
  ps.omega = read_omega(cfg, ps.dim, unit_ball(ps.dim));
  ps.interior = read_window(cfg, "interior", ps.dim, {-0.3, 0.3}, {-0.6, 0.6});
  ps.boundary = read_window(cfg, "boundary", ps.dim, {0.8, 1.2}, {0.6, 1.4});
  ps.p = cfg.get_double("probe.p", 2.0);
  ps.method = method_from_string(cfg.get_string("probe.method", "gagliardo"));
  ps.sweep = cfg.get_doubles("probe.sweep", default_sweep(ps.method));
  ps.threshold = cfg.get_double("probe.threshold", kDivergenceThreshold);
  return ps;
}

void probe_manifest(Context& ctx, const ProbeSetup& ps) {
  ctx.manifest["dim"] = ps.dim;
  ctx.manifest["s"] = ps.svals;
  ctx.manifest["n"] = ps.levels;
  ctx.manifest["tau"] = nullptr;
  ctx.manifest["regions"] = {{"omega", region_json(ps.omega)},
                             {"interior", window_json(ps.interior)},
                             {"boundary", window_json(ps.boundary)}};
}

/// Solves at every level and probes both windows; returns {interior, boundary} sigma*.
std::pair<double, double> probe_pair(Context& ctx, const ProbeSetup& ps, double s, const std::string& profile,
                                     std::map<std::string, double> options) {
  std::vector<GridFunction> us;
  for (int n : ps.levels) {
    const GridPtr grid = Grid::build(ps.dim, ps.lo, ps.hi, n, ps.omega);
    const FractionalParams params = FractionalParams::make(ps.dim, s);
    us.push_back(solve_dirichlet(read_source(ctx.cfg, grid, profile, options), params));
  }
  const std::string tag = "s" + short_num(s);
  const RegularityEstimate in = estimate_local_exponent(us, ps.p, ps.interior, ps.sweep, ps.method, ps.threshold);
  ctx.write_text("regularity_" + tag + "_interior.json", in.to_json() + "\n");
  const RegularityEstimate bd = estimate_local_exponent(us, ps.p, ps.boundary, ps.sweep, ps.method, ps.threshold);
  ctx.write_text("regularity_" + tag + "_boundary.json", bd.to_json() + "\n");
  return {in.sigma_star, bd.sigma_star};
}

void run_elliptic_regularity(Context& ctx) {
  const ProbeSetup ps = read_probe(ctx.cfg, {0.3, 0.5});
  probe_manifest(ctx, ps);
  const double margin = ctx.cfg.get_double("check.margin", 0.1);
  auto w = ctx.writer("summary.csv", {"s", "window", "sigma_star", "prediction"});
  for (double s : ps.svals) {
    const auto [in, bd] = probe_pair(ctx, ps, s, "jump", {{"at", 0.1}});
    w.cell(s).cell("interior").cell(in).cell(2.0 * s);
    w.end_row();
    w.cell(s).cell("boundary").cell(bd).cell(s + 0.5);
    w.end_row();
    const std::string tag = "_s" + short_num(s);
    ctx.check("interior_sigma_star" + tag, in, ">=", 2.0 * s - margin);
    ctx.check("boundary_sigma_star" + tag, bd, "<=", s + 0.5 + margin);
    ctx.check("boundary_below_interior" + tag, bd, "<", in);
  }
}

void run_regularity_sweep(Context& ctx) {
  const ProbeSetup ps = read_probe(ctx.cfg, {0.3, 0.5, 0.7});
  probe_manifest(ctx, ps);
  auto w = ctx.writer("sweep.csv", {"s", "method", "interior_sigma_star", "boundary_sigma_star"});
  for (double s : ps.svals) {
    const auto [in, bd] = probe_pair(ctx, ps, s, "constant", {});
    w.cell(s).cell(to_string(ps.method)).cell(in).cell(bd);
    w.end_row();
    ctx.check("boundary_below_interior_s" + short_num(s), bd, "<", in);
  }
}

void run_g_bound(Context& ctx) {
  const Config& cfg = ctx.cfg;
  const int dim = read_dim(cfg);
  const double s = cfg.get_double("problem.s", 0.5);
  const double p = cfg.get_double("monitor.p", 2.0);
  const auto levels = cfg.get_ints("grid.levels", dim == 1 ? std::vector<int>{129, 257, 513} : std::vector<int>{17, 33, 65});
  const auto [lo, hi] = read_box(cfg, {-2.0, 2.0});
  const Region omega = read_omega(cfg, dim, unit_ball(dim));
  CutoffSpec window = read_window(cfg, "cutoff", dim, {-0.3, 0.3}, {-0.5, 0.5});
  const Region omega2 = read_bounds(cfg, "cutoff.omega2", dim, {-0.8, 0.8});
  window.omega2 = omega2;

  ctx.manifest["dim"] = dim;
  ctx.manifest["s"] = {s};
  ctx.manifest["n"] = levels;
  ctx.manifest["tau"] = nullptr;
  ctx.manifest["regions"] = {{"omega", region_json(omega)}, {"cutoff", window_json(window)},
                             {"omega2", region_json(omega2)}};

  auto w = ctx.writer("g_bound.csv", {"s", "p", "h", "n", "inner", "outer", "omega1", "omega2", "g_norm",
                                      "sobolev_norm_omega2", "lp_norm_omega", "ratio", "change"});
  double prev = NAN;
  double worst_change = 0.0;
  for (int n : levels) {
    const GridPtr grid = Grid::build(dim, lo, hi, n, omega);
    const FractionalParams params = FractionalParams::make(dim, s);
    const GridFunction u = solve_dirichlet(read_source(cfg, grid, "constant"), params);
    const GridFunction eta = build_cutoff(grid, window);
    const GBoundReport rep = g_bound_monitor(u, eta, window, params, omega2, p);
    const double change = std::abs(rep.ratio / prev - 1.0);
    if (!std::isnan(prev)) worst_change = std::max(worst_change, change);
    w.cell(s).cell(p).cell(grid->h()).cell(n).cell(window.inner.describe()).cell(window.outer.describe());
    w.cell(rep.omega1.describe()).cell(omega2.describe()).cell(rep.g_norm).cell(rep.sobolev_norm_omega2);
    w.cell(rep.lp_norm_omega).cell(rep.ratio).cell(change);
    w.end_row();
    prev = rep.ratio;
  }
  ctx.check("max_relative_change", worst_change, "<=", cfg.get_double("check.max_change", 0.25));
}

void run_boundary_profile(Context& ctx) {
  const Config& cfg = ctx.cfg;
  const int dim = read_dim(cfg);
  const auto svals = cfg.get_doubles("problem.s", {0.3, 0.5, 0.7});
  const int n = cfg.get_int("grid.n", dim == 1 ? 257 : 49);
  const auto [lo, hi] = read_box(cfg, {-2.0, 2.0});
  const Region omega = read_omega(cfg, dim, unit_ball(dim));
  require(omega.kind == Region::Kind::Ball, ErrorKind::InvalidArgument, "boundary-profile needs a ball domain");

  ctx.manifest["dim"] = dim;
  ctx.manifest["s"] = svals;
  ctx.manifest["n"] = {n};
  ctx.manifest["tau"] = nullptr;
  ctx.manifest["regions"] = {{"omega", region_json(omega)}};

  auto summary = ctx.writer("ratio_bounds.csv", {"s", "min_ratio_inner_half", "max_ratio_inner_half",
                                                 "min_ratio_all", "max_ratio_all"});
  const GridPtr grid = Grid::build(dim, lo, hi, n, omega);
  for (double s : svals) {
    const FractionalParams params = FractionalParams::make(dim, s);
    const GridFunction u = solve_dirichlet(read_source(cfg, grid, "constant"), params);
    auto w = ctx.writer("profile_s" + short_num(s) + ".csv", coord_header(dim, {"rho", "u", "ratio"}));
    double mn = INFINITY, mx = 0.0, mn_all = INFINITY, mx_all = 0.0;
    for (std::size_t node : grid->omega_nodes()) {
      const double rho = grid->rho()[node];
      const double ratio = u.values[node] / std::pow(rho, s);
      write_profile(w, *grid, node);
      w.cell(rho).cell(u.values[node]).cell(ratio);
      w.end_row();
      mn_all = std::min(mn_all, ratio);
      mx_all = std::max(mx_all, ratio);
      if (rho >= 0.5 * omega.radius) {
        mn = std::min(mn, ratio);
        mx = std::max(mx, ratio);
      }
    }
    summary.cell(s).cell(mn).cell(mx).cell(mn_all).cell(mx_all);
    summary.end_row();
    ctx.check("min_ratio_s" + short_num(s), mn, ">=", 0.5);
    ctx.check("max_ratio_s" + short_num(s), mx, "<=", 2.0);
  }
}

struct Recipe {
  std::string name;
  std::function<void(Context&)> run;
  std::string defaults;
};

const std::vector<Recipe>& recipes() {
  static const std::vector<Recipe> list = {
      {"getoor", run_getoor,
       "# f = 1 on the unit ball; compares against (1-|x|^2)^s / Getoor constant\n"
       "experiment = getoor\n\n[problem]\ndim = 1\ns = 0.5\n\n[grid]\nbox = -2,2\nlevels = 129,257,513\n\n"
       "[omega]\nkind = ball\ncenter = 0\nradius = 1\n\n[check]\nmax_rel_error = 0.02\n"},
      {"symbol", run_symbol,
       "# (-Delta)^s of sin(kx) times a smooth window, at the window center\n"
       "experiment = symbol\n\n[problem]\ns = 0.3,0.5,0.7\n\n[symbol]\nk = 1,2,4\nh = 0.04,0.02,0.01,0.005\n\n"
       "[grid]\nhalf_width = 32\n\n[omega]\nhalf_width = 21\n\n"
       "[window]\ncenter = 0.39269908169872414\nflat = 8\nsupport = 20\n\n[check]\nmax_rel_error = 0.01\n"
       "min_order = 1.5\n"},
      {"elliptic-regularity", run_elliptic_regularity,
       "# jump source; interior and boundary exponent estimates\n"
       "experiment = elliptic-regularity\n\n[problem]\ndim = 1\ns = 0.3,0.5\n\n[grid]\nbox = -2,2\n"
       "levels = 513,1025,2049,4097\n\n[omega]\nkind = ball\ncenter = 0\nradius = 1\n\n[source]\nprofile = jump\n"
       "at = 0.1\n\n[interior]\ninner = -0.3,0.3\nouter = -0.6,0.6\n\n[boundary]\ninner = 0.8,1.2\n"
       "outer = 0.6,1.4\n\n[probe]\np = 2\nmethod = gagliardo\n"},
      {"parabolic-energy", run_parabolic_energy,
       "# energy ledger (theta = 1) and relaxation to the elliptic solution\n"
       "experiment = parabolic-energy\n\n[problem]\ndim = 1\ns = 0.5\n\n[grid]\nbox = -2,2\nn = 129\n\n"
       "[omega]\nkind = ball\ncenter = 0\nradius = 1\n\n[source]\nprofile = constant\nvalue = 1\n\n"
       "[time]\nhorizon = 1\nsteps = 64,128\ntheta = 1\n\n[steady]\nthetas = 0.5,1\nmultipliers = 1.25,1.5,2\n"
       "steps_per_unit = 20\ntolerance = 1e-4\n"},
      {"semigroup-contraction", run_semigroup,
       "# implicit-Euler semigroup on random data: L^p contraction and positivity\n"
       "experiment = semigroup-contraction\n\n[problem]\ndim = 1\ns = 0.5\n\n[grid]\nbox = -2,2\nn = 65\n\n"
       "[omega]\nkind = ball\ncenter = 0\nradius = 1\n\n[random]\nsamples = 100\nseed = 12345\n\n"
       "[time]\nt = 0.1,1.0\nsteps = 20\n"},
      {"product-rule", run_product_rule,
       "# residual of the cut-off product rule for a C^4 bump\n"
       "experiment = product-rule\n\n[problem]\ndim = 1\ns = 0.3,0.5,0.7\n\n[grid]\nbox = -2,2\n"
       "levels = 129,257,513\n\n[omega]\nkind = box\nbounds = -1,1\n\n[bump]\ncenter = 0.1\nradius = 0.6\n"
       "power = 5\n\n[cutoff]\ninner = -0.2,0.3\nouter = -0.5,0.6\n\n[check]\nmin_factor = 2\n"},
      {"g-bound", run_g_bound,
       "# empirical constant in the localization bound, f = 1\n"
       "experiment = g-bound\n\n[problem]\ndim = 1\ns = 0.5\n\n[grid]\nbox = -2,2\nlevels = 129,257,513\n\n"
       "[omega]\nkind = ball\ncenter = 0\nradius = 1\n\n[cutoff]\ninner = -0.3,0.3\nouter = -0.5,0.5\n"
       "omega2 = -0.8,0.8\n\n[monitor]\np = 2\n"},
      {"regularity-sweep", run_regularity_sweep,
       "# f = 1: interior versus boundary exponent for several s\n"
       "experiment = regularity-sweep\n\n[problem]\ndim = 1\ns = 0.3,0.5,0.7\n\n[grid]\nbox = -2,2\n"
       "levels = 513,1025,2049,4097\n\n[omega]\nkind = ball\ncenter = 0\nradius = 1\n\n[interior]\n"
       "inner = -0.3,0.3\nouter = -0.6,0.6\n\n[boundary]\ninner = 0.8,1.2\nouter = 0.6,1.4\n\n[probe]\np = 2\n"
       "method = gagliardo\n"},
      {"boundary-profile", run_boundary_profile,
       "# u / rho^s for f = 1 on a ball\n"
       "experiment = boundary-profile\n\n[problem]\ndim = 1\ns = 0.3,0.5,0.7\n\n[grid]\nbox = -2,2\nn = 257\n\n"
       "[omega]\nkind = ball\ncenter = 0\nradius = 1\n"},
  };
  return list;
}

const Recipe* find_recipe(const std::string& name) {
  const std::string key = name == "identity-check" ? "product-rule" : name;
  for (const auto& r : recipes())
    if (r.name == key) return &r;
  return nullptr;
}

}  // namespace

bool ExperimentResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& r : recipes()) out.push_back(r.name);
    return out;
  }();
  return names;
}

std::string default_config(const std::string& name) {
  const Recipe* r = find_recipe(name);
  require(r != nullptr, ErrorKind::InvalidArgument, "unknown experiment '" + name + "'");
  return r->defaults;
}

ExperimentResult run_experiment(const Config& config, const fs::path& out) {
  const std::string name = config.get_string("experiment");
  const Recipe* r = find_recipe(name);
  if (r == nullptr) fail(ErrorKind::Parse, "unknown experiment '" + name + "'; see 'list'");
  Context ctx(config, out, r->name);
  r->run(ctx);
  return ctx.finish();
}

double smooth_window(double r, double flat, double support) {
  const double t = (std::abs(r) - flat) / (support - flat);
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return 1.0 - a / (a + b);
}

}  // namespace fraclap
