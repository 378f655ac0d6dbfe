#include "fraclap/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fraclap/csv.hpp"
#include "fraclap/error.hpp"

namespace fraclap {
namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

Eigen::LLT<Eigen::MatrixXd> factor_shifted(const OperatorMatrix& a, double c) {
  Eigen::MatrixXd m = c * a.matrix();
  m.diagonal().array() += 1.0;
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) fail(ErrorKind::SingularMatrix, "I + c A is not positive definite");
  return llt;
}

std::vector<double> llt_solve(const Eigen::LLT<Eigen::MatrixXd>& llt, std::span<const double> b) {
  Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(b.size()));
  Eigen::VectorXd x = llt.solve(rhs);
  return {x.data(), x.data() + x.size()};
}

}  // namespace

TimeSource TimeSource::constant(GridFunction profile) {
  TimeSource src;
  src.grid_ = profile.grid;
  src.times_ = {0.0};
  src.frames_ = {restrict_to_omega(profile)};
  return src;
}

TimeSource TimeSource::separable(GridFunction profile, std::function<double(double)> factor) {
  TimeSource src = constant(std::move(profile));
  src.factor_ = std::move(factor);
  return src;
}

TimeSource TimeSource::frames(std::vector<double> times, std::vector<GridFunction> frames) {
  require(!frames.empty() && times.size() == frames.size(), ErrorKind::LengthMismatch,
          "need one time per source frame");
  require(std::is_sorted(times.begin(), times.end()), ErrorKind::InvalidArgument, "frame times must ascend");
  TimeSource src;
  src.grid_ = frames.front().grid;
  src.times_ = std::move(times);
  for (const auto& f : frames) {
    require(f.grid == src.grid_, ErrorKind::InvalidArgument, "frames live on different grids");
    src.frames_.push_back(restrict_to_omega(f));
  }
  return src;
}

std::vector<double> TimeSource::at(double t) const {
  std::vector<double> out;
  if (frames_.size() == 1 || t <= times_.front()) {
    out = frames_.front();
  } else if (t >= times_.back()) {
    out = frames_.back();
  } else {
    const auto hi = static_cast<std::size_t>(std::upper_bound(times_.begin(), times_.end(), t) - times_.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
    out.resize(frames_[lo].size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = (1.0 - w) * frames_[lo][k] + w * frames_[hi][k];
  }
  if (factor_) {
    const double c = factor_(t);
    for (double& v : out) v *= c;
  }
  return out;
}

bool TimeSource::is_zero() const {
  for (const auto& f : frames_)
    if (max_abs(f) != 0.0) return false;
  return true;
}

Trajectory solve_parabolic(const TimeSource& f, double horizon, int steps, double theta, const OperatorMatrix& a,
                           const std::vector<double>* initial) {
  require(theta >= 0.5 && theta <= 1.0, ErrorKind::InvalidArgument, "theta must lie in [1/2, 1]");
  require(steps >= 2, ErrorKind::InvalidArgument, "need at least 2 time steps");
  require(horizon > 0.0, ErrorKind::InvalidArgument, "time horizon must be positive");
  require(f.grid() == a.grid(), ErrorKind::InvalidArgument, "source lives on a different grid");
  const std::size_t m = a.order();

  Trajectory traj;
  traj.grid = a.grid();
  traj.params = a.params();
  traj.horizon = horizon;
  traj.steps = steps;
  traj.theta = theta;
  traj.tau = horizon / steps;
  const double tau = traj.tau;

  std::vector<double> u = initial ? *initial : std::vector<double>(m, 0.0);
  require(u.size() == m, ErrorKind::LengthMismatch, "initial datum length does not match omega");
  traj.u.push_back(u);
  traj.records.push_back({0, 0.0, 0.0});

  const auto llt = factor_shifted(a, tau * theta);
  std::vector<double> f_now = f.at(0.0);
  for (int k = 0; k < steps; ++k) {
    const double t_next = (k + 1) * tau;
    const std::vector<double> f_next = f.at(t_next);
    std::vector<double> rhs(m);
    if (theta < 1.0) {
      const std::vector<double> au = a.multiply(u);
      for (std::size_t i = 0; i < m; ++i)
        rhs[i] = u[i] + tau * ((1.0 - theta) * (f_now[i] - au[i]) + theta * f_next[i]);
    } else {
      for (std::size_t i = 0; i < m; ++i) rhs[i] = u[i] + tau * f_next[i];
    }
    std::vector<double> next = llt_solve(llt, rhs);

    const std::vector<double> an = a.multiply(next);
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) worst = std::max(worst, std::abs(next[i] + tau * theta * an[i] - rhs[i]));
    const double scale = max_abs(rhs);
    traj.records.push_back({k + 1, t_next, scale > 0.0 ? worst / scale : worst});

    traj.u.push_back(next);
    u = std::move(next);
    f_now = f_next;
  }
  return traj;
}

Trajectory solve_parabolic(const TimeSource& f, double horizon, int steps, double theta,
                           const FractionalParams& params, const GridPtr& grid) {
  const OperatorMatrix a = OperatorMatrix::assemble(grid, params);
  return solve_parabolic(f, horizon, steps, theta, a);
}

EnergyReport energy_report(const Trajectory& traj, const TimeSource& f, const OperatorMatrix& a, double slack) {
  const double vol = traj.grid->cell_volume();
  const double tau = traj.tau;
  EnergyReport rep;
  double dissipation = 0.0;
  double source = 0.0;
  std::vector<double> v_prev;
  for (std::size_t k = 0; k < traj.u.size(); ++k) {
    const double t = static_cast<double>(k) * tau;
    const double decay = std::exp(-t);
    std::vector<double> v = traj.u[k];
    for (double& x : v) x *= decay;
    if (k > 0) {
      double inc = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double d = (v[i] - v_prev[i]) / tau;
        inc += d * d;
      }
      dissipation += tau * inc * vol;
      std::vector<double> g = f.at(t);
      for (double& x : g) x *= decay;
      source += tau * dot(g, g) * vol;
    }
    const double energy = vol * (dot(v, a.multiply(v)) + dot(v, v));
    rep.rows.push_back({static_cast<int>(k), t, dissipation, energy, source});
    rep.sup_energy = std::max(rep.sup_energy, energy);
    if (source > 0.0) {
      const double ratio = (dissipation + energy) / source;
      rep.worst_ratio = std::max(rep.worst_ratio, ratio);
      if (ratio > 1.0 + slack) rep.violated = true;
    } else if (dissipation + energy > 0.0) {
      rep.violated = true;
    }
    v_prev = std::move(v);
  }
  rep.total_dissipation = dissipation;
  rep.total_source = source;
  return rep;
}

void write_ledger_csv(const EnergyReport& report, const std::filesystem::path& path) {
  csv::Writer w(path, {"k", "t", "dissipation", "energy", "source-norm"});
  for (const auto& r : report.rows) {
    w.cell(r.k).cell(r.t).cell(r.dissipation).cell(r.energy).cell(r.source);
    w.end_row();
  }
}

void export_trajectory(const Trajectory& traj, const EnergyReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const Grid& grid = *traj.grid;
  const auto& nodes = grid.omega_nodes();
  for (std::size_t k = 0; k < traj.u.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%05zu.csv", k);
    std::vector<std::string> header = {"x"};
    if (grid.dim() == 2) header.push_back("y");
    header.push_back("u");
    csv::Writer w(dir / name, header);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Point x = grid.coord(nodes[i]);
      w.cell(x[0]);
      if (grid.dim() == 2) w.cell(x[1]);
      w.cell(traj.u[k][i]);
      w.end_row();
    }
  }
  write_ledger_csv(report, dir / "ledger.csv");
}

Semigroup::Semigroup(const OperatorMatrix& a, double tau) : tau_(tau), llt_(factor_shifted(a, tau)) {
  require(tau > 0.0, ErrorKind::InvalidArgument, "time step must be positive");
}

std::vector<double> Semigroup::step(std::span<const double> phi) const { return llt_solve(llt_, phi); }

std::vector<double> Semigroup::apply(std::span<const double> phi, int steps) const {
  std::vector<double> u(phi.begin(), phi.end());
  for (int k = 0; k < steps; ++k) u = step(u);
  return u;
}

std::vector<double> semigroup_apply(std::span<const double> phi, double t, int steps, const OperatorMatrix& a) {
  require(t >= 0.0, ErrorKind::InvalidArgument, "semigroup time must be nonnegative");
  require(phi.size() == a.order(), ErrorKind::LengthMismatch, "datum length does not match omega");
  if (t == 0.0) return {phi.begin(), phi.end()};
  require(steps >= 1, ErrorKind::InvalidArgument, "need at least one step");
  return Semigroup(a, t / steps).apply(phi, steps);
}

double smallest_eigenvalue(const OperatorMatrix& a, int iterations) {
  Eigen::LLT<Eigen::MatrixXd> llt(a.matrix());
  if (llt.info() != Eigen::Success) fail(ErrorKind::SingularMatrix, "operator matrix is not positive definite");
  Eigen::VectorXd x = Eigen::VectorXd::Ones(a.matrix().rows());
  x.normalize();
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd y = llt.solve(x);
    const double next = 1.0 / x.dot(y);
    x = y.normalized();
    if (it > 0 && std::abs(next - lambda) <= 1e-14 * std::abs(next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return x.dot(a.matrix() * x);
}

}  // namespace fraclap
