#pragma once

#include <Eigen/Cholesky>
#include <filesystem>
#include <functional>
#include <vector>

#include "fraclap/grid.hpp"
#include "fraclap/operator.hpp"

namespace fraclap {

/// Time-dependent source f(t, x) on omega.
class TimeSource {
 public:
  /// f(t, x) = profile(x), independent of t.
  static TimeSource constant(GridFunction profile);
  /// f(t, x) = factor(t) * profile(x).
  static TimeSource separable(GridFunction profile, std::function<double(double)> factor);
  /// Frames at ascending times, linear in between and constant beyond the ends.
  static TimeSource frames(std::vector<double> times, std::vector<GridFunction> frames);

  /// Source at time t restricted to omega nodes.
  std::vector<double> at(double t) const;
  const GridPtr& grid() const { return grid_; }
  bool is_zero() const;

 private:
  GridPtr grid_;
  std::vector<double> times_;
  std::vector<std::vector<double>> frames_;
  std::function<double(double)> factor_;
};

struct StepRecord {
  int k = 0;
  double t = 0.0;
  /// ||A u_{k+1} - rhs|| relative residual of the linear solve producing u_k (0 at k = 0).
  double residual = 0.0;
};

/// Snapshots u_k at t_k = k tau, stored as omega vectors.
struct Trajectory {
  GridPtr grid;
  FractionalParams params;
  double horizon = 0.0;
  int steps = 0;
  double theta = 1.0;
  double tau = 0.0;
  std::vector<std::vector<double>> u;
  std::vector<StepRecord> records;

  GridFunction snapshot(int k) const { return extend_by_zero(u[static_cast<std::size_t>(k)], grid); }
};

/// theta-scheme for u_t + (-Delta)^s u = f with u(0) = u0 (zero by default):
/// (I + tau theta A) u_{k+1} = u_k + tau [(1-theta)(f_k - A u_k) + theta f_{k+1}].
Trajectory solve_parabolic(const TimeSource& f, double horizon, int steps, double theta, const OperatorMatrix& a,
                           const std::vector<double>* initial = nullptr);
Trajectory solve_parabolic(const TimeSource& f, double horizon, int steps, double theta,
                           const FractionalParams& params, const GridPtr& grid);

/// Energy bookkeeping in v = u e^{-t}, g = f e^{-t}, all norms over omega.
struct LedgerRow {
  int k = 0;
  double t = 0.0;
  /// sum_{j<k} tau ||(v_{j+1}-v_j)/tau||^2
  double dissipation = 0.0;
  /// B[v_k, v_k] + (v_k, v_k)
  double energy = 0.0;
  /// sum_{j<k} tau ||g_{j+1}||^2
  double source = 0.0;
};

struct EnergyReport {
  std::vector<LedgerRow> rows;
  double total_dissipation = 0.0;
  double sup_energy = 0.0;
  double total_source = 0.0;
  /// max_k (D_k + E_k) / S_k over steps with S_k > 0 (0 when f = 0).
  double worst_ratio = 0.0;
  bool violated = false;
};

EnergyReport energy_report(const Trajectory& traj, const TimeSource& f, const OperatorMatrix& a, double slack = 0.05);

/// Ledger CSV: k,t,dissipation,energy,source-norm.
void write_ledger_csv(const EnergyReport& report, const std::filesystem::path& path);
/// One CSV per snapshot (x[,y],u) named snapshot_<k>.csv, plus ledger.csv.
void export_trajectory(const Trajectory& traj, const EnergyReport& report, const std::filesystem::path& dir);

/// Implicit-Euler resolvent steps (I + tau A)^{-1} applied repeatedly.
class Semigroup {
 public:
  Semigroup(const OperatorMatrix& a, double tau);

  std::vector<double> step(std::span<const double> phi) const;
  std::vector<double> apply(std::span<const double> phi, int steps) const;
  double tau() const { return tau_; }

 private:
  double tau_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

/// T_t phi by `steps` implicit-Euler steps; t = 0 returns phi unchanged.
std::vector<double> semigroup_apply(std::span<const double> phi, double t, int steps, const OperatorMatrix& a);

/// Smallest eigenvalue of the Dirichlet operator (inverse iteration).
double smallest_eigenvalue(const OperatorMatrix& a, int iterations = 200);

}  // namespace fraclap
