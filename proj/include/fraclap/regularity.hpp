#pragma once

#include <span>
#include <string>
#include <vector>

#include "fraclap/grid.hpp"
#include "fraclap/operator.hpp"
#include "fraclap/parabolic.hpp"

namespace fraclap {

/// Growth threshold, in log2 units of the p-th power increments.
inline constexpr double kDivergenceThreshold = 0.05;

/// Divergence test on an estimator sampled at successive halvings of h.
/// `powers` are p-th powers V_l of the estimator. With increments
/// d_l = V_{l+1} - V_l the sequence is divergent when every increment is
/// positive and every ratio d_{l+1}/d_l has log2 >= threshold; a convergent
/// sequence has geometrically shrinking increments instead.
struct GrowthVerdict {
  bool divergent = false;
  std::vector<double> increments;
  std::vector<double> log2_ratios;
};
GrowthVerdict classify_growth(std::span<const double> powers, double threshold = kDivergenceThreshold);

enum class Method { Gagliardo, Besov, Potential };
std::string to_string(Method method);
Method method_from_string(const std::string& name);

/// {0.1, 0.2, ..., 1.9}, minus 1.0 for the Besov estimator.
std::vector<double> default_sweep(Method method = Method::Gagliardo);

struct RegularityEstimate {
  std::string region;
  double p = 2.0;
  Method method = Method::Gagliardo;
  std::vector<double> sweep;
  std::vector<double> h;
  /// values[level][sigma]: p-th power of the estimator for u * eta.
  std::vector<std::vector<double>> values;
  /// window_verdicts[w][sigma] from levels w, w+1, w+2.
  std::vector<std::vector<bool>> window_verdicts;
  /// Divergent at sigma when every window says so.
  std::vector<bool> verdicts;
  double sigma_star = 0.0;

  std::string to_json() const;
};

/// Estimates the largest sigma with u * eta in the space, from solutions
/// recomputed on refined grids (ascending n, at least 3). The window is a
/// cut-off (inside omega) or, if it reaches past omega, a box window.
/// sigma_star is the midpoint between the largest convergent and smallest
/// divergent sigma; the top (bottom) of the sweep if nothing (everything)
/// diverges. Throws Inconclusive when verdicts flip back more than one
/// sweep point past the first divergence.
RegularityEstimate estimate_local_exponent(const std::vector<GridFunction>& levels, double p,
                                           const CutoffSpec& window, const std::vector<double>& sweep,
                                           Method method = Method::Gagliardo,
                                           double threshold = kDivergenceThreshold);

/// sigma_star from a verdict row; exposed for tests.
double sigma_star_from_verdicts(const std::vector<double>& sweep, const std::vector<bool>& divergent);

struct SliceRow {
  int k = 0;
  double t = 0.0;
  /// ||(u_k - u_{k-1}) / tau||_p on the finest level
  double ut_norm = 0.0;
  /// potential norm of u_k eta on the finest level
  double potential = 0.0;
  /// Seminorm at sigma = 2s on every level
  std::vector<double> seminorm;
  bool convergent = true;
};

struct ParabolicRegularityReport {
  /// "sobolev", "besov" or "w1p"
  std::string estimator;
  double sigma = 0.0;
  double p = 2.0;
  std::vector<SliceRow> rows;
  /// (sum_k tau q_k^p)^{1/p} for each slice quantity, finest level
  double ut_time_lp = 0.0;
  double potential_time_lp = 0.0;
  double seminorm_time_lp = 0.0;
  /// All slices convergent under spatial refinement.
  bool stable = true;

  std::string csv() const;
};

/// Per-slice report over trajectories that share horizon and step count but
/// differ in spatial resolution (ascending). At sigma = 2s: Gagliardo-type
/// estimator when p >= 2, Besov B^{2s}_{p,2} when p < 2 and s != 1/2, W^{1,p}
/// when p < 2 and s = 1/2.
ParabolicRegularityReport parabolic_regularity_report(const std::vector<Trajectory>& levels, double p,
                                                      const CutoffSpec& window,
                                                      double threshold = kDivergenceThreshold);

/// sum_k tau ||(u_k - u_{k-1}) / tau||_2^2 over omega.
double time_derivative_l2_squared(const Trajectory& traj);

}  // namespace fraclap
