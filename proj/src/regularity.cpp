#include "fraclap/regularity.hpp"

#include <cmath>
#include <sstream>

#include "fraclap/csv.hpp"
#include "fraclap/error.hpp"
#include "fraclap/spaces.hpp"
#include "json.hpp"

namespace fraclap {
namespace {

GridFunction window_for(const GridPtr& grid, const CutoffSpec& window) {
  if (separation(window.outer, grid->omega()) > 0.0) return build_cutoff(grid, window);
  return build_window(grid, window);
}

double estimator_power(const GridFunction& v, double sigma, double p, Method method) {
  switch (method) {
    case Method::Gagliardo:
      return sobolev_power(v, sigma, p);
    case Method::Besov:
      return std::pow(besov_seminorm(v, sigma, p, p), p);
    case Method::Potential:
      return std::pow(potential_norm(v, FractionalParams::make(v.grid->dim(), 0.5 * sigma), p), p);
  }
  return 0.0;
}

double time_lp(const std::vector<double>& q, double tau, double p) {
  double acc = 0.0;
  for (double v : q) acc += tau * std::pow(std::abs(v), p);
  return std::pow(acc, 1.0 / p);
}

}  // namespace

GrowthVerdict classify_growth(std::span<const double> powers, double threshold) {
  require(powers.size() >= 3, ErrorKind::Precondition, "divergence test needs at least 3 refinement levels");
  GrowthVerdict v;
  for (std::size_t l = 0; l + 1 < powers.size(); ++l) v.increments.push_back(powers[l + 1] - powers[l]);
  bool divergent = true;
  for (double d : v.increments)
    if (!(d > 0.0)) divergent = false;
  for (std::size_t l = 0; l + 1 < v.increments.size(); ++l) {
    const double a = v.increments[l];
    const double b = v.increments[l + 1];
    const double r = (a > 0.0 && b > 0.0) ? std::log2(b / a) : -INFINITY;
    v.log2_ratios.push_back(r);
    if (!(r >= threshold)) divergent = false;
  }
  v.divergent = divergent;
  return v;
}

std::string to_string(Method method) {
  switch (method) {
    case Method::Gagliardo:
      return "gagliardo";
    case Method::Besov:
      return "besov";
    case Method::Potential:
      return "potential";
  }
  return "?";
}

Method method_from_string(const std::string& name) {
  if (name == "gagliardo") return Method::Gagliardo;
  if (name == "besov") return Method::Besov;
  if (name == "potential") return Method::Potential;
  fail(ErrorKind::InvalidArgument, "unknown method '" + name + "' (gagliardo, besov, potential)");
}

std::vector<double> default_sweep(Method method) {
  std::vector<double> out;
  for (int k = 1; k <= 19; ++k) {
    if (method == Method::Besov && k == 10) continue;
    out.push_back(k / 10.0);
  }
  return out;
}

double sigma_star_from_verdicts(const std::vector<double>& sweep, const std::vector<bool>& divergent) {
  require(!sweep.empty() && sweep.size() == divergent.size(), ErrorKind::LengthMismatch, "sweep/verdict mismatch");
  std::size_t first = sweep.size();
  for (std::size_t k = 0; k < sweep.size(); ++k)
    if (divergent[k]) {
      first = k;
      break;
    }
  if (first == sweep.size()) return sweep.back();
  std::size_t last_convergent = sweep.size();
  for (std::size_t k = sweep.size(); k-- > 0;)
    if (!divergent[k]) {
      last_convergent = k;
      break;
    }
  if (last_convergent == sweep.size()) return sweep.front();
  if (last_convergent < first) return 0.5 * (sweep[last_convergent] + sweep[first]);
  // A single flip right after the first divergence: bracket it.
  if (last_convergent == first + 1) return 0.5 * (sweep[first] + sweep[last_convergent]);
  std::ostringstream os;
  os << "non-monotone verdicts: divergent at sigma=" << sweep[first] << " but convergent again at sigma="
     << sweep[last_convergent];
  fail(ErrorKind::Inconclusive, os.str());
}

RegularityEstimate estimate_local_exponent(const std::vector<GridFunction>& levels, double p,
                                           const CutoffSpec& window, const std::vector<double>& sweep,
                                           Method method, double threshold) {
  require(levels.size() >= 3, ErrorKind::Precondition, "need at least 3 refinement levels");
  require(!sweep.empty(), ErrorKind::InvalidArgument, "empty sigma sweep");
  for (std::size_t k = 0; k < sweep.size(); ++k) {
    require(sweep[k] > 0.0 && sweep[k] < 2.0, ErrorKind::Domain, "sweep values must lie in (0,2)");
    require(k == 0 || sweep[k] > sweep[k - 1], ErrorKind::InvalidArgument, "sweep must ascend");
  }

  RegularityEstimate est;
  est.region = window.inner.describe();
  est.p = p;
  est.method = method;
  est.sweep = sweep;
  for (const auto& u : levels) {
    const GridFunction eta = window_for(u.grid, window);
    const GridFunction v = multiply(u, eta);
    est.h.push_back(u.grid->h());
    std::vector<double> row;
    for (double sigma : sweep) row.push_back(estimator_power(v, sigma, p, method));
    est.values.push_back(std::move(row));
  }

  const std::size_t windows = levels.size() - 2;
  est.window_verdicts.assign(windows, std::vector<bool>(sweep.size(), false));
  est.verdicts.assign(sweep.size(), true);
  for (std::size_t k = 0; k < sweep.size(); ++k)
    for (std::size_t w = 0; w < windows; ++w) {
      const double trio[3] = {est.values[w][k], est.values[w + 1][k], est.values[w + 2][k]};
      const bool div = classify_growth(trio, threshold).divergent;
      est.window_verdicts[w][k] = div;
      if (!div) est.verdicts[k] = false;
    }
  est.sigma_star = sigma_star_from_verdicts(sweep, est.verdicts);
  return est;
}

std::string RegularityEstimate::to_json() const {
  nlohmann::ordered_json j;
  j["region"] = region;
  j["p"] = p;
  j["method"] = to_string(method);
  j["sweep"] = sweep;
  j["h"] = h;
  j["values"] = values;
  j["verdicts"] = window_verdicts;
  j["divergent"] = verdicts;
  j["sigma_star"] = sigma_star;
  return j.dump(2);
}

ParabolicRegularityReport parabolic_regularity_report(const std::vector<Trajectory>& levels, double p,
                                                      const CutoffSpec& window, double threshold) {
  require(!levels.empty(), ErrorKind::Precondition, "need at least one trajectory");
  const Trajectory& fine = levels.back();
  for (const auto& tr : levels)
    require(tr.steps == fine.steps && tr.horizon == fine.horizon, ErrorKind::InvalidArgument,
            "trajectories must share horizon and step count");
  const double s = fine.params.s;
  ParabolicRegularityReport rep;
  rep.p = p;
  rep.sigma = 2.0 * s;
  const bool half = std::abs(s - 0.5) < 1e-12;
  if (p >= 2.0)
    rep.estimator = "sobolev";
  else
    rep.estimator = half ? "w1p" : "besov";

  std::vector<GridFunction> etas;
  for (const auto& tr : levels) etas.push_back(window_for(tr.grid, window));

  auto seminorm_power = [&](const GridFunction& v) {
    if (rep.estimator == "besov") return std::pow(besov_seminorm(v, rep.sigma, p, 2.0), p);
    if (rep.estimator == "w1p") return sobolev_power(v, 1.0, p);
    return sobolev_power(v, rep.sigma, p);
  };

  std::vector<double> ut, pot, semi;
  for (int k = 1; k <= fine.steps; ++k) {
    SliceRow row;
    row.k = k;
    row.t = k * fine.tau;
    std::vector<double> dudt(fine.u[k].size());
    for (std::size_t i = 0; i < dudt.size(); ++i) dudt[i] = (fine.u[k][i] - fine.u[k - 1][i]) / fine.tau;
    row.ut_norm = lp_norm(extend_by_zero(dudt, fine.grid), p);
    std::vector<double> powers;
    for (std::size_t l = 0; l < levels.size(); ++l) {
      const GridFunction v = multiply(levels[l].snapshot(k), etas[l]);
      powers.push_back(seminorm_power(v));
      row.seminorm.push_back(std::pow(powers.back(), 1.0 / p));
      if (l + 1 == levels.size()) row.potential = potential_norm(v, fine.params, p);
    }
    if (powers.size() >= 3) {
      for (std::size_t w = 0; w + 2 < powers.size(); ++w) {
        const double trio[3] = {powers[w], powers[w + 1], powers[w + 2]};
        if (classify_growth(trio, threshold).divergent) row.convergent = false;
      }
    }
    if (!row.convergent) rep.stable = false;
    ut.push_back(row.ut_norm);
    pot.push_back(row.potential);
    semi.push_back(row.seminorm.back());
    rep.rows.push_back(std::move(row));
  }
  rep.ut_time_lp = time_lp(ut, fine.tau, p);
  rep.potential_time_lp = time_lp(pot, fine.tau, p);
  rep.seminorm_time_lp = time_lp(semi, fine.tau, p);
  return rep;
}

std::string ParabolicRegularityReport::csv() const {
  std::ostringstream os;
  os << "k,t,ut_norm,potential";
  const std::size_t nl = rows.empty() ? 0 : rows.front().seminorm.size();
  for (std::size_t l = 0; l < nl; ++l) os << ",seminorm_level" << l;
  os << ",convergent\n";
  for (const auto& r : rows) {
    os << r.k << ',' << csv::num(r.t) << ',' << csv::num(r.ut_norm) << ',' << csv::num(r.potential);
    for (double v : r.seminorm) os << ',' << csv::num(v);
    os << ',' << (r.convergent ? 1 : 0) << '\n';
  }
  return os.str();
}

double time_derivative_l2_squared(const Trajectory& traj) {
  const double vol = traj.grid->cell_volume();
  double acc = 0.0;
  for (std::size_t k = 1; k < traj.u.size(); ++k) {
    double sq = 0.0;
    for (std::size_t i = 0; i < traj.u[k].size(); ++i) {
      const double d = (traj.u[k][i] - traj.u[k - 1][i]) / traj.tau;
      sq += d * d;
    }
    acc += traj.tau * sq * vol;
  }
  return acc;
}

}  // namespace fraclap
