#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fraclap/grid.hpp"
#include "fraclap/operator.hpp"

namespace fraclap {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Riemann-sum L^p norm over the nodes of `region` (the whole box when absent);
/// p = kInf gives the max.
double lp_norm(const GridFunction& u, double p, const std::optional<Region>& region = std::nullopt);

/// Gagliardo W^{sigma,p} seminorm, sigma in (0,1): double Riemann sum over node
/// pairs inside the region with the diagonal left out. Pairs at distance h use
/// the kernel at that distance (cell midpoint rule).
double gagliardo_seminorm(const GridFunction& u, double sigma, double p,
                          const std::optional<Region>& region = std::nullopt);

/// p-th power of the Sobolev-type estimator used for sigma in (0,2):
///   sigma < 1: Gagliardo double sum;
///   sigma = 1: sum over axes of ||D_a u||_p^p;
///   sigma > 1: sum over axes of ||D_a u||_p^p + |D_a u|^p_{sigma-1,p},
/// where D_a is the forward difference quotient.
double sobolev_power(const GridFunction& u, double sigma, double p,
                     const std::optional<Region>& region = std::nullopt);
double sobolev_seminorm(const GridFunction& u, double sigma, double p,
                        const std::optional<Region>& region = std::nullopt);

/// Besov B^sigma_{p,q} seminorm for sigma in (0,1) u (1,2) over all lattice
/// shifts up to the box width, plus the exact tail where the shifted copies no
/// longer overlap. sigma > 1 uses second differences; q = kInf takes the sup.
double besov_seminorm(const GridFunction& u, double sigma, double p, double q);

/// ||u||_p + ||(-Delta)^s u||_p over the box.
double potential_norm(const GridFunction& u, const FractionalParams& params, double p);

struct NormReport {
  std::string region;
  double sigma = 0.0;
  double p = 2.0;
  double q = 2.0;
  double h = 0.0;
  double seminorm = 0.0;
  double norm = 0.0;

  static std::string csv_header();
  std::string csv_row() const;
};

/// Seminorm from sobolev_seminorm, full norm (||u||_p^p + |u|^p)^{1/p}.
NormReport sobolev_report(const GridFunction& u, double sigma, double p,
                          const std::optional<Region>& region = std::nullopt);
/// Seminorm from besov_seminorm, full norm ||u||_p + |u|_{B}.
NormReport besov_report(const GridFunction& u, double sigma, double p, double q);

}  // namespace fraclap
