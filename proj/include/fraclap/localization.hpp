#pragma once

#include <optional>

#include "fraclap/grid.hpp"
#include "fraclap/operator.hpp"

namespace fraclap {

/// I_s(u, eta)(x) = C int (u(x)-u(y)) (eta(x)-eta(y)) |x-y|^{-N-2s} dy.
/// Far field: the same hat weights as the operator applied to the double
/// difference, with the exact kernel mass beyond the box. Near field: the
/// Taylor term 2 kappa grad u . grad eta with central differences.
GridFunction remainder_is(const GridFunction& u, const GridFunction& eta, const FractionalParams& params);

/// max over box nodes of |(-Delta)^s(u eta) - eta (-Delta)^s u - u (-Delta)^s eta + I_s(u, eta)|.
double product_rule_residual(const GridFunction& u, const GridFunction& eta, const FractionalParams& params);

struct LocalizedRhs {
  /// F = eta f + u (-Delta)^s eta - I_s(u, eta)
  GridFunction rhs;
  /// max |(-Delta)^s(u eta) - F| over the box
  double mismatch = 0.0;
  /// product-rule residual plus the discrete equation residual of u, weighted by eta
  double bound = 0.0;
  bool within_bound = true;
};

LocalizedRhs localized_rhs(const GridFunction& u, const GridFunction& eta, const GridFunction& f,
                           const FractionalParams& params);

struct GBoundReport {
  double g_norm = 0.0;
  double sobolev_norm_omega2 = 0.0;
  double lp_norm_omega = 0.0;
  /// g_norm / (sobolev_norm_omega2 + lp_norm_omega); 0 when u = 0.
  double ratio = 0.0;
  /// Canonical region between the cut-off support and omega2.
  Region omega1;
};

/// g = u (-Delta)^s eta - I_s(u, eta), compared against ||u||_{W^{s,p}(omega2)} + ||u||_{L^p(omega)}.
GBoundReport g_bound_monitor(const GridFunction& u, const GridFunction& eta, const CutoffSpec& spec,
                             const FractionalParams& params, const Region& omega2, double p);

/// Region halfway between `outer` and `omega2` (same shape as outer).
Region midpoint_dilation(const Region& outer, const Region& omega2);

}  // namespace fraclap
