#pragma once

namespace fraclap {

/// Gamma function via the Lanczos approximation (g = 7, 9 terms) with the
/// reflection formula below 1/2. Relative accuracy is ~1e-15 on the real axis
/// away from the poles.
double gamma_fn(double x);

/// C_{N,s} = s 4^s Gamma((N+2s)/2) / (pi^{N/2} Gamma(1-s)).
/// Throws ErrorKind::Domain unless 0 < s < 1 and dim >= 1.
double normalization_constant(int dim, double s);

/// Value of (-Delta)^s (1-|x|^2)_+^s inside the unit ball:
/// 4^s Gamma(1+s) Gamma(N/2+s) / Gamma(N/2).
double getoor_constant(int dim, double s);

}  // namespace fraclap
