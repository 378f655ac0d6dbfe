#include "fraclap/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "fraclap/error.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap {
namespace {

constexpr int kTail1d = 20000;
constexpr int kTail2d = 200;

int order_for(double distance) {
  if (distance < 4.0) return 24;
  if (distance < 16.0) return 12;
  if (distance < 64.0) return 8;
  return 4;
}

// int_0^{pi/4} cos^a(theta) dtheta
double cos_power_integral(double a) {
  return integrate([a](double t) { return std::pow(std::cos(t), a); }, 0.0, std::numbers::pi / 4, 40);
}

// Integral of f(xi1, xi2) |xi|^{-2-2s} over the unit cell [a,a+1]x[b,b+1].
template <class F>
double cell_integral_2d(int a, int b, double s, F&& f) {
  const double dist = std::hypot(a + 0.5, b + 0.5);
  const GaussRule& g = gauss_legendre(order_for(dist));
  double acc = 0.0;
  for (std::size_t p = 0; p < g.nodes.size(); ++p) {
    const double x = a + 0.5 * (g.nodes[p] + 1.0);
    double row = 0.0;
    for (std::size_t q = 0; q < g.nodes.size(); ++q) {
      const double y = b + 0.5 * (g.nodes[q] + 1.0);
      row += g.weights[q] * f(x, y) * std::pow(x * x + y * y, -1.0 - s);
    }
    acc += g.weights[p] * row;
  }
  return 0.25 * acc;
}

template <class F>
double cell_integral_1d(int a, double s, F&& f) {
  const GaussRule& g = gauss_legendre(order_for(a + 0.5));
  double acc = 0.0;
  for (std::size_t p = 0; p < g.nodes.size(); ++p) {
    const double x = a + 0.5 * (g.nodes[p] + 1.0);
    acc += g.weights[p] * f(x) * std::pow(x, -1.0 - 2.0 * s);
  }
  return 0.5 * acc;
}

bool near_cell(int a, int b) { return (a == -1 || a == 0) && (b == -1 || b == 0); }

double compute_kappa_unclamped(int dim, double s) {
  if (dim == 1) {
    double e = 0.0;
    for (int j = 1; j < kTail1d; ++j)
      e += cell_integral_1d(j, s, [j](double x) { return (x - j) * (j + 1 - x); });
    e += std::pow(static_cast<double>(kTail1d), -2.0 * s) / (6.0 * 2.0 * s);
    return 1.0 / (2.0 - 2.0 * s) - e;
  }
  // Quadrant a, b >= 0 with (0,0) excluded; the other three follow by symmetry.
  double e = 0.0;
  for (int a = 0; a < kTail2d; ++a)
    for (int b = 0; b < kTail2d; ++b) {
      if (a == 0 && b == 0) continue;
      e += cell_integral_2d(a, b, s, [a](double x, double) { return (x - a) * (a + 1 - x); });
    }
  e *= 4.0;
  e += std::pow(static_cast<double>(kTail2d), -2.0 * s) * far_mass(2, s) / 6.0;
  const double square = 4.0 * cos_power_integral(-(2.0 - 2.0 * s)) / (2.0 - 2.0 * s);
  return 0.5 * (square - e);
}

double hat_weight_1d(int k, double s) {
  double w = cell_integral_1d(k, s, [k](double x) { return k + 1 - x; });
  if (k >= 2) w += cell_integral_1d(k - 1, s, [k](double x) { return x - (k - 1); });
  return w;
}

double hat_weight_2d(int d1, int d2, double s) {
  double w = 0.0;
  for (int a = d1 - 1; a <= d1; ++a)
    for (int b = d2 - 1; b <= d2; ++b) {
      if (near_cell(a, b)) continue;
      w += cell_integral_2d(a, b, s, [d1, d2](double x, double y) {
        return (1.0 - std::abs(x - d1)) * (1.0 - std::abs(y - d2));
      });
    }
  return w;
}

struct KappaCache {
  std::mutex mutex;
  std::map<std::pair<int, double>, double> values;
};

double cached_kappa(int dim, double s) {
  static KappaCache cache;
  {
    std::lock_guard lock(cache.mutex);
    auto it = cache.values.find({dim, s});
    if (it != cache.values.end()) return it->second;
  }
  const double k = compute_kappa_unclamped(dim, s);
  std::lock_guard lock(cache.mutex);
  cache.values.emplace(std::make_pair(dim, s), k);
  return k;
}

}  // namespace

double StencilTable::weight(int d1, int d2) const {
  d1 = std::abs(d1);
  d2 = std::abs(d2);
  if (d1 >= extent || d2 >= extent || (dim == 1 && d2 != 0)) return 0.0;
  return centered_row(d2)[d1];
}

double far_mass(int dim, double s) {
  require(s > 0.0 && s < 1.0, ErrorKind::Domain, "exponent s must lie in (0,1)");
  if (dim == 1) return 1.0 / s;
  return 4.0 / s * cos_power_integral(2.0 * s);
}

double near_coefficient_unclamped(int dim, double s) {
  require(dim == 1 || dim == 2, ErrorKind::InvalidArgument, "dimension must be 1 or 2");
  require(s > 0.0 && s < 1.0, ErrorKind::Domain, "exponent s must lie in (0,1)");
  return cached_kappa(dim, s);
}

std::shared_ptr<const StencilTable> stencil_table(int dim, double s, int extent) {
  require(dim == 1 || dim == 2, ErrorKind::InvalidArgument, "dimension must be 1 or 2");
  require(s > 0.0 && s < 1.0, ErrorKind::Domain, "exponent s must lie in (0,1)");
  require(extent >= 2, ErrorKind::InvalidArgument, "stencil extent must be at least 2");

  using Key = std::tuple<int, double, int>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const StencilTable>> cache;
  const Key key{dim, s, extent};
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  auto t = std::make_shared<StencilTable>();
  t->dim = dim;
  t->s = s;
  t->extent = extent;
  t->total = far_mass(dim, s);
  const int rows = dim == 1 ? 1 : extent;
  t->table.assign(static_cast<std::size_t>(rows) * t->row_length(), 0.0);
  for (int dk = 0; dk < rows; ++dk) {
    double* row = t->table.data() + static_cast<std::size_t>(dk) * t->row_length() + (extent - 1);
    for (int d = 0; d < extent; ++d) {
      if (d == 0 && dk == 0) continue;
      const double w = dim == 1 ? hat_weight_1d(d, s) : hat_weight_2d(d, dk, s);
      row[d] = w;
      row[-d] = w;
    }
  }
  t->kappa_unclamped = cached_kappa(dim, s);
  t->kappa = std::max(t->kappa_unclamped, -t->nearest());

  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(t));
  return it->second;
}

}  // namespace fraclap
