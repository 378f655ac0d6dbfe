#include "fraclap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fraclap/error.hpp"

namespace fraclap {
namespace {

std::vector<double> parse_numbers(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, "region key '" + key + "': not a number: '" + item + "'");
    }
  }
  return out;
}

std::string join(const double* v, int count) {
  std::ostringstream os;
  os.precision(17);
  for (int a = 0; a < count; ++a) os << (a ? "," : "") << v[a];
  return os.str();
}

}  // namespace

Region Region::ball(int dim, Point center, double radius) {
  require(dim == 1 || dim == 2, ErrorKind::InvalidArgument, "region dimension must be 1 or 2");
  require(radius > 0.0, ErrorKind::InvalidArgument, "ball radius must be positive");
  Region r;
  r.kind = Kind::Ball;
  r.dim = dim;
  r.center = center;
  r.radius = radius;
  if (dim == 1) r.center[1] = 0.0;
  return r;
}

Region Region::box(int dim, Point lo, Point hi) {
  require(dim == 1 || dim == 2, ErrorKind::InvalidArgument, "region dimension must be 1 or 2");
  for (int a = 0; a < dim; ++a)
    require(lo[a] < hi[a], ErrorKind::InvalidArgument, "box bounds must satisfy lo < hi");
  Region r;
  r.kind = Kind::Box;
  r.dim = dim;
  r.lo = lo;
  r.hi = hi;
  if (dim == 1) r.lo[1] = r.hi[1] = 0.0;
  return r;
}

bool Region::contains(const Point& x) const { return signed_distance(x) < 0.0; }

double Region::signed_distance(const Point& x) const {
  if (kind == Kind::Ball) {
    double r2 = 0.0;
    for (int a = 0; a < dim; ++a) r2 += (x[a] - center[a]) * (x[a] - center[a]);
    return std::sqrt(r2) - radius;
  }
  double outside2 = 0.0;
  double inside = INFINITY;
  for (int a = 0; a < dim; ++a) {
    const double below = lo[a] - x[a];
    const double above = x[a] - hi[a];
    const double d = std::max(below, above);
    if (d > 0.0) outside2 += d * d;
    inside = std::min(inside, -d);
  }
  if (outside2 > 0.0) return std::sqrt(outside2);
  return -inside;
}

double Region::diameter() const {
  if (kind == Kind::Ball) return 2.0 * radius;
  double d2 = 0.0;
  for (int a = 0; a < dim; ++a) d2 += (hi[a] - lo[a]) * (hi[a] - lo[a]);
  return std::sqrt(d2);
}

Region Region::dilated(double delta) const {
  if (kind == Kind::Ball) return ball(dim, center, radius + delta);
  Point l = lo, u = hi;
  for (int a = 0; a < dim; ++a) {
    l[a] -= delta;
    u[a] += delta;
  }
  return box(dim, l, u);
}

Region Region::bounding_box() const {
  if (kind == Kind::Box) return *this;
  Point l = center, u = center;
  for (int a = 0; a < dim; ++a) {
    l[a] -= radius;
    u[a] += radius;
  }
  return box(dim, l, u);
}

std::map<std::string, std::string> Region::to_config() const {
  std::map<std::string, std::string> kv;
  if (kind == Kind::Ball) {
    kv["kind"] = "ball";
    kv["center"] = join(center.data(), dim);
    kv["radius"] = join(&radius, 1);
  } else {
    kv["kind"] = "box";
    double b[4];
    for (int a = 0; a < dim; ++a) {
      b[2 * a] = lo[a];
      b[2 * a + 1] = hi[a];
    }
    kv["bounds"] = join(b, 2 * dim);
  }
  return kv;
}

Region Region::from_config(const std::map<std::string, std::string>& kv, int dim) {
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) fail(ErrorKind::Parse, "region is missing key '" + key + "'");
    return it->second;
  };
  const std::string& kind = get("kind");
  if (kind == "ball") {
    auto c = parse_numbers(get("center"), "center");
    auto r = parse_numbers(get("radius"), "radius");
    require(static_cast<int>(c.size()) == dim, ErrorKind::Parse, "region center needs one value per axis");
    require(r.size() == 1, ErrorKind::Parse, "region radius needs one value");
    return ball(dim, {c[0], dim == 2 ? c[1] : 0.0}, r[0]);
  }
  if (kind == "box") {
    auto b = parse_numbers(get("bounds"), "bounds");
    require(static_cast<int>(b.size()) == 2 * dim, ErrorKind::Parse, "region bounds need lo,hi per axis");
    return box(dim, {b[0], dim == 2 ? b[2] : 0.0}, {b[1], dim == 2 ? b[3] : 0.0});
  }
  fail(ErrorKind::Parse, "region kind must be ball or box, got '" + kind + "'");
}

std::string Region::describe() const {
  std::ostringstream os;
  os.precision(12);
  if (kind == Kind::Ball) {
    os << "ball(";
    for (int a = 0; a < dim; ++a) os << (a ? ";" : "") << center[a];
    os << ";r=" << radius << ")";
  } else {
    os << "box(";
    for (int a = 0; a < dim; ++a) os << (a ? ";" : "") << lo[a] << ":" << hi[a];
    os << ")";
  }
  return os.str();
}

double separation(const Region& inner, const Region& outer) {
  require(inner.dim == outer.dim, ErrorKind::InvalidArgument, "regions of different dimension");
  const int dim = inner.dim;
  using K = Region::Kind;
  if (outer.kind == K::Ball) {
    if (inner.kind == K::Ball) {
      double d2 = 0.0;
      for (int a = 0; a < dim; ++a) d2 += (inner.center[a] - outer.center[a]) * (inner.center[a] - outer.center[a]);
      return outer.radius - std::sqrt(d2) - inner.radius;
    }
    // Farthest corner of the inner box from the ball center.
    double far2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      const double d = std::max(std::abs(inner.lo[a] - outer.center[a]), std::abs(inner.hi[a] - outer.center[a]));
      far2 += d * d;
    }
    return outer.radius - std::sqrt(far2);
  }
  const Region ib = inner.bounding_box();
  double gap = INFINITY;
  for (int a = 0; a < dim; ++a) gap = std::min({gap, ib.lo[a] - outer.lo[a], outer.hi[a] - ib.hi[a]});
  return gap;
}

std::shared_ptr<const Grid> Grid::build(int dim, double box_lo, double box_hi, int n, const Region& omega) {
  require(dim == 1 || dim == 2, ErrorKind::InvalidArgument, "grid dimension must be 1 or 2");
  require(omega.dim == dim, ErrorKind::InvalidArgument, "omega dimension does not match the grid");
  require(box_hi > box_lo, ErrorKind::InvalidArgument, "box must satisfy lo < hi");
  require(n >= 8, ErrorKind::GridTooSmall, "need at least 8 nodes per axis, got " + std::to_string(n));

  const double collar = 0.25 * omega.diameter();
  const Region ob = omega.bounding_box();
  for (int a = 0; a < dim; ++a) {
    if (ob.lo[a] - box_lo < collar || box_hi - ob.hi[a] < collar)
      fail(ErrorKind::CollarTooThin, "omega " + omega.describe() + " needs an exterior collar of " +
                                         std::to_string(collar) + " inside the box");
  }

  auto g = std::shared_ptr<Grid>(new Grid());
  g->dim_ = dim;
  g->n_ = n;
  g->box_lo_ = box_lo;
  g->box_hi_ = box_hi;
  g->h_ = (box_hi - box_lo) / (n - 1);
  g->omega_ = omega;

  const std::size_t count = dim == 1 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) * n;
  g->mask_.assign(count, 0);
  g->rho_.assign(count, 0.0);
  g->omega_index_.assign(count, -1);
  for (std::size_t node = 0; node < count; ++node) {
    const Point x = g->coord(node);
    const double sd = omega.signed_distance(x);
    g->rho_[node] = std::abs(sd);
    if (sd < 0.0) {
      g->mask_[node] = 1;
      g->omega_index_[node] = static_cast<std::int64_t>(g->omega_nodes_.size());
      g->omega_nodes_.push_back(node);
    }
  }
  g->omega_runs_ = g->runs(omega);
  return g;
}

Point Grid::coord(std::size_t node) const {
  const int i = static_cast<int>(node % n_);
  const int j = static_cast<int>(node / n_);
  return {coord_axis(i), dim_ == 2 ? coord_axis(j) : 0.0};
}

std::vector<Run> Grid::runs(const Region& region) const {
  std::vector<Run> out;
  for (int j = 0; j < rows(); ++j) {
    int i = 0;
    while (i < n_) {
      while (i < n_ && !region.contains(coord(index(i, j)))) ++i;
      const int begin = i;
      while (i < n_ && region.contains(coord(index(i, j)))) ++i;
      if (i > begin) out.push_back({j, begin, i});
    }
  }
  return out;
}

std::vector<Run> Grid::full_runs() const {
  std::vector<Run> out;
  for (int j = 0; j < rows(); ++j) out.push_back({j, 0, n_});
  return out;
}

GridFunction GridFunction::zeros(GridPtr grid, bool dirichlet) {
  GridFunction out;
  out.values.assign(grid->node_count(), 0.0);
  out.grid = std::move(grid);
  out.dirichlet = dirichlet;
  return out;
}

GridFunction extend_by_zero(std::span<const double> omega_values, const GridPtr& grid) {
  require(omega_values.size() == grid->omega_count(), ErrorKind::LengthMismatch,
          "expected " + std::to_string(grid->omega_count()) + " omega values, got " +
              std::to_string(omega_values.size()));
  GridFunction out = GridFunction::zeros(grid, true);
  const auto& nodes = grid->omega_nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k) out.values[nodes[k]] = omega_values[k];
  return out;
}

std::vector<double> restrict_to_omega(const GridFunction& u) {
  const auto& nodes = u.grid->omega_nodes();
  std::vector<double> out(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) out[k] = u.values[nodes[k]];
  return out;
}

GridFunction multiply(const GridFunction& a, const GridFunction& b) {
  require(a.grid == b.grid, ErrorKind::LengthMismatch, "grid functions live on different grids");
  GridFunction out = GridFunction::zeros(a.grid, a.dirichlet || b.dirichlet);
  for (std::size_t k = 0; k < out.size(); ++k) out.values[k] = a.values[k] * b.values[k];
  return out;
}

GridFunction combine(double alpha, const GridFunction& a, double beta, const GridFunction& b) {
  require(a.grid == b.grid, ErrorKind::LengthMismatch, "grid functions live on different grids");
  GridFunction out = GridFunction::zeros(a.grid, a.dirichlet && b.dirichlet);
  for (std::size_t k = 0; k < out.size(); ++k) out.values[k] = alpha * a.values[k] + beta * b.values[k];
  return out;
}

double smoothstep(double t, int order) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  auto binom = [](int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  double poly = 0.0;
  double power = 1.0;
  for (int k = 0; k <= order; ++k) {
    poly += binom(order + k, k) * binom(2 * order + 1, order - k) * power;
    power *= -t;
  }
  return std::pow(t, order + 1) * poly;
}

namespace {

void check_nesting(const CutoffSpec& spec, const Region& container, const char* what) {
  require(spec.order >= 2, ErrorKind::InvalidArgument, "cut-off smoothness order must be at least 2");
  auto need = [](double gap, const std::string& msg) {
    if (!(gap > 0.0)) fail(ErrorKind::InvalidNesting, msg + " (separation " + std::to_string(gap) + ")");
  };
  need(separation(spec.inner, spec.outer), "inner region must be compactly inside the outer region");
  const Region* last = &spec.outer;
  if (spec.omega1) {
    need(separation(*last, *spec.omega1), "outer region must be compactly inside omega1");
    last = &*spec.omega1;
  }
  if (spec.omega2) {
    need(separation(*last, *spec.omega2), "regions must be compactly inside omega2");
    last = &*spec.omega2;
  }
  need(separation(*last, container), std::string("cut-off regions must be compactly inside the ") + what);
}

GridFunction ramp(const GridPtr& grid, const CutoffSpec& spec, bool dirichlet) {
  GridFunction eta = GridFunction::zeros(grid, dirichlet);
  for (std::size_t node = 0; node < grid->node_count(); ++node) {
    const Point x = grid->coord(node);
    const double d_in = spec.inner.signed_distance(x);
    if (d_in <= 0.0) {
      eta.values[node] = 1.0;
      continue;
    }
    const double d_out = spec.outer.signed_distance(x);
    if (d_out >= 0.0) continue;
    eta.values[node] = 1.0 - smoothstep(d_in / (d_in - d_out), spec.order);
  }
  return eta;
}

}  // namespace

GridFunction build_cutoff(const GridPtr& grid, const CutoffSpec& spec) {
  check_nesting(spec, grid->omega(), "domain");
  return ramp(grid, spec, true);
}

GridFunction build_window(const GridPtr& grid, const CutoffSpec& spec) {
  const Region box = grid->dim() == 1
                         ? Region::interval(grid->box_lo(), grid->box_hi())
                         : Region::box(2, {grid->box_lo(), grid->box_lo()}, {grid->box_hi(), grid->box_hi()});
  check_nesting(spec, box, "grid box");
  return ramp(grid, spec, false);
}

}  // namespace fraclap
