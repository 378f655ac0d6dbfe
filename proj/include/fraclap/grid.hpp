#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fraclap {

using Point = std::array<double, 2>;

/// Open ball or axis-aligned open box in 1 or 2 dimensions. In 1D both kinds
/// are intervals; a ball is stored as center/radius.
struct Region {
  enum class Kind { Ball, Box };

  Kind kind = Kind::Box;
  int dim = 1;
  Point center{0.0, 0.0};
  double radius = 0.0;
  Point lo{0.0, 0.0};
  Point hi{0.0, 0.0};

  static Region ball(int dim, Point center, double radius);
  static Region box(int dim, Point lo, Point hi);
  static Region interval(double a, double b) { return box(1, {a, 0.0}, {b, 0.0}); }

  bool contains(const Point& x) const;
  /// Euclidean signed distance to the boundary: negative inside, positive outside.
  double signed_distance(const Point& x) const;
  double diameter() const;
  /// Grow (delta > 0) or shrink by delta in every direction.
  Region dilated(double delta) const;
  /// Smallest axis-aligned box containing the region.
  Region bounding_box() const;

  /// Keys: kind=ball|box, center, radius (ball) or bounds (box, "lo,hi[,lo,hi]").
  std::map<std::string, std::string> to_config() const;
  static Region from_config(const std::map<std::string, std::string>& kv, int dim);
  /// Short human-readable form used in CSV and JSON outputs.
  std::string describe() const;
};

/// inf over x in `inner` of dist(x, complement of `outer`). Positive exactly
/// when the closure of inner lies inside outer.
double separation(const Region& inner, const Region& outer);

/// Contiguous node range [begin, end) along axis 0 in one grid row.
struct Run {
  int row = 0;
  int begin = 0;
  int end = 0;
};

class Grid {
 public:
  /// The box is the same interval [box_lo, box_hi] on every axis.
  static std::shared_ptr<const Grid> build(int dim, double box_lo, double box_hi, int n, const Region& omega);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double h() const { return h_; }
  double box_lo() const { return box_lo_; }
  double box_hi() const { return box_hi_; }
  const Region& omega() const { return omega_; }
  std::size_t node_count() const { return mask_.size(); }
  int rows() const { return dim_ == 1 ? 1 : n_; }

  /// Node index = i + n*j.
  std::size_t index(int i, int j = 0) const { return static_cast<std::size_t>(i) + static_cast<std::size_t>(n_) * j; }
  Point coord(std::size_t node) const;
  double coord_axis(int i) const { return box_lo_ + h_ * i; }
  /// Area (or length) element h^N.
  double cell_volume() const { return dim_ == 1 ? h_ : h_ * h_; }

  bool in_omega(std::size_t node) const { return mask_[node] != 0; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }
  /// Distance from every node to the boundary of omega.
  const std::vector<double>& rho() const { return rho_; }
  const std::vector<std::size_t>& omega_nodes() const { return omega_nodes_; }
  /// Position of a node in omega_nodes(), or -1 outside omega.
  std::int64_t omega_index(std::size_t node) const { return omega_index_[node]; }
  std::size_t omega_count() const { return omega_nodes_.size(); }
  /// Omega runs, row by row in ascending order.
  const std::vector<Run>& omega_runs() const { return omega_runs_; }
  /// Runs of nodes inside an arbitrary region.
  std::vector<Run> runs(const Region& region) const;
  std::vector<Run> full_runs() const;

 private:
  Grid() = default;

  int dim_ = 1;
  int n_ = 0;
  double box_lo_ = 0.0;
  double box_hi_ = 0.0;
  double h_ = 0.0;
  Region omega_;
  std::vector<std::uint8_t> mask_;
  std::vector<double> rho_;
  std::vector<std::size_t> omega_nodes_;
  std::vector<std::int64_t> omega_index_;
  std::vector<Run> omega_runs_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Node values on a grid. When `dirichlet` is set the values vanish off omega.
struct GridFunction {
  GridPtr grid;
  std::vector<double> values;
  bool dirichlet = false;

  static GridFunction zeros(GridPtr grid, bool dirichlet = true);
  /// Samples f at omega nodes and sets the rest to zero.
  template <class F>
  static GridFunction on_omega(GridPtr grid, F&& f) {
    GridFunction out = zeros(grid, true);
    for (std::size_t node : grid->omega_nodes()) out.values[node] = f(grid->coord(node));
    return out;
  }
  /// Samples f at every node; not flagged as Dirichlet-extended.
  template <class F>
  static GridFunction everywhere(GridPtr grid, F&& f) {
    GridFunction out = zeros(grid, false);
    for (std::size_t node = 0; node < grid->node_count(); ++node) out.values[node] = f(grid->coord(node));
    return out;
  }

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t node) const { return values[node]; }
};

GridFunction extend_by_zero(std::span<const double> omega_values, const GridPtr& grid);
std::vector<double> restrict_to_omega(const GridFunction& u);

/// Nodewise product; Dirichlet if either factor is.
GridFunction multiply(const GridFunction& a, const GridFunction& b);
/// alpha*a + beta*b on the same grid.
GridFunction combine(double alpha, const GridFunction& a, double beta, const GridFunction& b);

/// Nested regions for the cut-off: inner ⋐ outer (⋐ omega1 ⋐ omega2).
struct CutoffSpec {
  Region inner;
  Region outer;
  std::optional<Region> omega1;
  std::optional<Region> omega2;
  int order = 3;
};

/// Polynomial ramp S with S(0)=0, S(1)=1 and vanishing derivatives of order
/// 1..m at both ends.
double smoothstep(double t, int order);

/// eta = 1 on inner, 0 off outer, smooth ramp in between. The regions must nest
/// inside the grid's omega (InvalidNesting otherwise).
GridFunction build_cutoff(const GridPtr& grid, const CutoffSpec& spec);
/// Same ramp, but the regions are only required to lie inside the grid box.
/// Used for windows straddling the boundary of omega.
GridFunction build_window(const GridPtr& grid, const CutoffSpec& spec);

}  // namespace fraclap
