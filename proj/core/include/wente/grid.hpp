#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace wente {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// One-dimensional boundary mesh. For a circle the nodes are angles in
/// [0, 2pi) and the weights are arc lengths; for a segment the nodes are
/// x1 coordinates and the weights are cell widths. Weights sum to the
/// boundary length.
struct LineGrid {
  enum class Kind { Circle, Segment };

  Kind kind = Kind::Segment;
  std::vector<double> nodes;
  std::vector<double> weights;
  double length = 0.0;

  std::size_t size() const { return nodes.size(); }
};

/// Cell-centered polar mesh of the unit disk. Radial nodes sit at
/// r_j = (j+1/2)/n_r so no node touches the origin, angles are uniform
/// with n_theta even. Cell areas are the exact midpoint weights
/// r_j * dr * dtheta; they sum to pi up to rounding.
struct PolarGrid {
  int n_r = 0;
  int n_theta = 0;
  double dr = 0.0;
  double dtheta = 0.0;
  std::vector<double> r_nodes;      // size n_r
  std::vector<double> theta_nodes;  // size n_theta
  std::vector<double> cos_theta;
  std::vector<double> sin_theta;
  std::vector<double> cell_areas;   // size n_r * n_theta
  std::shared_ptr<const LineGrid> boundary;  // unit circle, n_theta nodes

  std::size_t size() const { return r_nodes.size() * theta_nodes.size(); }
  std::size_t idx(int j, int i) const {
    return static_cast<std::size_t>(j) * n_theta + i;
  }
  Point node(int j, int i) const {
    return {r_nodes[j] * cos_theta[i], r_nodes[j] * sin_theta[i]};
  }
};

/// Cell-centered tensor mesh of the truncated upper half-plane
/// [-L, L] x (0, H]. With refine on, both partitions are geometrically
/// graded toward the origin (x symmetric about 0) with a fixed cell
/// ratio, so near-origin scales down to ~1e-6 are resolved.
struct HalfPlaneGrid {
  int n_x = 0;
  int n_y = 0;
  double half_width = 0.0;  // L
  double height = 0.0;      // H
  bool refined = false;
  std::vector<double> x_nodes;   // size n_x, ascending
  std::vector<double> y_nodes;   // size n_y, ascending, all > 0
  std::vector<double> x_widths;  // cell widths, sum 2L
  std::vector<double> y_widths;  // cell widths, sum H
  std::vector<double> cell_areas;  // size n_x * n_y
  std::shared_ptr<const LineGrid> boundary;  // the segment [-L, L], x partition

  std::size_t size() const { return x_nodes.size() * y_nodes.size(); }
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(j) * n_x + i;
  }
  Point node(int i, int j) const { return {x_nodes[i], y_nodes[j]}; }
};

using DiskGridPtr = std::shared_ptr<const PolarGrid>;
using PlaneGridPtr = std::shared_ptr<const HalfPlaneGrid>;

/// Builds the polar grid. Requires n_r >= 4 and n_theta >= 8 even.
DiskGridPtr make_polar_grid(int n_r, int n_theta);

/// Builds the half-plane grid. Requires positive counts and extents;
/// refined grids require even n_x. The grading ratio is 1.1 (<= 1.2).
PlaneGridPtr make_halfplane_grid(int n_x, int n_y, double half_width,
                                 double height, bool refine);

/// Standalone segment grid on [-L, L], optionally graded toward 0.
std::shared_ptr<const LineGrid> make_segment_grid(int n, double half_width,
                                                  bool refine);

/// Conformal map from the unit disk to the upper half-plane, normalized so
/// that 0 -> (0,1) and 1 -> (0,0); the point -1 is the pole of the map.
Point cayley_disk_to_halfplane(Point z);

/// Inverse map; defined on the closed half-plane y >= 0.
Point cayley_halfplane_to_disk(Point w);

}  // namespace wente
