#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "wente/grid.hpp"

namespace wente {

using GridRef = std::variant<DiskGridPtr, PlaneGridPtr>;

/// Sampled real function, one value per grid node. Immutable after
/// construction; construction rejects non-finite values and size mismatch.
class ScalarField {
 public:
  ScalarField(DiskGridPtr grid, std::vector<double> values);
  ScalarField(PlaneGridPtr grid, std::vector<double> values);

  bool on_disk() const { return std::holds_alternative<DiskGridPtr>(grid_); }
  const DiskGridPtr& disk() const;
  const PlaneGridPtr& plane() const;
  const GridRef& grid() const { return grid_; }
  const std::vector<double>& values() const { return v_; }
  double operator[](std::size_t i) const { return v_[i]; }
  std::size_t size() const { return v_.size(); }

 private:
  GridRef grid_;
  std::vector<double> v_;
};

/// Two-component sampled field in the Cartesian frame.
class VectorField {
 public:
  VectorField(DiskGridPtr grid, std::vector<double> vx, std::vector<double> vy);
  VectorField(PlaneGridPtr grid, std::vector<double> vx, std::vector<double> vy);

  bool on_disk() const { return std::holds_alternative<DiskGridPtr>(grid_); }
  const DiskGridPtr& disk() const;
  const PlaneGridPtr& plane() const;
  const GridRef& grid() const { return grid_; }
  const std::vector<double>& x() const { return vx_; }
  const std::vector<double>& y() const { return vy_; }
  std::size_t size() const { return vx_.size(); }

 private:
  GridRef grid_;
  std::vector<double> vx_, vy_;
};

/// Sampled function on a boundary grid.
class BoundaryTrace {
 public:
  BoundaryTrace(std::shared_ptr<const LineGrid> grid, std::vector<double> values);

  const std::shared_ptr<const LineGrid>& line() const { return grid_; }
  const std::vector<double>& values() const { return v_; }
  double operator[](std::size_t i) const { return v_[i]; }
  std::size_t size() const { return v_.size(); }

 private:
  std::shared_ptr<const LineGrid> grid_;
  std::vector<double> v_;
};

template <class F>
ScalarField sample(const DiskGridPtr& g, F&& f) {
  std::vector<double> v(g->size());
  for (int j = 0; j < g->n_r; ++j)
    for (int i = 0; i < g->n_theta; ++i) {
      const Point p = g->node(j, i);
      v[g->idx(j, i)] = f(p.x, p.y);
    }
  return {g, std::move(v)};
}

template <class F>
ScalarField sample(const PlaneGridPtr& g, F&& f) {
  std::vector<double> v(g->size());
  for (int j = 0; j < g->n_y; ++j)
    for (int i = 0; i < g->n_x; ++i)
      v[g->idx(i, j)] = f(g->x_nodes[i], g->y_nodes[j]);
  return {g, std::move(v)};
}

// Differential operators. On the disk the angular derivative is spectral
// (exact for trigonometric modes) and the radial one is a second-order
// stencil, with the antipodal ring standing in for the missing node across
// the origin. On the half-plane the stencils are the three-point Lagrange
// derivatives, second order on the graded partitions as well.

VectorField gradient(const ScalarField& f);

/// (d2 f, -d1 f): gradient rotated by -90 degrees, so that
/// grad(a) . perp_grad(b) equals the Jacobian d1a d2b - d2a d1b and
/// perp_grad(b) . nu equals the tangential derivative of b on the circle.
VectorField perp_gradient(const ScalarField& f);

ScalarField jacobian(const ScalarField& a, const ScalarField& b);

ScalarField divergence(const VectorField& v);

/// Angular curl d1 v2 - d2 v1; the residual diagnostic of the conjugate solver.
ScalarField curl(const VectorField& v);

ScalarField component(const VectorField& v, int axis);

/// Boundary values by quadratic extrapolation from the outermost three
/// node layers.
BoundaryTrace trace(const ScalarField& f);

/// Arc-length derivative along the boundary: periodic central differences on
/// the circle, three-point stencils (one-sided at the ends) on a segment.
BoundaryTrace tangential_derivative(const BoundaryTrace& t);

BoundaryTrace multiply(const BoundaryTrace& a, const BoundaryTrace& b);

double integral(const ScalarField& f);
double mean(const ScalarField& f);
double boundary_integral(const BoundaryTrace& t);

/// Piecewise-linear evaluation of a boundary trace at an arbitrary
/// coordinate (angle or x1); zero outside a segment's range.
double interpolate(const BoundaryTrace& t, double coordinate);

/// CSV with header `x1,x2,value`, one row per node.
void write_csv(const ScalarField& f, std::ostream& os);
/// CSV with header `x1,value` (the circle uses the angle as coordinate).
void write_csv(const BoundaryTrace& t, std::ostream& os);

}  // namespace wente
