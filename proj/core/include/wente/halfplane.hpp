#pragma once

#include "wente/field.hpp"

namespace wente {

/// Quadrature policy for the logarithmic kernel singularity of the interior
/// representation.
struct GreenEval {
  enum class SelfCell {
    AnalyticCellAverage,  // closed-form integral of log|y-x| over the cell
    Exclude,              // drop cells within the exclusion radius
  };
  SelfCell policy = SelfCell::AnalyticCellAverage;
  /// Radius of the excluded neighborhood in units of the local cell size,
  /// in (0, 1]. Only used by Exclude.
  double exclusion_radius_cells = 1.0;

  void validate() const;
};

/// Half-plane Neumann kernel
///   -(1/2pi) { log|x - y| + log|y - x~| },  x~ = (x1, -x2).
/// Symmetric in its arguments; its y2-derivative vanishes on the boundary.
double neumann_green(Point x, Point y);

/// Interior value of the flux-compatible solution,
///   w(x) = int G(x,y) J[a,b](y) dy
///        + (1/pi) int log((y1-x1)^2 + x2^2)^(1/2) (a d1 b)(y1, 0) dy1,
/// with J the discrete Jacobian and the boundary density formed from the
/// extrapolated traces.
double represent_interior(const ScalarField& a, const ScalarField& b, Point x,
                          const GreenEval& quad = {});

/// Terms of the boundary-value representation at (x1, 0):
///   volume = (1/pi) int grad_y log|y-x| . [(a - a+) perp-grad b] dy,
///   line   = (1/pi) int_0^inf (1/t) a+(t) [b(x1-t,0) - b(x1+t,0)] dt,
/// where a+(t) is the symmetrized boundary value (a(x1+t,0)+a(x1-t,0))/2,
/// extended radially in the volume term. The symmetrization cancels the
/// kernel singularity at y = (x1, 0).
struct TraceTerms {
  double volume = 0.0;
  double line = 0.0;
  double total() const { return volume + line; }
};
TraceTerms represent_trace_terms(const ScalarField& a, const ScalarField& b, double x1);
double represent_trace(const ScalarField& a, const ScalarField& b, double x1);

/// Boundary values of the zero-flux solution: the two terms above plus the
/// logarithmic convolution with the boundary derivative data,
///   log_kernel = -(1/pi) int log|t - x1| (a d1 b)(t, 0) dt.
struct V1TraceTerms {
  double volume = 0.0;
  double line = 0.0;
  double log_kernel = 0.0;
  double total() const { return volume + line + log_kernel; }
};
V1TraceTerms represent_v1_trace_terms(const ScalarField& a, const ScalarField& b, double x1);
double represent_v1_trace(const ScalarField& a, const ScalarField& b, double x1);

/// Term-by-term boundary traces over the whole boundary grid.
struct AssembledTrace {
  BoundaryTrace volume;
  BoundaryTrace line;
  BoundaryTrace log_kernel;  // zero trace for the flux-compatible assembly
  BoundaryTrace total;
};
AssembledTrace assemble_trace(const ScalarField& a, const ScalarField& b);
AssembledTrace assemble_v1_trace(const ScalarField& a, const ScalarField& b);

}  // namespace wente
