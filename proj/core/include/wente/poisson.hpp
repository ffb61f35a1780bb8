#pragma once

#include "wente/field.hpp"

namespace wente {

struct SolveOptions {
  enum class Compatibility { Error, Project };

  /// Gate for the Neumann solvability defect when policy is Error.
  double compatibility_tolerance = 1e-6;
  /// Default projects the defect out of the zero mode and records it.
  Compatibility policy = Compatibility::Project;
  /// Highest angular mode solved; -1 keeps all n_theta/2 modes.
  int max_mode = -1;
};

struct NeumannSolution {
  ScalarField u;
  /// Solvability defect  integral(rhs) + boundary integral(flux)  measured
  /// before the projection.
  double defect = 0.0;
};

struct ConjugateSolution {
  ScalarField w;
  /// The Dirichlet potential whose rotated gradient carries the flux.
  ScalarField potential;
  /// L2 norm of curl(grad w reconstruction data); discretization
  /// diagnostic, large values signal unresolved data.
  double curl_residual = 0.0;
  double defect = 0.0;
};

/// -lap u = rhs, u = 0 on the unit circle. Fourier transform in the angle,
/// second-order conservative radial differences per mode.
ScalarField solve_dirichlet_disk(const ScalarField& rhs, const SolveOptions& opts = {});

/// -lap u = rhs, du/dnu = flux on the unit circle, zero-mean solution.
NeumannSolution solve_neumann_disk(const ScalarField& rhs, const BoundaryTrace& flux,
                                   const SolveOptions& opts = {});

/// -lap C = -div F, C = 0 on the unit circle. The divergence is assembled
/// in flux form from edge averages of F, so F is never differentiated at
/// the nodes.
ScalarField solve_dirichlet_div_form(const VectorField& F, const SolveOptions& opts = {});

/// Solves the flux-compatible Neumann problem -lap w = jacobian(a, b),
/// dw/dnu = -a d_tau b, by the potential route: C solves the divergence-form
/// Dirichlet problem for a grad b, then w is rebuilt from the rotated
/// gradient of C minus a times the rotated gradient of b.
ConjugateSolution conjugate_reduction(const ScalarField& a, const ScalarField& b,
                                      const SolveOptions& opts = {});

}  // namespace wente
