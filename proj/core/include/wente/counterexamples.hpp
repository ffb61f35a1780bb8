#pragma once

#include <functional>
#include <string>

#include "wente/field.hpp"

namespace wente {

/// Radial plateau profile: 1 on [0, 1/4], 0 on [1/2, inf), C-infinity
/// exponential splice in between, monotone on the transition.
double psi(double r);

/// Arctan step: 0 below -1, 1 above +1, (2/pi)(atan x + pi/4) in between.
/// Lipschitz with a corner at +-1.
double chi(double x);

/// chi(x / eps); converges pointwise to the unit step as eps -> 0.
double heaviside_mollified(double x, double eps);

/// (-log r)^(-beta) psi(r); vanishes at r = 0 and outside r = 1/2.
double f_beta(double r, double beta);

/// Upper half-plane profile (-(1/2) log(x^2+y^2))^(-beta) psi(r) chi(x/y)
/// whose boundary values reproduce f_beta(x) on x > 0 and 0 on x < 0.
double tilde_f(double x, double y, double beta);

/// Odd pairing profile sgn(x) (-log|x|)^q psi(|x|); the configurable
/// exponent q of the divergence test for the boundary derivative data.
double odd_log_test(double x, double q);

enum class Family {
  LinfBlowup,        // half-plane, one-sided step data
  H1Blowup,          // half-plane, even data with a rough boundary derivative
  DirichletControl,  // the step data placed on the disk through the Cayley map
  L21Control,        // same placement with beta > 1
  VanishingTrace,    // disk, a compactly supported inside
};

const char* family_name(Family f);
Family parse_family(const std::string& name);

struct CounterexampleSpec {
  Family family = Family::LinfBlowup;
  double beta = 0.75;
  double eps = 1e-2;

  /// Enforces the per-family beta range and eps in (0, 1/8].
  void validate() const;
};

/// Analytic half-plane evaluators of the (a, b) data for a spec. The step
/// families share one construction: a is the radial plateau and b is a
/// fixed profile translated by s*eps along the boundary,
///   b0(x, y) = (-(1/2) log(x^2+y^2))^(-beta) psi(r) chi((x - c0 y)/(c1 y)),
///   b_eps(x, y) = b0(x - s*eps, y),
/// so the boundary values vanish on (-inf, s*eps] and the profile (hence
/// its Dirichlet energy) is independent of eps. The h1 family instead
/// smooths the logarithm radially,
///   b_eps(x, y) = (-(1/2) log(x^2+y^2+eps^2))^(-beta) psi(r).
struct PairFunctions {
  std::function<double(double, double)> a;
  std::function<double(double, double)> b;
};
PairFunctions halfplane_pair(const CounterexampleSpec& spec);

/// Nominal boundary cutoff scale of the step families, in units of eps.
double step_family_cutoff();

struct FieldPair {
  ScalarField a;
  ScalarField b;
};

/// Samples the data onto the designated grid. Half-plane grids host
/// linf_blowup and h1_blowup; polar grids host the three control families,
/// placed near the boundary point theta = 0 through the Cayley map
/// (vanishing_trace keeps a = psi(|z|) centered in the disk, so its trace
/// is identically zero).
FieldPair build_pair(const CounterexampleSpec& spec, const PlaneGridPtr& grid);
FieldPair build_pair(const CounterexampleSpec& spec, const DiskGridPtr& grid);

/// (1/pi) * integral over (delta, inf) of (1/t) (-log t)^(-beta) psi(t)^2 dt,
/// by composite quadrature in u = -log t. With plateau_only the weight
/// psi^2 is replaced by the indicator of t <= 1/4, which has the closed
/// antiderivative u^(1-beta)/(1-beta).
double divergent_integral(double beta, double delta, bool plateau_only = false);

}  // namespace wente
