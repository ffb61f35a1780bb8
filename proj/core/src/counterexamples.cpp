#include "wente/counterexamples.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wente {

namespace {

// cone geometry of the step families; the transition band is
// c0 - c1 <= x/y <= c0 + c1
constexpr double kConeCenter = 1.2;  // c0
constexpr double kConeWidth = 0.9;   // c1
constexpr double kShift = 0.3;       // boundary offset of the pair, in units of eps

double smooth_step01(double t) {
  // 0 at t <= 0, 1 at t >= 1, exp(-1/t) splice
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double e0 = std::exp(-1.0 / t);
  const double e1 = std::exp(-1.0 / (1.0 - t));
  return e0 / (e0 + e1);
}

double radial_log_profile(double x, double y, double beta) {
  const double r2 = x * x + y * y;
  const double r = std::sqrt(r2);
  if (r >= 0.5) return 0.0;
  if (r2 <= 0.0) return 0.0;
  return std::pow(-0.5 * std::log(r2), -beta) * psi(r);
}

double cone_step(double x, double y) {
  if (y <= 0.0) return x > 0.0 ? 1.0 : 0.0;
  return chi((x - kConeCenter * y) / (kConeWidth * y));
}

// The step pair translates rigidly by kShift * eps along the boundary, so
// every norm of the data is eps-independent (the profile is merely moved)
// while the boundary values seen from the origin vanish on [0, kShift*eps]:
// the sweeps read the blow-up of the fixed profile at standoff kShift*eps.
double step_family_b(double x, double y, double beta, double eps) {
  const double xs = x - kShift * eps;
  return radial_log_profile(xs, y, beta) * cone_step(xs, y);
}

double step_family_a(double x, double y, double eps) {
  const double xs = x - kShift * eps;
  return psi(std::sqrt(xs * xs + y * y));
}

double h1_family_b(double x, double y, double beta, double eps) {
  const double r = std::sqrt(x * x + y * y);
  if (r >= 0.5) return 0.0;
  return std::pow(-0.5 * std::log(x * x + y * y + eps * eps), -beta) * psi(r);
}

}  // namespace

double psi(double r) {
  if (r < 0.0) r = -r;
  if (r <= 0.25) return 1.0;
  if (r >= 0.5) return 0.0;
  return 1.0 - smooth_step01((r - 0.25) * 4.0);
}

double chi(double x) {
  if (x >= 1.0) return 1.0;
  if (x <= -1.0) return 0.0;
  return (2.0 / std::numbers::pi) * (std::atan(x) + std::numbers::pi / 4.0);
}

double heaviside_mollified(double x, double eps) { return chi(x / eps); }

double f_beta(double r, double beta) {
  if (beta <= 0.0) throw std::invalid_argument("f_beta: beta must be positive");
  if (r < 0.0) r = -r;
  if (r >= 0.5 || r <= 0.0) return 0.0;
  return std::pow(-std::log(r), -beta) * psi(r);
}

double tilde_f(double x, double y, double beta) {
  if (y <= 0.0) throw std::domain_error("tilde_f: requires y > 0");
  const double r = std::sqrt(x * x + y * y);
  if (r >= 0.5) return 0.0;
  return std::pow(-0.5 * std::log(x * x + y * y), -beta) * psi(r) * chi(x / y);
}

double odd_log_test(double x, double q) {
  const double r = std::abs(x);
  if (r >= 0.5 || r <= 0.0) return 0.0;
  const double v = std::pow(-std::log(r), q) * psi(r);
  return x > 0.0 ? v : -v;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::LinfBlowup: return "linf_blowup";
    case Family::H1Blowup: return "h1_blowup";
    case Family::DirichletControl: return "dirichlet_control";
    case Family::L21Control: return "l21_control";
    case Family::VanishingTrace: return "vanishing_trace";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::LinfBlowup, Family::H1Blowup, Family::DirichletControl,
                   Family::L21Control, Family::VanishingTrace})
    if (name == family_name(f)) return f;
  throw std::invalid_argument("unknown family: " + name);
}

void CounterexampleSpec::validate() const {
  if (!(eps > 0.0 && eps <= 0.125))
    throw std::invalid_argument("CounterexampleSpec: eps must lie in (0, 1/8]");
  switch (family) {
    case Family::H1Blowup:
      if (!(beta > 0.0 && beta < 0.5))
        throw std::invalid_argument("h1_blowup: beta must lie in (0, 1/2)");
      break;
    case Family::L21Control:
      if (!(beta > 1.0))
        throw std::invalid_argument("l21_control: beta must exceed 1");
      break;
    default:
      if (!(beta > 0.5 && beta < 1.0))
        throw std::invalid_argument(std::string(family_name(family)) +
                                    ": beta must lie in (1/2, 1)");
  }
}

double step_family_cutoff() { return kShift; }

PairFunctions halfplane_pair(const CounterexampleSpec& spec) {
  spec.validate();
  PairFunctions p;
  const double beta = spec.beta, eps = spec.eps;
  if (spec.family == Family::H1Blowup) {
    p.a = [](double x, double y) { return psi(std::sqrt(x * x + y * y)); };
    p.b = [beta, eps](double x, double y) { return h1_family_b(x, y, beta, eps); };
  } else {
    p.a = [eps](double x, double y) { return step_family_a(x, y, eps); };
    p.b = [beta, eps](double x, double y) { return step_family_b(x, y, beta, eps); };
  }
  return p;
}

FieldPair build_pair(const CounterexampleSpec& spec, const PlaneGridPtr& grid) {
  spec.validate();
  if (spec.family != Family::LinfBlowup && spec.family != Family::H1Blowup)
    throw std::invalid_argument("build_pair: family lives on the disk");
  PairFunctions p = halfplane_pair(spec);
  return {sample(grid, p.a), sample(grid, p.b)};
}

FieldPair build_pair(const CounterexampleSpec& spec, const DiskGridPtr& grid) {
  spec.validate();
  if (spec.family == Family::LinfBlowup || spec.family == Family::H1Blowup)
    throw std::invalid_argument("build_pair: family lives on the half-plane");
  const double beta = spec.beta, eps = spec.eps;

  if (spec.family == Family::VanishingTrace) {
    // a sits in the disk with zero trace; b is the log-mollified profile
    // centered off-axis so the Jacobian does not vanish
    ScalarField a = sample(grid, [](double x, double y) {
      return psi(std::sqrt(x * x + y * y));
    });
    ScalarField b = sample(grid, [beta, eps](double x, double y) {
      return h1_family_b(x - 0.2, y, beta, eps);
    });
    return {std::move(a), std::move(b)};
  }

  auto through_map = [](std::function<double(double, double)> f) {
    return [f = std::move(f)](double x, double y) {
      const Point w = cayley_disk_to_halfplane({x, y});
      return f(w.x, w.y);
    };
  };
  ScalarField a = sample(grid, through_map([eps](double x, double y) {
    return step_family_a(x, y, eps);
  }));
  ScalarField b = sample(grid, through_map([beta, eps](double x, double y) {
    return step_family_b(x, y, beta, eps);
  }));
  return {std::move(a), std::move(b)};
}

double divergent_integral(double beta, double delta, bool plateau_only) {
  if (delta <= 0.0) throw std::invalid_argument("divergent_integral: delta must be positive");
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("divergent_integral: beta must lie in (0, 1)");
  const double upper = plateau_only ? 0.25 : 0.5;
  if (delta >= upper) return 0.0;
  // u = -log t; integrand u^(-beta) [psi(e^-u)^2]
  const double u_lo = -std::log(upper);
  const double u_hi = -std::log(delta);
  const int panels = 4000;
  const double du = (u_hi - u_lo) / panels;
  auto f = [&](double u) {
    const double t = std::exp(-u);
    const double w = plateau_only ? 1.0 : psi(t) * psi(t);
    return std::pow(u, -beta) * w;
  };
  double s = f(u_lo) + f(u_hi);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(u_lo + i * du);
  return s * du / 3.0 / std::numbers::pi;
}

}  // namespace wente
