#include "wente/poisson.hpp"

#include "wente/norms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "theta_fft.hpp"

namespace wente {

namespace {

using cplx = std::complex<double>;

enum class Bc { Dirichlet, Neumann };

// Tridiagonal solve with a real matrix and complex right-hand side.
// lower[0] and upper[n-1] are ignored.
void thomas(std::vector<double> lower, std::vector<double> diag,
            std::vector<double> upper, std::vector<cplx>* rhs) {
  const int n = static_cast<int>(diag.size());
  for (int j = 1; j < n; ++j) {
    const double m = lower[j] / diag[j - 1];
    diag[j] -= m * upper[j - 1];
    (*rhs)[j] -= m * (*rhs)[j - 1];
  }
  (*rhs)[n - 1] /= diag[n - 1];
  for (int j = n - 2; j >= 0; --j)
    (*rhs)[j] = ((*rhs)[j] - upper[j] * (*rhs)[j + 1]) / diag[j];
}

// Per-mode radial operator in conservative (flux) form on the cell-centered
// grid: row j encodes -(Phi_{j+1/2} - Phi_{j-1/2})/(r_j h) + k^2/r_j^2 u_j
// with Phi the edge flux R (u' or boundary data). The r = 0 edge carries no
// flux. Dirichlet folds a linear ghost through the boundary value zero,
// Neumann moves the prescribed edge flux to the right-hand side.
struct ModeSystem {
  std::vector<double> lower, diag, upper;

  ModeSystem(const PolarGrid& g, int k, Bc bc) {
    const int n = g.n_r;
    const double h = g.dr;
    lower.assign(n, 0.0);
    diag.assign(n, 0.0);
    upper.assign(n, 0.0);
    for (int j = 0; j < n; ++j) {
      const double r = g.r_nodes[j];
      const double R_lo = j * h;
      const double R_hi = (j + 1) * h;
      const double scale = 1.0 / (r * h * h);
      if (j > 0) lower[j] = -R_lo * scale;
      if (j < n - 1) upper[j] = -R_hi * scale;
      double d = (R_lo + R_hi) * scale + static_cast<double>(k) * k / (r * r);
      if (j == n - 1 && bc == Bc::Dirichlet) d += R_hi * scale;  // ghost doubles the edge couple
      if (j == n - 1 && bc == Bc::Neumann) d -= R_hi * scale;    // edge flux is data, not unknown
      diag[j] = d;
    }
  }
};

struct ModeData {
  // modes[k][j], k = 0..n_theta/2
  std::vector<std::vector<cplx>> modes;
};

ModeData to_modes(const PolarGrid& g, const std::vector<double>& field) {
  detail::ThetaFFT fft(g.n_theta);
  const int nm = fft.n_modes();
  ModeData md;
  md.modes.assign(nm, std::vector<cplx>(g.n_r));
  std::vector<cplx> ring(nm);
  for (int j = 0; j < g.n_r; ++j) {
    fft.forward(field.data() + g.idx(j, 0), ring.data());
    for (int k = 0; k < nm; ++k) md.modes[k][j] = ring[k];
  }
  return md;
}

std::vector<double> from_modes(const PolarGrid& g, const ModeData& md) {
  detail::ThetaFFT fft(g.n_theta);
  const int nm = fft.n_modes();
  std::vector<double> out(g.size());
  std::vector<cplx> ring(nm);
  for (int j = 0; j < g.n_r; ++j) {
    for (int k = 0; k < nm; ++k) ring[k] = md.modes[k][j];
    fft.backward(ring.data(), out.data() + g.idx(j, 0));
  }
  return out;
}

int top_mode(const PolarGrid& g, const SolveOptions& opts) {
  const int all = g.n_theta / 2;
  if (opts.max_mode < 0) return all;
  if (opts.max_mode > all)
    throw std::invalid_argument("SolveOptions: max_mode exceeds n_theta/2");
  return opts.max_mode;
}

void subtract_mean(const PolarGrid& g, std::vector<double>* v) {
  double s = 0.0, a = 0.0;
  for (std::size_t k = 0; k < v->size(); ++k) {
    s += (*v)[k] * g.cell_areas[k];
    a += g.cell_areas[k];
  }
  const double m = s / a;
  for (double& x : *v) x -= m;
}

// Edge values of a per-mode radial profile: interior edges average the
// neighbors, the r = 1 edge extrapolates linearly.
cplx edge_value(const std::vector<cplx>& prof, int edge, int n) {
  if (edge == 0) return 0.0;  // multiplied by R = 0
  if (edge == n) return 1.5 * prof[n - 1] - 0.5 * prof[n - 2];
  return 0.5 * (prof[edge - 1] + prof[edge]);
}

// -div F per mode in the same flux structure as ModeSystem.
std::vector<cplx> div_form_rhs(const PolarGrid& g, const std::vector<cplx>& fr,
                               const std::vector<cplx>& ftheta, int k) {
  const int n = g.n_r;
  const double h = g.dr;
  std::vector<cplx> rhs(n);
  for (int j = 0; j < n; ++j) {
    const double r = g.r_nodes[j];
    const cplx hi = (j + 1) * h * edge_value(fr, j + 1, n);
    const cplx lo = j * h * edge_value(fr, j, n);
    rhs[j] = -(hi - lo) / (r * h) - cplx(0.0, k) / r * ftheta[j];
  }
  return rhs;
}

struct PolarModes {
  ModeData radial;
  ModeData azimuthal;
};

PolarModes vector_modes(const PolarGrid& g, const VectorField& v) {
  std::vector<double> vr(v.size()), vt(v.size());
  for (int j = 0; j < g.n_r; ++j)
    for (int i = 0; i < g.n_theta; ++i) {
      const std::size_t k = g.idx(j, i);
      const double c = g.cos_theta[i], s = g.sin_theta[i];
      vr[k] = v.x()[k] * c + v.y()[k] * s;
      vt[k] = -v.x()[k] * s + v.y()[k] * c;
    }
  return {to_modes(g, vr), to_modes(g, vt)};
}

// Exactly zeroes the weighted consistency sum of the singular zero mode
// (the boundary flux must already be folded into the right-hand side) so
// the pinned solve is well posed to rounding.
cplx balance_mode0(const PolarGrid& g, std::vector<cplx>* rhs) {
  const double h = g.dr;
  cplx s = 0.0;
  double w = 0.0;
  for (int j = 0; j < g.n_r; ++j) {
    s += g.r_nodes[j] * h * (*rhs)[j];
    w += g.r_nodes[j] * h;
  }
  const cplx shift = s / w;
  for (auto& x : *rhs) x -= shift;
  return s;
}

void pin_first_row(ModeSystem* sys, std::vector<cplx>* rhs) {
  sys->diag[0] = 1.0;
  sys->upper[0] = 0.0;
  (*rhs)[0] = 0.0;
}

}  // namespace

ScalarField solve_dirichlet_disk(const ScalarField& rhs, const SolveOptions& opts) {
  const auto& gp = rhs.disk();
  const PolarGrid& g = *gp;
  const int K = top_mode(g, opts);

  ModeData md = to_modes(g, rhs.values());
  ModeData sol;
  sol.modes.assign(md.modes.size(), std::vector<cplx>(g.n_r, 0.0));
  for (int k = 0; k <= K; ++k) {
    ModeSystem sys(g, k, Bc::Dirichlet);
    std::vector<cplx> b = md.modes[k];
    thomas(sys.lower, sys.diag, sys.upper, &b);
    sol.modes[k] = std::move(b);
  }
  return {gp, from_modes(g, sol)};
}

NeumannSolution solve_neumann_disk(const ScalarField& rhs, const BoundaryTrace& flux,
                                   const SolveOptions& opts) {
  const auto& gp = rhs.disk();
  const PolarGrid& g = *gp;
  if (flux.line().get() != g.boundary.get())
    throw std::invalid_argument("solve_neumann_disk: flux not on the grid boundary");
  const int K = top_mode(g, opts);

  const double defect = integral(rhs) + boundary_integral(flux);
  if (opts.policy == SolveOptions::Compatibility::Error &&
      std::abs(defect) > opts.compatibility_tolerance)
    throw std::runtime_error("solve_neumann_disk: incompatible data, defect " +
                             std::to_string(defect));

  std::vector<double> adjusted = rhs.values();
  const double shift = defect / std::numbers::pi;
  for (double& x : adjusted) x -= shift;

  ModeData md = to_modes(g, adjusted);
  detail::ThetaFFT fft(g.n_theta);
  std::vector<cplx> gk(fft.n_modes());
  fft.forward(flux.values().data(), gk.data());

  ModeData sol;
  sol.modes.assign(md.modes.size(), std::vector<cplx>(g.n_r, 0.0));
  const double h = g.dr;
  for (int k = 0; k <= K; ++k) {
    ModeSystem sys(g, k, Bc::Neumann);
    std::vector<cplx> b = md.modes[k];
    b[g.n_r - 1] += gk[k] / (g.r_nodes[g.n_r - 1] * h);  // R_n = 1
    if (k == 0) {
      balance_mode0(g, &b);
      pin_first_row(&sys, &b);
    }
    thomas(sys.lower, sys.diag, sys.upper, &b);
    sol.modes[k] = std::move(b);
  }
  std::vector<double> u = from_modes(g, sol);
  subtract_mean(g, &u);
  return {ScalarField(gp, std::move(u)), defect};
}

ScalarField solve_dirichlet_div_form(const VectorField& F, const SolveOptions& opts) {
  const auto& gp = F.disk();
  const PolarGrid& g = *gp;
  const int K = top_mode(g, opts);

  PolarModes pm = vector_modes(g, F);
  ModeData sol;
  sol.modes.assign(pm.radial.modes.size(), std::vector<cplx>(g.n_r, 0.0));
  for (int k = 0; k <= K; ++k) {
    ModeSystem sys(g, k, Bc::Dirichlet);
    std::vector<cplx> b = div_form_rhs(g, pm.radial.modes[k], pm.azimuthal.modes[k], k);
    thomas(sys.lower, sys.diag, sys.upper, &b);
    sol.modes[k] = std::move(b);
  }
  return {gp, from_modes(g, sol)};
}

ConjugateSolution conjugate_reduction(const ScalarField& a, const ScalarField& b,
                                      const SolveOptions& opts) {
  const auto& gp = a.disk();
  const PolarGrid& g = *gp;
  if (b.disk().get() != gp.get())
    throw std::invalid_argument("conjugate_reduction: fields on different grids");

  VectorField gb = gradient(b);
  std::vector<double> fx(a.size()), fy(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    fx[k] = a[k] * gb.x()[k];
    fy[k] = a[k] * gb.y()[k];
  }
  ScalarField potential = solve_dirichlet_div_form(VectorField(gp, fx, fy), opts);

  // flux field: rotated gradient of the potential minus a * rotated grad b
  VectorField pc = perp_gradient(potential);
  std::vector<double> gx(a.size()), gy(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    gx[k] = pc.x()[k] - a[k] * gb.y()[k];
    gy[k] = pc.y()[k] + a[k] * gb.x()[k];
  }
  VectorField G(gp, std::move(gx), std::move(gy));
  const double curl_residual = lp_norm(curl(G), 2.0);

  // rebuild w from -lap w = -div G, dw/dnu = G.e_r, assembled from the same
  // edge values on both sides so the zero mode balances exactly
  const int K = top_mode(g, opts);
  PolarModes pm = vector_modes(g, G);
  ModeData sol;
  sol.modes.assign(pm.radial.modes.size(), std::vector<cplx>(g.n_r, 0.0));
  const double h = g.dr;
  double defect = 0.0;
  for (int k = 0; k <= K; ++k) {
    ModeSystem sys(g, k, Bc::Neumann);
    std::vector<cplx> rhsk = div_form_rhs(g, pm.radial.modes[k], pm.azimuthal.modes[k], k);
    const cplx edge_flux = edge_value(pm.radial.modes[k], g.n_r, g.n_r);
    rhsk[g.n_r - 1] += edge_flux / (g.r_nodes[g.n_r - 1] * h);
    if (k == 0) {
      const cplx s = balance_mode0(g, &rhsk);
      defect = 2.0 * std::numbers::pi * s.real();
      pin_first_row(&sys, &rhsk);
    }
    thomas(sys.lower, sys.diag, sys.upper, &rhsk);
    sol.modes[k] = std::move(rhsk);
  }
  std::vector<double> w = from_modes(g, sol);
  subtract_mean(g, &w);
  return {ScalarField(gp, std::move(w)), std::move(potential), curl_residual, defect};
}

}  // namespace wente
