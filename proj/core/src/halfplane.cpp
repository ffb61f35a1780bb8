#include "wente/halfplane.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace wente {

namespace {

constexpr double kPi = std::numbers::pi;

// int_[0,a] int_[0,b] log(s^2 + t^2) ds dt
double quadrant_log_integral(double a, double b) {
  if (a <= 0.0 || b <= 0.0) return 0.0;
  return a * b * (std::log(a * a + b * b) - 3.0) + a * a * std::atan(b / a) +
         b * b * std::atan(a / b);
}

// cell average of log|y - x| over the rectangle [xl,xh] x [yl,yh]
// containing x; exact for the constant density.
double log_cell_average(double xl, double xh, double yl, double yh, Point x) {
  const double i1 = quadrant_log_integral(x.x - xl, x.y - yl);
  const double i2 = quadrant_log_integral(x.x - xl, yh - x.y);
  const double i3 = quadrant_log_integral(xh - x.x, x.y - yl);
  const double i4 = quadrant_log_integral(xh - x.x, yh - x.y);
  const double area = (xh - xl) * (yh - yl);
  return 0.5 * (i1 + i2 + i3 + i4) / area;
}

std::vector<double> edges_from(const std::vector<double>& widths, double origin) {
  std::vector<double> e(widths.size() + 1);
  e[0] = origin;
  for (std::size_t k = 0; k < widths.size(); ++k) e[k + 1] = e[k] + widths[k];
  return e;
}

int find_cell(const std::vector<double>& edges, double c) {
  if (c < edges.front() || c > edges.back()) return -1;
  int lo = 0, hi = static_cast<int>(edges.size()) - 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (edges[mid] <= c ? lo : hi) = mid;
  }
  return lo;
}

// G(u) = u log|u| - u, the antiderivative of log|u|; used for the
// containing cell of the boundary log kernel.
double log_antiderivative(double u) {
  if (u == 0.0) return 0.0;
  return u * std::log(std::abs(u)) - u;
}

struct BoundaryData {
  BoundaryTrace a;
  BoundaryTrace b;
  BoundaryTrace density;  // a * d_tau b
};

BoundaryData boundary_data(const ScalarField& a, const ScalarField& b) {
  BoundaryTrace ta = trace(a);
  BoundaryTrace tb = trace(b);
  BoundaryTrace density = multiply(ta, tangential_derivative(tb));
  return {std::move(ta), std::move(tb), std::move(density)};
}

void check_plane_pair(const ScalarField& a, const ScalarField& b) {
  if (a.plane().get() != b.plane().get())
    throw std::invalid_argument("representation: fields on different grids");
}

TraceTerms trace_terms_impl(const HalfPlaneGrid& g, const ScalarField& a,
                            const VectorField& perp_b, const BoundaryData& bd, double x1) {
  TraceTerms out;
  // volume term, symmetrized weight kills the kernel singularity
  for (int j = 0; j < g.n_y; ++j) {
    const double y2 = g.y_nodes[j];
    for (int i = 0; i < g.n_x; ++i) {
      const std::size_t k = g.idx(i, j);
      const double px = perp_b.x()[k], py = perp_b.y()[k];
      if (px == 0.0 && py == 0.0) continue;
      const double dx = g.x_nodes[i] - x1;
      const double rho2 = dx * dx + y2 * y2;
      const double rho = std::sqrt(rho2);
      const double aplus =
          0.5 * (interpolate(bd.a, x1 + rho) + interpolate(bd.a, x1 - rho));
      const double weight = a[k] - aplus;
      if (weight == 0.0) continue;
      out.volume += (dx * px + y2 * py) / rho2 * weight * g.cell_areas[k];
    }
  }
  out.volume /= kPi;

  // one-sided line term on the positive nodes
  for (std::size_t i = 0; i < bd.b.size(); ++i) {
    const double t = bd.b.line()->nodes[i];
    if (t <= 0.0) continue;
    const double aplus = 0.5 * (interpolate(bd.a, x1 + t) + interpolate(bd.a, x1 - t));
    const double bdiff = interpolate(bd.b, x1 - t) - interpolate(bd.b, x1 + t);
    out.line += aplus * bdiff / t * bd.b.line()->weights[i];
  }
  out.line /= kPi;
  return out;
}

double log_kernel_term(const BoundaryData& bd, double x1) {
  const auto& line = *bd.density.line();
  const std::vector<double> edges = edges_from(line.weights, line.nodes.front() -
                                                                 0.5 * line.weights.front());
  double s = 0.0;
  for (std::size_t i = 0; i < bd.density.size(); ++i) {
    const double t = line.nodes[i];
    const double w = line.weights[i];
    const double lo = edges[i] - x1, hi = edges[i + 1] - x1;
    double kern;
    if (lo < 0.0 && hi > 0.0) {
      // containing cell: exact integral of the kernel against a constant
      kern = (log_antiderivative(hi) - log_antiderivative(lo)) / w;
    } else {
      kern = std::log(std::abs(t - x1));
    }
    s += kern * bd.density[i] * w;
  }
  return -s / kPi;
}

}  // namespace

void GreenEval::validate() const {
  if (!(exclusion_radius_cells > 0.0 && exclusion_radius_cells <= 1.0))
    throw std::invalid_argument("GreenEval: exclusion radius must lie in (0, 1] cells");
}

double neumann_green(Point x, Point y) {
  if (x.y < 0.0 || y.y < 0.0)
    throw std::domain_error("neumann_green: points must lie in the closed half-plane");
  const double dx = x.x - y.x;
  const double dy = x.y - y.y;
  const double sy = x.y + y.y;
  const double d2 = dx * dx + dy * dy;
  if (d2 == 0.0) throw std::domain_error("neumann_green: coincident points");
  const double i2 = dx * dx + sy * sy;
  return -(std::log(d2) + std::log(i2)) / (4.0 * kPi);
}

double represent_interior(const ScalarField& a, const ScalarField& b, Point x,
                          const GreenEval& quad) {
  quad.validate();
  check_plane_pair(a, b);
  const auto& g = *a.plane();
  if (!(x.y > 0.0) || std::abs(x.x) > g.half_width || x.y > g.height)
    throw std::invalid_argument("represent_interior: point outside the grid");

  ScalarField J = jacobian(a, b);
  const std::vector<double> xe = edges_from(g.x_widths, -g.half_width);
  const std::vector<double> ye = edges_from(g.y_widths, 0.0);
  const int ci = find_cell(xe, x.x);
  const int cj = find_cell(ye, x.y);

  double volume = 0.0;
  for (int j = 0; j < g.n_y; ++j) {
    for (int i = 0; i < g.n_x; ++i) {
      const std::size_t k = g.idx(i, j);
      const double jac = J[k];
      if (jac == 0.0) continue;
      if (i == ci && j == cj) {
        if (quad.policy == GreenEval::SelfCell::Exclude) continue;
        // split the kernel: analytic average of log|y-x| over the cell,
        // midpoint value for the smooth image part
        const double direct = log_cell_average(xe[i], xe[i + 1], ye[j], ye[j + 1], x);
        const double dx = x.x - g.x_nodes[i];
        const double sy = x.y + g.y_nodes[j];
        const double image = 0.5 * std::log(dx * dx + sy * sy);
        volume += -(direct + image) / (2.0 * kPi) * jac * g.cell_areas[k];
        continue;
      }
      if (quad.policy == GreenEval::SelfCell::Exclude) {
        const double scale = std::max(g.x_widths[i], g.y_widths[j]);
        const double dx = x.x - g.x_nodes[i], dy = x.y - g.y_nodes[j];
        if (std::sqrt(dx * dx + dy * dy) < quad.exclusion_radius_cells * scale) continue;
      }
      volume += neumann_green(x, g.node(i, j)) * jac * g.cell_areas[k];
    }
  }

  BoundaryData bd = boundary_data(a, b);
  double boundary = 0.0;
  for (std::size_t i = 0; i < bd.density.size(); ++i) {
    const double dt = bd.density.line()->nodes[i] - x.x;
    boundary += 0.5 * std::log(dt * dt + x.y * x.y) * bd.density[i] *
                bd.density.line()->weights[i];
  }
  return volume + boundary / kPi;
}

TraceTerms represent_trace_terms(const ScalarField& a, const ScalarField& b, double x1) {
  check_plane_pair(a, b);
  BoundaryData bd = boundary_data(a, b);
  VectorField pb = perp_gradient(b);
  return trace_terms_impl(*a.plane(), a, pb, bd, x1);
}

double represent_trace(const ScalarField& a, const ScalarField& b, double x1) {
  return represent_trace_terms(a, b, x1).total();
}

V1TraceTerms represent_v1_trace_terms(const ScalarField& a, const ScalarField& b, double x1) {
  check_plane_pair(a, b);
  BoundaryData bd = boundary_data(a, b);
  VectorField pb = perp_gradient(b);
  TraceTerms t = trace_terms_impl(*a.plane(), a, pb, bd, x1);
  return {t.volume, t.line, log_kernel_term(bd, x1)};
}

double represent_v1_trace(const ScalarField& a, const ScalarField& b, double x1) {
  return represent_v1_trace_terms(a, b, x1).total();
}

namespace {

AssembledTrace assemble_impl(const ScalarField& a, const ScalarField& b, bool with_log) {
  check_plane_pair(a, b);
  const auto& g = *a.plane();
  BoundaryData bd = boundary_data(a, b);
  VectorField pb = perp_gradient(b);
  const std::size_t n = g.boundary->size();
  std::vector<double> tv(n), tl(n), tk(n, 0.0), tt(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = g.boundary->nodes[i];
    TraceTerms t = trace_terms_impl(g, a, pb, bd, x1);
    tv[i] = t.volume;
    tl[i] = t.line;
    if (with_log) tk[i] = log_kernel_term(bd, x1);
    tt[i] = tv[i] + tl[i] + tk[i];
  }
  return {{g.boundary, std::move(tv)},
          {g.boundary, std::move(tl)},
          {g.boundary, std::move(tk)},
          {g.boundary, std::move(tt)}};
}

}  // namespace

AssembledTrace assemble_trace(const ScalarField& a, const ScalarField& b) {
  return assemble_impl(a, b, false);
}

AssembledTrace assemble_v1_trace(const ScalarField& a, const ScalarField& b) {
  return assemble_impl(a, b, true);
}

}  // namespace wente
