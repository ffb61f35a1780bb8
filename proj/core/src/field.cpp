#include "wente/field.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "theta_fft.hpp"

namespace wente {

namespace {

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + ": non-finite value");
}

std::size_t grid_size(const GridRef& g) {
  return std::visit([](const auto& p) { return p->size(); }, g);
}

bool same_grid(const GridRef& a, const GridRef& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<DiskGridPtr>(a))
    return std::get<DiskGridPtr>(a).get() == std::get<DiskGridPtr>(b).get();
  return std::get<PlaneGridPtr>(a).get() == std::get<PlaneGridPtr>(b).get();
}

// Lagrange weights on three nodes, value and first derivative at t.
void lagrange3_value(double z0, double z1, double z2, double t, double w[3]) {
  w[0] = (t - z1) * (t - z2) / ((z0 - z1) * (z0 - z2));
  w[1] = (t - z0) * (t - z2) / ((z1 - z0) * (z1 - z2));
  w[2] = (t - z0) * (t - z1) / ((z2 - z0) * (z2 - z1));
}
void lagrange3_deriv(double z0, double z1, double z2, double t, double w[3]) {
  w[0] = (2.0 * t - z1 - z2) / ((z0 - z1) * (z0 - z2));
  w[1] = (2.0 * t - z0 - z2) / ((z1 - z0) * (z1 - z2));
  w[2] = (2.0 * t - z0 - z1) / ((z2 - z0) * (z2 - z1));
}

// d/dz along one axis of a tensor grid, three-point stencils, one-sided at
// both ends. `get`/`set` map a 1D index to the flattened array.
template <class Get, class Set>
void axis_derivative(const std::vector<double>& z, int n, Get get, Set set) {
  double w[3];
  for (int k = 0; k < n; ++k) {
    int k0 = k - 1;
    if (k == 0) k0 = 0;
    if (k == n - 1) k0 = n - 3;
    lagrange3_deriv(z[k0], z[k0 + 1], z[k0 + 2], z[k], w);
    set(k, w[0] * get(k0) + w[1] * get(k0 + 1) + w[2] * get(k0 + 2));
  }
}

struct PolarComponents {
  std::vector<double> radial;     // f or V.e_r per node
  std::vector<double> azimuthal;  // V.e_theta per node
};

}  // namespace

ScalarField::ScalarField(DiskGridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), v_(std::move(values)) {
  if (v_.size() != grid_size(grid_)) throw std::invalid_argument("ScalarField: size mismatch");
  require_finite(v_, "ScalarField");
}
ScalarField::ScalarField(PlaneGridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), v_(std::move(values)) {
  if (v_.size() != grid_size(grid_)) throw std::invalid_argument("ScalarField: size mismatch");
  require_finite(v_, "ScalarField");
}
const DiskGridPtr& ScalarField::disk() const {
  if (!on_disk()) throw std::invalid_argument("ScalarField: not on a polar grid");
  return std::get<DiskGridPtr>(grid_);
}
const PlaneGridPtr& ScalarField::plane() const {
  if (on_disk()) throw std::invalid_argument("ScalarField: not on a half-plane grid");
  return std::get<PlaneGridPtr>(grid_);
}

VectorField::VectorField(DiskGridPtr grid, std::vector<double> vx, std::vector<double> vy)
    : grid_(std::move(grid)), vx_(std::move(vx)), vy_(std::move(vy)) {
  if (vx_.size() != grid_size(grid_) || vy_.size() != vx_.size())
    throw std::invalid_argument("VectorField: size mismatch");
  require_finite(vx_, "VectorField");
  require_finite(vy_, "VectorField");
}
VectorField::VectorField(PlaneGridPtr grid, std::vector<double> vx, std::vector<double> vy)
    : grid_(std::move(grid)), vx_(std::move(vx)), vy_(std::move(vy)) {
  if (vx_.size() != grid_size(grid_) || vy_.size() != vx_.size())
    throw std::invalid_argument("VectorField: size mismatch");
  require_finite(vx_, "VectorField");
  require_finite(vy_, "VectorField");
}
const DiskGridPtr& VectorField::disk() const {
  if (!on_disk()) throw std::invalid_argument("VectorField: not on a polar grid");
  return std::get<DiskGridPtr>(grid_);
}
const PlaneGridPtr& VectorField::plane() const {
  if (on_disk()) throw std::invalid_argument("VectorField: not on a half-plane grid");
  return std::get<PlaneGridPtr>(grid_);
}

BoundaryTrace::BoundaryTrace(std::shared_ptr<const LineGrid> grid, std::vector<double> values)
    : grid_(std::move(grid)), v_(std::move(values)) {
  if (v_.size() != grid_->size()) throw std::invalid_argument("BoundaryTrace: size mismatch");
  require_finite(v_, "BoundaryTrace");
}

namespace {

// Radial derivative on the polar grid; the ring across the origin is the
// antipodal ring, so the j = 0 stencil stays centered.
std::vector<double> radial_derivative(const PolarGrid& g, const std::vector<double>& f,
                                      const std::vector<double>& f_across_origin) {
  std::vector<double> out(f.size());
  const double h = g.dr;
  for (int i = 0; i < g.n_theta; ++i) {
    for (int j = 0; j < g.n_r; ++j) {
      double d;
      if (j == 0) {
        d = (f[g.idx(1, i)] - f_across_origin[i]) / (2.0 * h);
      } else if (j == g.n_r - 1) {
        d = (3.0 * f[g.idx(j, i)] - 4.0 * f[g.idx(j - 1, i)] + f[g.idx(j - 2, i)]) / (2.0 * h);
      } else {
        d = (f[g.idx(j + 1, i)] - f[g.idx(j - 1, i)]) / (2.0 * h);
      }
      out[g.idx(j, i)] = d;
    }
  }
  return out;
}

std::vector<double> theta_derivative(const PolarGrid& g, const std::vector<double>& f) {
  std::vector<double> out(f.size());
  detail::ThetaFFT fft(g.n_theta);
  for (int j = 0; j < g.n_r; ++j)
    fft.derivative(f.data() + g.idx(j, 0), out.data() + g.idx(j, 0));
  return out;
}

VectorField gradient_disk(const ScalarField& f) {
  const auto& g = *f.disk();
  const auto& v = f.values();
  std::vector<double> across(g.n_theta);
  const int half = g.n_theta / 2;
  for (int i = 0; i < g.n_theta; ++i) across[i] = v[g.idx(0, (i + half) % g.n_theta)];

  std::vector<double> fr = radial_derivative(g, v, across);
  std::vector<double> ft = theta_derivative(g, v);

  std::vector<double> gx(v.size()), gy(v.size());
  for (int j = 0; j < g.n_r; ++j) {
    const double inv_r = 1.0 / g.r_nodes[j];
    for (int i = 0; i < g.n_theta; ++i) {
      const std::size_t k = g.idx(j, i);
      const double c = g.cos_theta[i], s = g.sin_theta[i];
      gx[k] = fr[k] * c - ft[k] * s * inv_r;
      gy[k] = fr[k] * s + ft[k] * c * inv_r;
    }
  }
  return {f.disk(), std::move(gx), std::move(gy)};
}

VectorField gradient_plane(const ScalarField& f) {
  const auto& g = *f.plane();
  const auto& v = f.values();
  std::vector<double> gx(v.size()), gy(v.size());
  for (int j = 0; j < g.n_y; ++j)
    axis_derivative(
        g.x_nodes, g.n_x, [&](int i) { return v[g.idx(i, j)]; },
        [&](int i, double d) { gx[g.idx(i, j)] = d; });
  for (int i = 0; i < g.n_x; ++i)
    axis_derivative(
        g.y_nodes, g.n_y, [&](int j) { return v[g.idx(i, j)]; },
        [&](int j, double d) { gy[g.idx(i, j)] = d; });
  return {f.plane(), std::move(gx), std::move(gy)};
}

PolarComponents polar_components(const PolarGrid& g, const VectorField& v) {
  PolarComponents pc;
  pc.radial.resize(v.size());
  pc.azimuthal.resize(v.size());
  for (int j = 0; j < g.n_r; ++j)
    for (int i = 0; i < g.n_theta; ++i) {
      const std::size_t k = g.idx(j, i);
      const double c = g.cos_theta[i], s = g.sin_theta[i];
      pc.radial[k] = v.x()[k] * c + v.y()[k] * s;
      pc.azimuthal[k] = -v.x()[k] * s + v.y()[k] * c;
    }
  return pc;
}

}  // namespace

VectorField gradient(const ScalarField& f) {
  return f.on_disk() ? gradient_disk(f) : gradient_plane(f);
}

VectorField perp_gradient(const ScalarField& f) {
  VectorField g = gradient(f);
  std::vector<double> px = g.y();
  std::vector<double> py(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) py[k] = -g.x()[k];
  if (f.on_disk()) return {f.disk(), std::move(px), std::move(py)};
  return {f.plane(), std::move(px), std::move(py)};
}

ScalarField jacobian(const ScalarField& a, const ScalarField& b) {
  if (!same_grid(a.grid(), b.grid()))
    throw std::invalid_argument("jacobian: fields live on different grids");
  VectorField ga = gradient(a);
  VectorField gb = gradient(b);
  std::vector<double> v(a.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    v[k] = ga.x()[k] * gb.y()[k] - ga.y()[k] * gb.x()[k];
  if (a.on_disk()) return {a.disk(), std::move(v)};
  return {a.plane(), std::move(v)};
}

ScalarField divergence(const VectorField& v) {
  if (!v.on_disk()) {
    const auto& g = *v.plane();
    std::vector<double> out(v.size());
    std::vector<double> dy(v.size());
    for (int j = 0; j < g.n_y; ++j)
      axis_derivative(
          g.x_nodes, g.n_x, [&](int i) { return v.x()[g.idx(i, j)]; },
          [&](int i, double d) { out[g.idx(i, j)] = d; });
    for (int i = 0; i < g.n_x; ++i)
      axis_derivative(
          g.y_nodes, g.n_y, [&](int j) { return v.y()[g.idx(i, j)]; },
          [&](int j, double d) { dy[g.idx(i, j)] = d; });
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += dy[k];
    return {v.plane(), std::move(out)};
  }

  const auto& g = *v.disk();
  PolarComponents pc = polar_components(g, v);
  // (1/r) d_r(r V_r) + (1/r) d_theta V_theta
  std::vector<double> rvr(v.size());
  for (int j = 0; j < g.n_r; ++j)
    for (int i = 0; i < g.n_theta; ++i)
      rvr[g.idx(j, i)] = g.r_nodes[j] * pc.radial[g.idx(j, i)];
  std::vector<double> across(g.n_theta);
  const int half = g.n_theta / 2;
  const double r0 = g.r_nodes[0];
  for (int i = 0; i < g.n_theta; ++i) {
    const std::size_t ant = g.idx(0, (i + half) % g.n_theta);
    // (r V_r) continued across the origin in the theta frame of column i
    across[i] = -r0 * (v.x()[ant] * g.cos_theta[i] + v.y()[ant] * g.sin_theta[i]);
  }
  std::vector<double> drv = radial_derivative(g, rvr, across);
  std::vector<double> dtv = theta_derivative(g, pc.azimuthal);
  std::vector<double> out(v.size());
  for (int j = 0; j < g.n_r; ++j) {
    const double inv_r = 1.0 / g.r_nodes[j];
    for (int i = 0; i < g.n_theta; ++i) {
      const std::size_t k = g.idx(j, i);
      out[k] = inv_r * (drv[k] + dtv[k]);
    }
  }
  return {v.disk(), std::move(out)};
}

ScalarField curl(const VectorField& v) {
  if (!v.on_disk()) {
    const auto& g = *v.plane();
    std::vector<double> out(v.size());
    std::vector<double> d2(v.size());
    for (int j = 0; j < g.n_y; ++j)
      axis_derivative(
          g.x_nodes, g.n_x, [&](int i) { return v.y()[g.idx(i, j)]; },
          [&](int i, double d) { out[g.idx(i, j)] = d; });
    for (int i = 0; i < g.n_x; ++i)
      axis_derivative(
          g.y_nodes, g.n_y, [&](int j) { return v.x()[g.idx(i, j)]; },
          [&](int j, double d) { d2[g.idx(i, j)] = d; });
    for (std::size_t k = 0; k < out.size(); ++k) out[k] -= d2[k];
    return {v.plane(), std::move(out)};
  }

  const auto& g = *v.disk();
  PolarComponents pc = polar_components(g, v);
  // (1/r) [ d_r(r V_theta) - d_theta V_r ]
  std::vector<double> rvt(v.size());
  for (int j = 0; j < g.n_r; ++j)
    for (int i = 0; i < g.n_theta; ++i)
      rvt[g.idx(j, i)] = g.r_nodes[j] * pc.azimuthal[g.idx(j, i)];
  std::vector<double> across(g.n_theta);
  const int half = g.n_theta / 2;
  const double r0 = g.r_nodes[0];
  for (int i = 0; i < g.n_theta; ++i) {
    const std::size_t ant = g.idx(0, (i + half) % g.n_theta);
    across[i] = -r0 * (-v.x()[ant] * g.sin_theta[i] + v.y()[ant] * g.cos_theta[i]);
  }
  std::vector<double> drv = radial_derivative(g, rvt, across);
  std::vector<double> dtv = theta_derivative(g, pc.radial);
  std::vector<double> out(v.size());
  for (int j = 0; j < g.n_r; ++j) {
    const double inv_r = 1.0 / g.r_nodes[j];
    for (int i = 0; i < g.n_theta; ++i) {
      const std::size_t k = g.idx(j, i);
      out[k] = inv_r * (drv[k] - dtv[k]);
    }
  }
  return {v.disk(), std::move(out)};
}

ScalarField component(const VectorField& v, int axis) {
  if (axis != 0 && axis != 1) throw std::invalid_argument("component: axis must be 0 or 1");
  std::vector<double> vals = (axis == 0) ? v.x() : v.y();
  if (v.on_disk()) return {v.disk(), std::move(vals)};
  return {v.plane(), std::move(vals)};
}

BoundaryTrace trace(const ScalarField& f) {
  if (f.on_disk()) {
    const auto& g = *f.disk();
    const auto& v = f.values();
    std::vector<double> t(g.n_theta);
    // quadratic extrapolation to r = 1 on the uniform radial grid
    for (int i = 0; i < g.n_theta; ++i)
      t[i] = (15.0 * v[g.idx(g.n_r - 1, i)] - 10.0 * v[g.idx(g.n_r - 2, i)] +
              3.0 * v[g.idx(g.n_r - 3, i)]) /
             8.0;
    return {g.boundary, std::move(t)};
  }
  const auto& g = *f.plane();
  const auto& v = f.values();
  if (g.n_y < 3) throw std::invalid_argument("trace: grid too shallow");
  std::vector<double> t(g.n_x);
  double w[3];
  lagrange3_value(g.y_nodes[0], g.y_nodes[1], g.y_nodes[2], 0.0, w);
  for (int i = 0; i < g.n_x; ++i)
    t[i] = w[0] * v[g.idx(i, 0)] + w[1] * v[g.idx(i, 1)] + w[2] * v[g.idx(i, 2)];
  return {g.boundary, std::move(t)};
}

BoundaryTrace tangential_derivative(const BoundaryTrace& t) {
  const auto& g = *t.line();
  const int n = static_cast<int>(g.size());
  std::vector<double> d(n);
  if (g.kind == LineGrid::Kind::Circle) {
    const double dtheta = g.nodes[1] - g.nodes[0];
    for (int i = 0; i < n; ++i) {
      const int ip = (i + 1) % n, im = (i + n - 1) % n;
      d[i] = (t[ip] - t[im]) / (2.0 * dtheta);
    }
  } else {
    axis_derivative(
        g.nodes, n, [&](int i) { return t[i]; }, [&](int i, double v) { d[i] = v; });
  }
  return {t.line(), std::move(d)};
}

BoundaryTrace multiply(const BoundaryTrace& a, const BoundaryTrace& b) {
  if (a.line().get() != b.line().get())
    throw std::invalid_argument("multiply: traces on different boundary grids");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
  return {a.line(), std::move(v)};
}

double integral(const ScalarField& f) {
  const std::vector<double>* areas = nullptr;
  if (f.on_disk())
    areas = &f.disk()->cell_areas;
  else
    areas = &f.plane()->cell_areas;
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) s += f[k] * (*areas)[k];
  return s;
}

double mean(const ScalarField& f) {
  const std::vector<double>* areas = nullptr;
  if (f.on_disk())
    areas = &f.disk()->cell_areas;
  else
    areas = &f.plane()->cell_areas;
  double s = 0.0, a = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    s += f[k] * (*areas)[k];
    a += (*areas)[k];
  }
  return s / a;
}

double boundary_integral(const BoundaryTrace& t) {
  double s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) s += t[i] * t.line()->weights[i];
  return s;
}

double interpolate(const BoundaryTrace& t, double coordinate) {
  const auto& g = *t.line();
  const auto& z = g.nodes;
  const int n = static_cast<int>(z.size());
  if (g.kind == LineGrid::Kind::Circle) {
    const double two_pi = g.length;
    double c = std::fmod(coordinate, two_pi);
    if (c < 0) c += two_pi;
    const double dtheta = z[1] - z[0];
    int i = static_cast<int>(c / dtheta);
    if (i >= n) i = n - 1;
    const double s = (c - z[i]) / dtheta;
    return (1.0 - s) * t[i] + s * t[(i + 1) % n];
  }
  if (coordinate <= z.front() || coordinate >= z.back()) {
    // constant continuation would leak support; the data handled here are
    // compactly supported inside the segment
    if (coordinate < z.front() - 0.5 * g.weights.front() ||
        coordinate > z.back() + 0.5 * g.weights.back())
      return 0.0;
    return coordinate <= z.front() ? t[0] : t[n - 1];
  }
  int lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (z[mid] <= coordinate ? lo : hi) = mid;
  }
  const double s = (coordinate - z[lo]) / (z[hi] - z[lo]);
  return (1.0 - s) * t[lo] + s * t[hi];
}

namespace {
void put(std::ostream& os, double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  os << buf;
}
}  // namespace

void write_csv(const ScalarField& f, std::ostream& os) {
  os << "x1,x2,value\n";
  auto row = [&](Point p, double v) {
    put(os, p.x);
    os << ',';
    put(os, p.y);
    os << ',';
    put(os, v);
    os << '\n';
  };
  if (f.on_disk()) {
    const auto& g = *f.disk();
    for (int j = 0; j < g.n_r; ++j)
      for (int i = 0; i < g.n_theta; ++i) row(g.node(j, i), f[g.idx(j, i)]);
  } else {
    const auto& g = *f.plane();
    for (int j = 0; j < g.n_y; ++j)
      for (int i = 0; i < g.n_x; ++i) row(g.node(i, j), f[g.idx(i, j)]);
  }
}

void write_csv(const BoundaryTrace& t, std::ostream& os) {
  os << "x1,value\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    put(os, t.line()->nodes[i]);
    os << ',';
    put(os, t[i]);
    os << '\n';
  }
}

}  // namespace wente
