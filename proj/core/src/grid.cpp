#include "wente/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wente {

namespace {

constexpr double kMaxGradingRatio = 1.2;
constexpr double kTargetDepth = 1e-6;  // smallest cell the grading aims for

// Smallest grading ratio in (1, 1.2] whose n-cell geometric partition of
// (0, extent] starts below the target depth; more cells buy a gentler
// grading and better relative resolution at every scale.
double grading_ratio(double extent, int n) {
  auto depth = [&](double q) { return extent * (q - 1.0) / (std::pow(q, n) - 1.0); };
  if (depth(kMaxGradingRatio) > kTargetDepth) return kMaxGradingRatio;
  double lo = 1.0005, hi = kMaxGradingRatio;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (depth(mid) > kTargetDepth ? lo : hi) = mid;
  }
  return hi;
}

// Geometric partition of (0, extent] into n cells, smallest cell at the
// origin.
std::vector<double> graded_widths(double extent, int n) {
  const double q = grading_ratio(extent, n);
  const double h0 = extent * (q - 1.0) / (std::pow(q, n) - 1.0);
  std::vector<double> w(n);
  double wk = h0;
  for (int k = 0; k < n; ++k) {
    w[k] = wk;
    wk *= q;
  }
  // absorb rounding into the outermost cell so the widths sum exactly
  double s = 0.0;
  for (int k = 0; k < n - 1; ++k) s += w[k];
  w[n - 1] = extent - s;
  return w;
}

void centers_from_widths(const std::vector<double>& w, double origin,
                         std::vector<double>* nodes) {
  nodes->resize(w.size());
  double edge = origin;
  for (std::size_t k = 0; k < w.size(); ++k) {
    (*nodes)[k] = edge + 0.5 * w[k];
    edge += w[k];
  }
}

}  // namespace

DiskGridPtr make_polar_grid(int n_r, int n_theta) {
  if (n_r < 4) throw std::invalid_argument("make_polar_grid: n_r must be >= 4");
  if (n_theta < 8 || n_theta % 2 != 0)
    throw std::invalid_argument("make_polar_grid: n_theta must be even and >= 8");

  auto g = std::make_shared<PolarGrid>();
  g->n_r = n_r;
  g->n_theta = n_theta;
  g->dr = 1.0 / n_r;
  g->dtheta = 2.0 * std::numbers::pi / n_theta;

  g->r_nodes.resize(n_r);
  for (int j = 0; j < n_r; ++j) g->r_nodes[j] = (j + 0.5) * g->dr;

  g->theta_nodes.resize(n_theta);
  g->cos_theta.resize(n_theta);
  g->sin_theta.resize(n_theta);
  for (int i = 0; i < n_theta; ++i) {
    g->theta_nodes[i] = i * g->dtheta;
    g->cos_theta[i] = std::cos(g->theta_nodes[i]);
    g->sin_theta[i] = std::sin(g->theta_nodes[i]);
  }

  g->cell_areas.resize(g->size());
  for (int j = 0; j < n_r; ++j) {
    const double a = g->r_nodes[j] * g->dr * g->dtheta;
    for (int i = 0; i < n_theta; ++i) g->cell_areas[g->idx(j, i)] = a;
  }

  auto circle = std::make_shared<LineGrid>();
  circle->kind = LineGrid::Kind::Circle;
  circle->nodes = g->theta_nodes;
  circle->weights.assign(n_theta, g->dtheta);
  circle->length = 2.0 * std::numbers::pi;
  g->boundary = circle;

  return g;
}

PlaneGridPtr make_halfplane_grid(int n_x, int n_y, double half_width,
                                 double height, bool refine) {
  if (n_x <= 0 || n_y <= 0)
    throw std::invalid_argument("make_halfplane_grid: node counts must be positive");
  if (half_width <= 0.0 || height <= 0.0)
    throw std::invalid_argument("make_halfplane_grid: extents must be positive");
  if (refine && n_x % 2 != 0)
    throw std::invalid_argument("make_halfplane_grid: refined grids need even n_x");

  auto g = std::make_shared<HalfPlaneGrid>();
  g->n_x = n_x;
  g->n_y = n_y;
  g->half_width = half_width;
  g->height = height;
  g->refined = refine;

  if (refine) {
    std::vector<double> half = graded_widths(half_width, n_x / 2);
    g->x_widths.assign(half.rbegin(), half.rend());
    g->x_widths.insert(g->x_widths.end(), half.begin(), half.end());
    g->y_widths = graded_widths(height, n_y);
  } else {
    g->x_widths.assign(n_x, 2.0 * half_width / n_x);
    g->y_widths.assign(n_y, height / n_y);
  }
  centers_from_widths(g->x_widths, -half_width, &g->x_nodes);
  centers_from_widths(g->y_widths, 0.0, &g->y_nodes);

  g->cell_areas.resize(g->size());
  for (int j = 0; j < n_y; ++j)
    for (int i = 0; i < n_x; ++i)
      g->cell_areas[g->idx(i, j)] = g->x_widths[i] * g->y_widths[j];

  auto line = std::make_shared<LineGrid>();
  line->kind = LineGrid::Kind::Segment;
  line->nodes = g->x_nodes;
  line->weights = g->x_widths;
  line->length = 2.0 * half_width;
  g->boundary = line;

  return g;
}

std::shared_ptr<const LineGrid> make_segment_grid(int n, double half_width,
                                                  bool refine) {
  if (n <= 0 || (refine && n % 2 != 0))
    throw std::invalid_argument("make_segment_grid: bad node count");
  if (half_width <= 0.0)
    throw std::invalid_argument("make_segment_grid: bad extent");
  auto line = std::make_shared<LineGrid>();
  line->kind = LineGrid::Kind::Segment;
  if (refine) {
    std::vector<double> half = graded_widths(half_width, n / 2);
    line->weights.assign(half.rbegin(), half.rend());
    line->weights.insert(line->weights.end(), half.begin(), half.end());
  } else {
    line->weights.assign(n, 2.0 * half_width / n);
  }
  std::vector<double> nodes;
  centers_from_widths(line->weights, -half_width, &nodes);
  line->nodes = std::move(nodes);
  line->length = 2.0 * half_width;
  return line;
}

Point cayley_disk_to_halfplane(Point z) {
  const double den = (1.0 + z.x) * (1.0 + z.x) + z.y * z.y;
  if (den < 1e-300)
    throw std::domain_error("cayley_disk_to_halfplane: pole at z = -1");
  return {2.0 * z.y / den, (1.0 - z.x * z.x - z.y * z.y) / den};
}

Point cayley_halfplane_to_disk(Point w) {
  if (w.y < 0.0)
    throw std::domain_error("cayley_halfplane_to_disk: point below the boundary");
  const double den = w.x * w.x + (1.0 + w.y) * (1.0 + w.y);
  return {(1.0 - w.x * w.x - w.y * w.y) / den, 2.0 * w.x / den};
}

}  // namespace wente
