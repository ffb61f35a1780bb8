#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "wente/field.hpp"

using namespace wente;

namespace {

double max_err(const VectorField& v, double ex, double ey) {
  double worst = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k)
    worst = std::max(worst, std::max(std::abs(v.x()[k] - ex), std::abs(v.y()[k] - ey)));
  return worst;
}

}  // namespace

TEST_CASE("gradient is exact on affine fields") {
  auto gd = make_polar_grid(48, 96);
  CHECK(max_err(gradient(sample(gd, [](double x, double) { return x; })), 1, 0) < 1e-12);
  CHECK(max_err(gradient(sample(gd, [](double, double) { return 4.2; })), 0, 0) < 1e-12);

  auto gp = make_halfplane_grid(64, 64, 1.0, 1.0, false);
  CHECK(max_err(gradient(sample(gp, [](double x, double y) { return 2 * x - y; })), 2, -1) <
        1e-12);
  // graded grids amplify rounding by the inverse of the smallest cell
  auto gr = make_halfplane_grid(64, 48, 1.0, 1.0, true);
  CHECK(max_err(gradient(sample(gr, [](double x, double y) { return 2 * x - y; })), 2, -1) <
        1e-9);
}

TEST_CASE("gradient of a quadratic on a 128^2 grid") {
  auto g = make_halfplane_grid(128, 128, 1.0, 1.0, false);
  VectorField v = gradient(sample(g, [](double x, double) { return x * x; }));
  double worst = 0.0;
  for (int j = 1; j + 1 < g->n_y; ++j)
    for (int i = 1; i + 1 < g->n_x; ++i) {
      const std::size_t k = g->idx(i, j);
      worst = std::max(worst, std::abs(v.x()[k] - 2 * g->x_nodes[i]));
      worst = std::max(worst, std::abs(v.y()[k]));
    }
  CHECK(worst < 1e-8);
}

TEST_CASE("perp gradient convention") {
  auto g = make_halfplane_grid(48, 48, 1.0, 1.0, false);
  CHECK(max_err(perp_gradient(sample(g, [](double, double y) { return y; })), 1, 0) < 1e-12);
  CHECK(max_err(perp_gradient(sample(g, [](double x, double) { return x; })), 0, -1) < 1e-12);

  // rotation of the gradient, orthogonal pointwise by construction
  ScalarField f = sample(g, [](double x, double y) { return std::sin(3 * x) * y * y; });
  VectorField gr = gradient(f);
  VectorField pg = perp_gradient(f);
  for (std::size_t k = 0; k < f.size(); ++k) {
    CHECK(pg.x()[k] == gr.y()[k]);
    CHECK(pg.y()[k] == -gr.x()[k]);
    CHECK(gr.x()[k] * pg.x()[k] + gr.y()[k] * pg.y()[k] == 0.0);
  }
}

TEST_CASE("jacobian of the coordinate pair is one") {
  auto g = make_polar_grid(32, 64);
  ScalarField a = sample(g, [](double x, double) { return x; });
  ScalarField b = sample(g, [](double, double y) { return y; });
  ScalarField j = jacobian(a, b);
  for (std::size_t k = 0; k < j.size(); ++k) CHECK(std::abs(j[k] - 1.0) < 1e-11);
}

TEST_CASE("jacobian antisymmetry is exact") {
  auto g = make_polar_grid(24, 48);
  ScalarField a = sample(g, [](double x, double y) { return std::cos(2 * x + y); });
  ScalarField b = sample(g, [](double x, double y) { return x * x - y; });
  ScalarField jab = jacobian(a, b);
  ScalarField jba = jacobian(b, a);
  ScalarField jaa = jacobian(a, a);
  for (std::size_t k = 0; k < jab.size(); ++k) {
    CHECK(jab[k] + jba[k] == 0.0);
    CHECK(jaa[k] == 0.0);
  }
}

TEST_CASE("jacobian rejects mismatched grids") {
  auto g1 = make_polar_grid(16, 32);
  auto g2 = make_polar_grid(16, 32);
  ScalarField a = sample(g1, [](double x, double) { return x; });
  ScalarField b = sample(g2, [](double, double y) { return y; });
  CHECK_THROWS_AS(jacobian(a, b), std::invalid_argument);
}

TEST_CASE("divergence on linear and constant fields") {
  auto gd = make_polar_grid(32, 64);
  auto gp = make_halfplane_grid(48, 48, 1.0, 1.0, false);

  ScalarField dx = sample(gd, [](double x, double) { return x; });
  ScalarField dy = sample(gd, [](double, double y) { return y; });
  ScalarField dd = divergence(VectorField(gd, dx.values(), dy.values()));
  for (std::size_t k = 0; k < dd.size(); ++k) CHECK(std::abs(dd[k] - 2.0) < 1e-10);

  ScalarField px = sample(gp, [](double x, double) { return x; });
  ScalarField py = sample(gp, [](double, double y) { return y; });
  ScalarField dp = divergence(VectorField(gp, px.values(), py.values()));
  for (std::size_t k = 0; k < dp.size(); ++k) CHECK(std::abs(dp[k] - 2.0) < 1e-10);

  std::vector<double> ones(gd->size(), 1.0);
  ScalarField dc = divergence(VectorField(gd, ones, ones));
  for (std::size_t k = 0; k < dc.size(); ++k) CHECK(std::abs(dc[k]) < 1e-11);
}

TEST_CASE("divergence of a rotated gradient is small") {
  auto g = make_polar_grid(64, 128);
  ScalarField f = sample(g, [](double x, double y) { return std::exp(x) * std::sin(y); });
  ScalarField d = divergence(perp_gradient(f));
  double worst = 0.0;
  for (int j = 1; j + 1 < g->n_r; ++j)
    for (int i = 0; i < g->n_theta; ++i)
      worst = std::max(worst, std::abs(d[g->idx(j, i)]));
  CHECK(worst < 5e-3);  // O(h^2) at h = 1/64
}

TEST_CASE("trace and tangential derivative on the circle") {
  auto g = make_polar_grid(64, 128);
  BoundaryTrace t = trace(sample(g, [](double x, double) { return x; }));
  for (std::size_t i = 0; i < t.size(); ++i)
    CHECK(std::abs(t[i] - std::cos(g->boundary->nodes[i])) < 1e-11);

  BoundaryTrace dt = tangential_derivative(t);
  const double dtheta = g->boundary->weights[0];
  const double damp = std::sin(dtheta) / dtheta;  // central-difference factor
  for (std::size_t i = 0; i < dt.size(); ++i)
    CHECK(std::abs(dt[i] + damp * std::sin(g->boundary->nodes[i])) < 1e-11);

  std::vector<double> ones(g->boundary->size(), 3.0);
  BoundaryTrace c(g->boundary, std::move(ones));
  BoundaryTrace dc = tangential_derivative(c);
  for (std::size_t i = 0; i < dc.size(); ++i) CHECK(dc[i] == 0.0);
}

TEST_CASE("mean and integral use the cell weights") {
  auto g = make_polar_grid(64, 128);
  CHECK(std::abs(integral(sample(g, [](double, double) { return 1.0; })) - std::numbers::pi) <
        1e-6);
  CHECK(std::abs(mean(sample(g, [](double x, double) { return x; }))) < 1e-12);
}

TEST_CASE("jacobian integral matches the boundary circulation") {
  auto both = [](int n) {
    auto g = make_polar_grid(n, 2 * n);
    ScalarField a = sample(g, [](double x, double) { return x; });
    ScalarField b = sample(g, [](double, double y) { return y; });
    const double lhs = integral(jacobian(a, b));
    const double rhs =
        boundary_integral(multiply(trace(a), tangential_derivative(trace(b))));
    return std::pair(lhs, rhs);
  };
  auto [l128, r128] = both(128);
  CHECK(std::abs(l128 - std::numbers::pi) < 1e-6);
  CHECK(std::abs(l128 - r128) < 1e-3);
  auto [l64, r64] = both(64);
  CHECK(std::abs(l128 - r128) < std::abs(l64 - r64) / 3.0);  // second order
}

TEST_CASE("csv serialization layouts") {
  auto g = make_polar_grid(4, 8);
  std::ostringstream os;
  write_csv(sample(g, [](double x, double y) { return x + y; }), os);
  CHECK(os.str().substr(0, 12) == "x1,x2,value\n");

  std::ostringstream ot;
  write_csv(trace(sample(g, [](double x, double) { return x; })), ot);
  CHECK(ot.str().substr(0, 9) == "x1,value\n");
}

TEST_CASE("trace interpolation is linear and compactly supported") {
  auto s = make_segment_grid(64, 1.0, false);
  std::vector<double> v(s->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 2.0 * s->nodes[i] + 1.0;
  BoundaryTrace t(s, std::move(v));
  CHECK(std::abs(interpolate(t, 0.123) - (2.0 * 0.123 + 1.0)) < 1e-12);
  CHECK(interpolate(t, 5.0) == 0.0);
  CHECK(interpolate(t, -5.0) == 0.0);
}

TEST_CASE("fields reject non-finite data and size mismatch") {
  auto g = make_polar_grid(4, 8);
  std::vector<double> bad(g->size(), 0.0);
  bad[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(ScalarField(g, bad), std::invalid_argument);
  CHECK_THROWS_AS(ScalarField(g, std::vector<double>(7, 0.0)), std::invalid_argument);
}
