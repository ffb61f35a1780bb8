#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wente/counterexamples.hpp"
#include "wente/halfplane.hpp"
#include "wente/norms.hpp"
#include "wente/poisson.hpp"

using namespace wente;

namespace {

double smooth_bump(double x, double y, double cx, double cy, double rad) {
  const double r = std::hypot(x - cx, y - cy) / rad;
  return r < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r * r)) : 0.0;
}

}  // namespace

TEST_CASE("kernel value, symmetry, and failure modes") {
  CHECK(neumann_green({0, 1}, {1, 1}) ==
        doctest::Approx(-std::log(5.0) / (4 * std::numbers::pi)).epsilon(1e-12));

  std::mt19937_64 rng(5u);
  std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(0.01, 2.0);
  for (int k = 0; k < 1000; ++k) {
    const Point p{ux(rng), uy(rng)}, q{ux(rng), uy(rng)};
    CHECK(neumann_green(p, q) == neumann_green(q, p));
  }
  CHECK_THROWS_AS(neumann_green({0, 1}, {0, 1}), std::domain_error);
  CHECK_THROWS_AS(neumann_green({0, -1}, {0, 1}), std::domain_error);
}

TEST_CASE("kernel normal derivative vanishes on the boundary") {
  auto raw = [](Point x, Point y) {
    const double dx = x.x - y.x;
    const double d2 = dx * dx + (x.y - y.y) * (x.y - y.y);
    const double i2 = dx * dx + (x.y + y.y) * (x.y + y.y);
    return -(std::log(d2) + std::log(i2)) / (4 * std::numbers::pi);
  };
  std::mt19937_64 rng(6u);
  std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(0.05, 2.0);
  const double delta = 1e-5;
  for (int k = 0; k < 100; ++k) {
    const Point x{ux(rng), uy(rng)};
    const double y1 = ux(rng);
    const double fd = (raw(x, {y1, delta}) - raw(x, {y1, -delta})) / (2 * delta);
    CHECK(std::abs(fd) < 1e-6);
  }
}

TEST_CASE("green eval policy validation") {
  GreenEval q;
  q.exclusion_radius_cells = 0.0;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  q.exclusion_radius_cells = 1.5;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
}

TEST_CASE("interior representation of degenerate data") {
  auto g = make_halfplane_grid(96, 64, 1.0, 1.0, true);
  ScalarField zero = sample(g, [](double, double) { return 0.0; });
  ScalarField b = sample(g, [](double x, double y) { return smooth_bump(x, y, 0, 0.4, 0.3); });
  CHECK(represent_interior(zero, b, {0.1, 0.3}) == 0.0);
  CHECK(represent_interior(b, zero, {0.1, 0.3}) == 0.0);

  // constant a kills the volume term; only the boundary convolution remains
  ScalarField c = sample(g, [](double, double) { return 2.0; });
  BoundaryTrace density = multiply(trace(c), tangential_derivative(trace(b)));
  const Point x{0.05, 0.37};
  double boundary = 0.0;
  for (std::size_t i = 0; i < density.size(); ++i) {
    const double dt = density.line()->nodes[i] - x.x;
    boundary += 0.5 * std::log(dt * dt + x.y * x.y) * density[i] * density.line()->weights[i];
  }
  boundary /= std::numbers::pi;
  CHECK(represent_interior(c, b, x) == doctest::Approx(boundary).epsilon(1e-12));

  CHECK_THROWS_AS(represent_interior(c, b, Point{0.0, -0.5}), std::invalid_argument);
}

TEST_CASE("interior representation reproduces a volume potential") {
  // a = x1 (cut off away from the data), b = B1(x) B2(y) with B2 a bump
  // primitive structure: the discrete Jacobian equals B1 B2' on the support
  // of b and the boundary density vanishes, so the solution is the plain
  // kernel potential of g = B1 B2', computable by independent quadrature.
  auto g = make_halfplane_grid(192, 128, 1.0, 1.0, true);
  auto B1 = [](double x) { return smooth_bump(x, 0, 0, 0, 0.18); };
  auto B2 = [](double y) { return smooth_bump(0, y, 0, 0.32, 0.1); };
  ScalarField a = sample(g, [](double x, double y) {
    const double r = std::hypot(x, y);
    if (r >= 0.8) return 0.0;
    if (r <= 0.55) return x;
    return x * smooth_bump(r, 0, 0.55, 0, 0.25);
  });
  ScalarField b = sample(g, [&](double x, double y) { return B1(x) * B2(y); });

  // oracle: midpoint quadrature of the kernel against the analytic density
  auto oracle = [&](Point p) {
    const int m = 600;
    const double x0 = -0.2, x1 = 0.2, y0 = 0.2, y1 = 0.44;
    const double hx = (x1 - x0) / m, hy = (y1 - y0) / m;
    double s = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const double x = x0 + (i + 0.5) * hx;
        const double y = y0 + (j + 0.5) * hy;
        const double d = (B2(y + 1e-6) - B2(y - 1e-6)) / 2e-6;
        s += neumann_green(p, {x, y}) * B1(x) * d * hx * hy;
      }
    return s;
  };
  double scale = 0.0;
  Point pts[3] = {{0.0, 0.25}, {0.3, 0.5}, {-0.25, 0.2}};
  double want[3], got[3];
  for (int k = 0; k < 3; ++k) {
    want[k] = oracle(pts[k]);
    got[k] = represent_interior(a, b, pts[k]);
    scale = std::max(scale, std::abs(want[k]));
  }
  for (int k = 0; k < 3; ++k) CHECK(std::abs(got[k] - want[k]) <= 0.05 * scale);
}

TEST_CASE("interior representation agrees with the disk pipeline through the map") {
  auto g = make_halfplane_grid(2 * 192, 192, 1.0, 1.0, true);
  auto fa = [](double x, double y) { return smooth_bump(x, y, 0.0, 0.45, 0.25); };
  auto fb = [](double x, double y) { return smooth_bump(x, y, 0.1, 0.35, 0.22); };
  ScalarField ah = sample(g, fa);
  ScalarField bh = sample(g, fb);

  auto dg = make_polar_grid(192, 384);
  ScalarField ad = sample(dg, [&](double x, double y) {
    const Point w = cayley_disk_to_halfplane({x, y});
    return fa(w.x, w.y);
  });
  ScalarField bd = sample(dg, [&](double x, double y) {
    const Point w = cayley_disk_to_halfplane({x, y});
    return fb(w.x, w.y);
  });
  ConjugateSolution conj = conjugate_reduction(ad, bd);

  const Point pts[3] = {{0.05, 0.4}, {-0.2, 0.6}, {0.15, 0.25}};
  double whp[3], wdk[3];
  for (int k = 0; k < 3; ++k) {
    whp[k] = represent_interior(ah, bh, pts[k]);
    const Point z = cayley_halfplane_to_disk(pts[k]);
    double best = 1e9;
    std::size_t bk = 0;
    for (int j = 0; j < dg->n_r; ++j)
      for (int i = 0; i < dg->n_theta; ++i) {
        const Point q = dg->node(j, i);
        const double d = std::hypot(q.x - z.x, q.y - z.y);
        if (d < best) {
          best = d;
          bk = dg->idx(j, i);
        }
      }
    wdk[k] = conj.w[bk];
  }
  // solutions are defined up to a constant: compare increments
  const double spread = std::max(std::abs(whp[1] - whp[0]), std::abs(whp[2] - whp[0]));
  CHECK(std::abs((whp[1] - whp[0]) - (wdk[1] - wdk[0])) <= 0.02 * spread);
  CHECK(std::abs((whp[2] - whp[0]) - (wdk[2] - wdk[0])) <= 0.02 * spread);
}

TEST_CASE("line term vanishes for even boundary data") {
  auto g = make_halfplane_grid(2 * 96, 96, 1.0, 1.0, true);
  FieldPair p = build_pair({Family::H1Blowup, 0.25, 1e-3}, g);  // b even in x1
  TraceTerms t = represent_trace_terms(p.a, p.b, 0.0);
  CHECK(std::abs(t.line) < 1e-12);
}

TEST_CASE("one-sided data reduce the line term to the half-line integral") {
  auto g = make_halfplane_grid(2 * 160, 160, 1.0, 1.0, true);
  const double beta = 0.75, eps = 1e-2;
  FieldPair p = build_pair({Family::LinfBlowup, beta, eps}, g);
  TraceTerms t = represent_trace_terms(p.a, p.b, 0.0);

  // independent quadrature of -(1/pi) int (1/y) a+(y) b(y) dy with the
  // analytic boundary values of the family
  const double shift = step_family_cutoff() * eps;
  auto a_trace = [&](double y) { return psi(std::abs(y - shift)); };
  auto b_trace = [&](double y) {
    return y > shift ? f_beta(y - shift, beta) : 0.0;
  };
  const int m = 200000;
  const double u_lo = std::log(shift * 0.9), u_hi = std::log(0.9);
  const double du = (u_hi - u_lo) / m;
  double s = 0.0;
  for (int i = 0; i < m; ++i) {
    const double y = std::exp(u_lo + (i + 0.5) * du);
    const double ap = 0.5 * (a_trace(y) + a_trace(-y));
    s += ap * b_trace(y) * du;  // (1/y) dy = du
  }
  const double want = -s / std::numbers::pi;
  CHECK(t.line == doctest::Approx(want).epsilon(0.02));
  // the symmetrized volume term stays controlled by the data energies
  CHECK(std::abs(t.volume) <= 0.5 * h1_seminorm(p.a) * h1_seminorm(p.b));
}

TEST_CASE("zero-flux trace assembles as the sum of its three terms") {
  auto g = make_halfplane_grid(2 * 96, 96, 1.0, 1.0, true);
  FieldPair p = build_pair({Family::H1Blowup, 0.25, 1e-2}, g);
  AssembledTrace at = assemble_v1_trace(p.a, p.b);
  for (std::size_t i = 0; i < at.total.size(); ++i)
    CHECK(at.total[i] ==
          doctest::Approx(at.volume[i] + at.line[i] + at.log_kernel[i]).epsilon(1e-13));

  V1TraceTerms v = represent_v1_trace_terms(p.a, p.b, 0.11);
  CHECK(represent_v1_trace(p.a, p.b, 0.11) ==
        doctest::Approx(v.volume + v.line + v.log_kernel).epsilon(1e-13));

  ScalarField zero = sample(g, [](double, double) { return 0.0; });
  CHECK(represent_v1_trace(zero, p.b, 0.0) == 0.0);
}

TEST_CASE("log-kernel term grows under refinement of the rough family") {
  auto g = make_halfplane_grid(2 * 128, 128, 1.0, 1.0, true);
  double prev_log = 0.0, prev_vol = 0.0, prev_line = 0.0;
  bool first = true;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    FieldPair p = build_pair({Family::H1Blowup, 0.25, eps}, g);
    AssembledTrace at = assemble_v1_trace(p.a, p.b);
    const double s_log = gagliardo_h12(at.log_kernel);
    const double s_vol = gagliardo_h12(at.volume);
    const double s_line = gagliardo_h12(at.line);
    if (!first) {
      CHECK(s_log > prev_log);
      CHECK(std::abs(s_vol / prev_vol - 1.0) < 0.25);
      CHECK(std::abs(s_line / prev_line - 1.0) < 0.25);
    }
    prev_log = s_log;
    prev_vol = s_vol;
    prev_line = s_line;
    first = false;
  }
}

TEST_CASE("interior values converge to the boundary representation") {
  auto g = make_halfplane_grid(2 * 160, 160, 1.0, 1.0, true);
  ScalarField a = sample(g, [](double x, double y) { return smooth_bump(x, y, 0, 0.45, 0.25); });
  ScalarField b =
      sample(g, [](double x, double y) { return smooth_bump(x, y, 0.1, 0.35, 0.22); });
  const double x1 = 0.15;
  const double tv = represent_trace(a, b, x1);
  // local boundary spacing near x1
  double w = 0.0;
  for (std::size_t i = 0; i < g->boundary->size(); ++i)
    if (std::abs(g->boundary->nodes[i] - x1) < 0.01) w = g->boundary->weights[i];
  const double iv = represent_interior(a, b, {x1, 2.0 * w});
  CHECK(std::abs(iv - tv) <= 0.02 * std::abs(tv));
}

TEST_CASE("trace representation is stable under grid doubling") {
  auto value = [](int n) {
    auto g = make_halfplane_grid(2 * n, n, 1.0, 1.0, true);
    ScalarField a =
        sample(g, [](double x, double y) { return smooth_bump(x, y, 0, 0.45, 0.25); });
    ScalarField b =
        sample(g, [](double x, double y) { return smooth_bump(x, y, 0.1, 0.35, 0.22); });
    return represent_trace(a, b, 0.0);
  };
  const double v1 = value(96), v2 = value(192);
  CHECK(std::abs(v2 - v1) <= 0.01 * std::abs(v2));
}

TEST_CASE("self-cell handling matters and stays consistent") {
  auto g = make_halfplane_grid(96, 64, 1.0, 1.0, false);
  ScalarField a = sample(g, [](double x, double y) { return smooth_bump(x, y, 0, 0.5, 0.4); });
  ScalarField b = sample(g, [](double x, double y) { return smooth_bump(x, y, 0.1, 0.4, 0.3); });
  const Point x{0.05, 0.42};
  GreenEval drop;
  drop.policy = GreenEval::SelfCell::Exclude;
  const double with_cell = represent_interior(a, b, x);
  const double without = represent_interior(a, b, x, drop);
  CHECK(with_cell != without);
  CHECK(std::abs(with_cell - without) < 5e-3);  // one-cell effect
}
