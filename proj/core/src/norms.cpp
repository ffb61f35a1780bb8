#include "wente/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace wente {

namespace {

const std::vector<double>& areas_of(const ScalarField& f) {
  return f.on_disk() ? f.disk()->cell_areas : f.plane()->cell_areas;
}
const std::vector<double>& areas_of(const VectorField& f) {
  return f.on_disk() ? f.disk()->cell_areas : f.plane()->cell_areas;
}

double lp_weighted(const std::vector<double>& mag, const std::vector<double>& w, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  double s = 0.0;
  for (std::size_t k = 0; k < mag.size(); ++k) s += std::pow(std::abs(mag[k]), p) * w[k];
  return std::pow(s, 1.0 / p);
}

double layer_cake(std::vector<std::pair<double, double>> va) {
  // descending by magnitude; exact for the discrete step distribution
  std::sort(va.begin(), va.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  double cum = 0.0, out = 0.0;
  for (std::size_t k = 0; k < va.size(); ++k) {
    cum += va[k].second;
    const double next = (k + 1 < va.size()) ? va[k + 1].first : 0.0;
    out += std::sqrt(cum) * (va[k].first - next);
  }
  return out;
}

}  // namespace

double lp_norm(const ScalarField& f, double p) { return lp_weighted(f.values(), areas_of(f), p); }

double lp_norm(const VectorField& v, double p) {
  std::vector<double> mag(v.size());
  for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = std::hypot(v.x()[k], v.y()[k]);
  return lp_weighted(mag, areas_of(v), p);
}

double linf_norm(const ScalarField& f) {
  double m = 0.0;
  for (double x : f.values()) m = std::max(m, std::abs(x));
  return m;
}

double linf_norm(const VectorField& v) {
  double m = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) m = std::max(m, std::hypot(v.x()[k], v.y()[k]));
  return m;
}

double h1_seminorm(const ScalarField& f) { return lp_norm(gradient(f), 2.0); }

double lorentz_l21(const ScalarField& f) {
  const auto& w = areas_of(f);
  std::vector<std::pair<double, double>> va(f.size());
  for (std::size_t k = 0; k < va.size(); ++k) va[k] = {std::abs(f[k]), w[k]};
  return layer_cake(std::move(va));
}

double lorentz_l21(const VectorField& v) {
  const auto& w = areas_of(v);
  std::vector<std::pair<double, double>> va(v.size());
  for (std::size_t k = 0; k < va.size(); ++k)
    va[k] = {std::hypot(v.x()[k], v.y()[k]), w[k]};
  return layer_cake(std::move(va));
}

double gagliardo_h12(const BoundaryTrace& t) {
  const auto& g = *t.line();
  const int n = static_cast<int>(g.size());
  const bool circle = g.kind == LineGrid::Kind::Circle;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d;
      if (circle)
        d = 2.0 * std::abs(std::sin(0.5 * (g.nodes[i] - g.nodes[j])));
      else
        d = g.nodes[j] - g.nodes[i];
      const double diff = t[i] - t[j];
      s += (diff * diff) / (d * d) * g.weights[i] * g.weights[j];
    }
  }
  return std::sqrt(2.0 * s);
}

double duality_pairing(const BoundaryTrace& f, const BoundaryTrace& g) {
  if (f.line().get() != g.line().get())
    throw std::invalid_argument("duality_pairing: traces on different boundary grids");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i] * f.line()->weights[i];
  return s;
}

void NormReport::write_csv(std::ostream& os) const {
  os << "norm,value," << n1_label << ',' << n2_label << '\n';
  char buf[32];
  for (const auto& [name, value] : entries) {
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    os << name << ',' << buf << ',' << n1 << ',' << n2 << '\n';
  }
}

}  // namespace wente
