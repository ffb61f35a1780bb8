#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wente/field.hpp"

namespace wente {

double lp_norm(const ScalarField& f, double p);
double lp_norm(const VectorField& v, double p);
double linf_norm(const ScalarField& f);
double linf_norm(const VectorField& v);

/// L2 norm of the gradient.
double h1_seminorm(const ScalarField& f);

/// The layer-cake functional  integral_0^inf |{|f| >= lambda}|^(1/2) dlambda,
/// evaluated exactly for the step distribution of the sampled field: node
/// values are sorted by magnitude and the cumulative cell area between
/// consecutive levels contributes sqrt(area) * (level gap).
double lorentz_l21(const ScalarField& f);
double lorentz_l21(const VectorField& v);

/// Half-order boundary seminorm: the double sum over node pairs of
/// |t_i - t_j|^2 / d_ij^2 * w_i * w_j with the diagonal excluded; d is the
/// chordal distance on the circle and |x_i - x_j| on a segment.
double gagliardo_h12(const BoundaryTrace& t);

/// Weighted L2 pairing of two traces on the same boundary grid.
double duality_pairing(const BoundaryTrace& f, const BoundaryTrace& g);

/// Named norm values plus grid resolution metadata.
struct NormReport {
  std::vector<std::pair<std::string, double>> entries;
  int n1 = 0;
  int n2 = 0;
  std::string n1_label = "n_r";
  std::string n2_label = "n_theta";

  void add(std::string name, double value) { entries.emplace_back(std::move(name), value); }
  /// CSV with header `norm,value,<n1_label>,<n2_label>`.
  void write_csv(std::ostream& os) const;
};

}  // namespace wente
