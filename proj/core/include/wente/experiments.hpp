#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wente/counterexamples.hpp"
#include "wente/poisson.hpp"

namespace wente {

struct FitResult {
  double alpha = 0.0;
  double scale = 0.0;     // c
  double offset = 0.0;    // d (growth fit only)
  double residual = 0.0;  // rms in the fitted coordinates
};

/// Least squares of log v = log c + alpha * log log(1/eps). Requires at
/// least three pairs with positive values and eps in (0, 1).
FitResult fit_log_exponent(const std::vector<std::pair<double, double>>& pairs);

/// Fits v = c * (log(1/delta))^alpha + d by scanning alpha and solving the
/// linear part; robust against the additive offset that the plain
/// log-log-log fit cannot absorb. Used for blow-up rates.
FitResult fit_growth_exponent(const std::vector<std::pair<double, double>>& pairs);

struct SweepConfig {
  Family family = Family::DirichletControl;
  std::vector<double> betas;
  std::vector<double> eps_list;
  std::vector<int> resolutions;
  std::string out_dir = ".";
  SolveOptions solve;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Plain `key = value` configuration text; lists are comma-separated.
/// Keys: family, beta, eps, n, out, policy (project|error), tolerance,
/// max_mode, seed. Lines starting with '#' are ignored.
SweepConfig parse_sweep_config(std::istream& is);

struct SweepRow {
  Family family = Family::DirichletControl;
  double beta = 0.0;
  double eps = 0.0;
  int n = 0;
  double norm_a_inf = 0.0;
  double seminorm_a_h1 = 0.0;
  double seminorm_b_h1 = 0.0;
  double lorentz_b = 0.0;       // L21 of grad b
  double linf_u = 0.0;          // sup of the computed solution object
  double w_origin = 0.0;        // value at the singular point
  double l2_grad_w = 0.0;
  double lorentz_grad_w = 0.0;
  double h12_trace = 0.0;
  double ratio_dirichlet = 0.0;
  double ratio_neumann = 0.0;
  double ratio_l21 = 0.0;
  double defect = 0.0;
};

struct SweepReport {
  SweepConfig config;
  std::vector<SweepRow> rows;
  std::vector<std::string> summary;

  /// Header `family,beta,eps,n,norm_a_inf,seminorm_a_h1,seminorm_b_h1,
  /// lorentz_b,linf_u,w_origin,l2_grad_w,lorentz_grad_w,h12_trace,
  /// ratio_dirichlet,ratio_neumann,ratio_l21,defect`.
  std::string csv() const;
  std::string summary_text() const;
};

/// Runs one verification campaign; rows come out sorted by (beta, eps, n).
/// Deterministic for a fixed config.
SweepReport run_sweep(const SweepConfig& cfg);

/// Extra per-case diagnostics that do not fit the fixed row schema.
struct CaseDiagnostics {
  double h12_volume = 0.0;
  double h12_line = 0.0;
  double h12_log_kernel = 0.0;
  double pairing = 0.0;        // h1_blowup duality pairing
  double hess_l1_ratio = 0.0;  // vanishing_trace second-derivative column
};
SweepRow run_case(const CounterexampleSpec& spec, int n, const SolveOptions& opts,
                  CaseDiagnostics* extras = nullptr);

/// Relative L2 gap between the conjugate-potential and the direct Neumann
/// pipelines on the smooth pair a = x1, b = x2.
double pipeline_gap(int n, const SolveOptions& opts = {});

// Command entry points shared by the CLI binary and the tests.
// Exit codes: 0 success, 1 failed checks, 2 bad configuration or arguments.
struct SolveRequest {
  Family family = Family::DirichletControl;
  double beta = 0.75;
  double eps = 1e-2;
  int n = 128;
  std::string out_dir = ".";
};
int solve_command(const SolveRequest& req);
int sweep_command(const std::string& config_path);
int check_command(std::uint64_t seed);

}  // namespace wente
