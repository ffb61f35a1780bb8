// Command-line front end: solve one problem instance, run a sweep from a
// config file, or run the built-in invariant checks.

#include <CLI11.hpp>

#include <string>

#include "wente/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"planar Poisson problems with Jacobian data: solves, sweeps, checks"};
  app.require_subcommand(1);

  wente::SolveRequest req;
  std::string family = "dirichlet_control";
  auto* solve = app.add_subcommand("solve", "solve one family instance, emit CSV");
  solve->add_option("--family", family,
                    "family: linf_blowup | h1_blowup | dirichlet_control | "
                    "l21_control | vanishing_trace");
  solve->add_option("--beta", req.beta, "family exponent");
  solve->add_option("--eps", req.eps, "mollification scale");
  solve->add_option("--n", req.n, "grid resolution");
  solve->add_option("--out", req.out_dir, "output directory");

  std::string config_path;
  auto* sweep = app.add_subcommand("sweep", "run a sweep config, emit report + summary");
  sweep->add_option("config", config_path, "path to a key = value config file");

  std::uint64_t seed = 0;
  auto* check = app.add_subcommand("check", "run the built-in invariant suite");
  check->add_option("--seed", seed, "seed for randomized samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (solve->parsed()) {
    try {
      req.family = wente::parse_family(family);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "%s\n", e.what());
      return 2;
    }
    return wente::solve_command(req);
  }
  if (sweep->parsed()) {
    if (config_path.empty()) {
      std::fprintf(stderr, "sweep: missing config path\n");
      return 2;
    }
    return wente::sweep_command(config_path);
  }
  return wente::check_command(seed);
}
