#include <cmath>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli_commands.hpp"
#include "logsp/error.hpp"

using namespace logsp;

namespace {

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  bool trace = false;
  bool explore_open = false;
  bool cross_check = false;
  std::optional<std::size_t> grid_n;
  std::optional<double> grid_L;
  std::optional<double> gamma, a, p, c;
  std::optional<std::string> branch, method;
  std::optional<int> max_iter;
  std::optional<double> tol_grad, tol_Q, sigma;
  std::optional<double> A, C, V, t_min, t_max;
  std::optional<int> points;
  std::optional<std::vector<double>> a_range, c_range;
  double inject_origin_shift = 0.0;
};

void common_options(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON configuration file");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--seed", f.seed, "seed recorded in the report and used by random initial profiles");
  cmd->add_flag("--trace", f.trace, "write trace.csv");
  cmd->add_option("--grid-n", f.grid_n, "nodes per side (power of two)");
  cmd->add_option("--grid-L", f.grid_L, "box side length");
  cmd->add_option("--gamma", f.gamma, "signed interaction strength");
  cmd->add_option("--a", f.a, "nonlinearity coefficient");
  cmd->add_option("--p", f.p, "nonlinearity exponent, > 2");
  cmd->add_option("--c", f.c, "prescribed mass");
}

cli::Range to_range(const std::vector<double>& v) {
  require(v.size() == 3, "ranges take three values: lo hi count");
  require(v[2] >= 1.0 && v[2] == std::floor(v[2]), "range count must be a positive integer");
  return cli::Range{v[0], v[1], static_cast<int>(v[2])};
}

cli::RunConfig assemble(const Flags& f) {
  auto cfg = cli::load_config(f.config ? std::optional<std::filesystem::path>(*f.config) : std::nullopt);
  if (f.gamma) cfg.params.gamma = *f.gamma;
  if (f.a) cfg.params.a = *f.a;
  if (f.p) cfg.params.p = *f.p;
  if (f.c) cfg.params.c = *f.c;
  cfg.init.c = cfg.params.c;
  if (f.grid_n) cfg.grid_n = *f.grid_n;
  if (f.grid_L) cfg.grid_L = *f.grid_L;
  if (f.out) cfg.out = *f.out;
  if (f.seed) {
    cfg.solver.seed = *f.seed;
    if (auto* r = std::get_if<RandomSmoothProfile>(&cfg.init.kind)) r->seed = *f.seed;
  }
  if (f.sigma) {
    if (auto* g = std::get_if<GaussianProfile>(&cfg.init.kind)) g->sigma = *f.sigma;
    else fail(ErrorKind::InvalidArgument, "--sigma applies to a gaussian init only");
  }
  if (f.trace) cfg.solver.trace = true;
  if (f.explore_open) cfg.solver.explore_open = true;
  if (f.max_iter) cfg.solver.max_iter = *f.max_iter;
  if (f.tol_grad) cfg.solver.tol_grad = *f.tol_grad;
  if (f.tol_Q) cfg.solver.tol_Q = *f.tol_Q;
  if (f.branch) cfg.branch = branch_from_string(*f.branch);
  if (f.method) cfg.method = *f.method;
  if (f.A) cfg.A = *f.A;
  if (f.C) cfg.C = *f.C;
  if (f.V) cfg.V = *f.V;
  if (f.t_min) cfg.t_min = *f.t_min;
  if (f.t_max) cfg.t_max = *f.t_max;
  if (f.points) cfg.fiber_points = *f.points;
  if (f.a_range) cfg.a_range = to_range(*f.a_range);
  if (f.c_range) cfg.c_range = to_range(*f.c_range);
  cfg.inject_origin_shift = f.inject_origin_shift;
  cfg.cross_check = f.cross_check;
  cli::validate(cfg);
  return cfg;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonConvergence:
    case ErrorKind::CapBoundary:
      return cli::kNonConvergence;
    case ErrorKind::RegimeRefusal:
      return cli::kRegimeRefusal;
    default:
      return cli::kConfigError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"logsp: normalized solutions of the planar Schrodinger-Poisson equation with a logarithmic kernel"};
  app.require_subcommand(1);
  Flags f;

  auto* classify = app.add_subcommand("classify", "print the existence regime and its certificate");
  auto* solve = app.add_subcommand("solve", "compute a normalized solution for the regime");
  auto* fiber = app.add_subcommand("fiber", "tabulate the fiber map t -> F(u^t)");
  auto* sweep = app.add_subcommand("sweep", "classify an (a, c) lattice into sweep.csv");
  auto* constants = app.add_subcommand("constants", "sharp constants and thresholds as JSON");
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  for (auto* cmd : {classify, solve, fiber, sweep, constants, verify}) common_options(cmd, f);

  solve->add_option("--branch", f.branch, "plus or minus");
  solve->add_option("--solver", f.method, "auto, global, capped, branch or maximize");
  solve->add_option("--max-iter", f.max_iter);
  solve->add_option("--tol-grad", f.tol_grad);
  solve->add_option("--tol-Q", f.tol_Q);
  solve->add_option("--sigma", f.sigma, "width of the gaussian initial profile");
  solve->add_flag("--explore-open", f.explore_open, "run in OpenUnknown regimes with a matching sign pattern");
  fiber->add_option("--A", f.A, "kinetic scalar (use with --C, optional --V)");
  fiber->add_option("--C", f.C, "p-norm scalar");
  fiber->add_option("--V", f.V, "log-interaction scalar");
  fiber->add_option("--t-min", f.t_min);
  fiber->add_option("--t-max", f.t_max);
  fiber->add_option("--points", f.points);
  fiber->add_option("--sigma", f.sigma, "width of the gaussian profile");
  sweep->add_option("--a-range", f.a_range, "lo hi count")->expected(3);
  sweep->add_option("--c-range", f.c_range, "lo hi count")->expected(3);
  constants->add_flag("--cross-check", f.cross_check, "also run the Gaussian-mixture Rayleigh ascent");
  verify->add_option("--inject-origin-shift", f.inject_origin_shift, "corrupt the log-kernel origin weight");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kConfigError;
  }

  cli::RunConfig cfg;
  try {
    cfg = assemble(f);
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kConfigError;
  }

  try {
    if (*classify) return cli::cmd_classify(cfg);
    if (*solve) return cli::cmd_solve(cfg);
    if (*fiber) return cli::cmd_fiber(cfg);
    if (*sweep) return cli::cmd_sweep(cfg);
    if (*constants) return cli::cmd_constants(cfg);
    return cli::cmd_verify(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kConfigError;
  }
}
