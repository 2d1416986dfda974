#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logsp/constants.hpp"
#include "logsp/fiber.hpp"
#include "logsp/functionals.hpp"
#include "logsp/grid_field.hpp"

namespace logsp {

struct SolverConfig {
  double tol_grad = 1e-5;      ///< relative tangent-gradient tolerance
  double tol_Q = 1e-4;         ///< |Q| tolerance relative to A + |γ|c²/4
  int max_iter = 5000;
  double step0 = 0.0;          ///< <= 0 selects 0.1 / max(1, A(init))
  double backtrack = 0.5;
  double armijo = 1e-4;
  double guard_margin = 1e-3;  ///< V-membership margin, as a fraction of k0
  std::uint64_t seed = 0;
  bool trace = false;
  /// Run in OpenUnknown regimes whose sign pattern matches the solver, instead of
  /// refusing. Regimes that contradict the solver are still refused.
  bool explore_open = false;

  /// Throws InvalidArgument on out-of-range entries.
  void validate() const;
};

struct TraceRow {
  int iter = 0;
  double F = 0.0, Q = 0.0, grad_res = 0.0, A = 0.0, C = 0.0, V = 0.0;
};

struct BranchInfo {
  Branch branch = Branch::Plus;
  double s = 1.0;      ///< critical dilation of the final field, ≈ 1 on convergence
  double gpp = 0.0;    ///< g''(s)
  double t_star = 0.0; ///< 0 when undefined
  double v_margin = 0.0;  ///< (t*)²A - k0 for the γ < 0 ascent, else 0
};

struct SolveReport {
  std::string solver;
  Params params;
  Grid grid;
  SolverConfig config;
  Field field;
  EnergyBreakdown breakdown;
  double lambda = 0.0;
  double Q = 0.0;
  double q_residual = 0.0;  ///< |Q|
  double q_scale = 0.0;     ///< A + |γ|c²/4
  double pohozaev_residual = 0.0;
  double el_residual = 0.0;
  double boundary_fraction = 0.0;
  double mass_error = 0.0;
  int iters = 0;
  int materializations = 0;
  bool converged = false;
  std::string status;
  RegimeLabel regime;
  SharpConstants sharp;
  std::optional<BranchInfo> branch;
  std::optional<double> lower_bound;  ///< ½A - (γ/4) K √A c^{3/2}, when a <= 0
  std::vector<TraceRow> trace;
};

/// Theorem 1.1 regimes: projected preconditioned gradient descent on F over S(c).
SolveReport global_minimize(const Params& params, const Grid& grid, const SolverConfig& config,
                            const ProfileSpec& init);

/// γ > 0, a > 0, p > 4, c < c0: descent restricted to A(u) <= k0. Throws
/// CapBoundary when the iterate settles on A = k0.
SolveReport local_minimize_capped(const Params& params, const Grid& grid, const SolverConfig& config,
                                  const ProfileSpec& init);

/// γ > 0, p > 4, c < c0: descent on I(u) = F(u^{s(u)}) for the requested branch.
SolveReport lambda_branch_minimize(const Params& params, const Grid& grid, const SolverConfig& config,
                                   const ProfileSpec& init, Branch branch);

/// γ < 0, a > 0, p < 4: ascent on I(u) = F(u^{s(u)}) inside V. Throws RegimeRefusal
/// when init lies outside V.
SolveReport lambda_maximize(const Params& params, const Grid& grid, const SolverConfig& config,
                            const ProfileSpec& init, Branch branch = Branch::Minus);

struct TwoBumpRow {
  int n = 0;
  double Q = 0.0;
  double F = 0.0;
  double Q_predicted = 0.0;  ///< disjoint-support value from the n = 1 lobe scalars
};

struct TwoBumpResult {
  double Q_limit = 0.0;  ///< A(base) - a(p-2)/p C(base) - γc²/4
  std::vector<TwoBumpRow> rows;
};

/// Evaluates Q and F along u_n built from `shape` with scale n. Throws DomainTooSmall
/// when the largest n does not fit and InvalidArgument when lobes overlap.
TwoBumpResult two_bump_probe(const Params& params, const Grid& grid, const std::vector<int>& n_list,
                             const TwoBumpProfile& shape);

struct MassCriticalResult {
  double threshold = 0.0;    ///< 2 / (a K_GN(4))
  double quadratic = 0.0;    ///< coefficient of t² in F(u^t)
  std::vector<double> t;     ///< 2^k, k = 0..
  std::vector<double> F;     ///< F(u^t) from the scaled ground-state scalars
  bool bounded_below = false;
  std::optional<double> min_F;  ///< attained minimum over t when bounded
};

/// Fiber of the p = 4 ground state scaled to mass c, from analytic scalars.
MassCriticalResult masscritical_probe(const Params& params, int doublings = 12);

}  // namespace logsp
