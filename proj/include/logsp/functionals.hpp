#pragma once

#include "logsp/convolution.hpp"
#include "logsp/grid_field.hpp"

namespace logsp {

/// One problem instance of  -Δu + γ(log|·| * u²)u = a|u|^{p-2}u,  ‖u‖₂² = c.
/// `gamma` carries its sign; there is no internal sign flip.
struct Params {
  double gamma = 1.0;
  double a = 0.0;
  double p = 3.0;
  double c = 1.0;

  /// Throws InvalidArgument unless p > 2, c > 0 and all entries are finite.
  void validate() const;
};

struct EnergyBreakdown {
  double A = 0.0;          ///< ∫|∇u|²
  double C = 0.0;          ///< ∫|u|^p
  double V = 0.0;          ///< ∬ log|x-y| u²(x)u²(y)
  double V1 = 0.0;         ///< log(1+|x-y|) part, >= 0
  double V2 = 0.0;         ///< log(1+1/|x-y|) part, >= 0
  double F = 0.0;          ///< A/2 + γV/4 - aC/p
  double star_norm = 0.0;  ///< ∫ log(1+|x|) u²
};

double kinetic(const Field& u, const Workspace& ws);
double kinetic(const Field& u);
double pnorm(const Field& u, double p);

/// w = log|·| * u², free-space.
Field log_potential(const Field& u, const Workspace& ws);

double v_total(const Field& u, const Workspace& ws);
double v1(const Field& u, const Workspace& ws);
double v2(const Field& u, const Workspace& ws);
double star_norm(const Field& u);

EnergyBreakdown energy(const Field& u, const Params& params, const Workspace& ws);
EnergyBreakdown energy(const Field& u, const Params& params);

/// L2 gradient of F: -Δu + γ w u - a|u|^{p-2}u.
Field grad_energy(const Field& u, const Params& params, const Workspace& ws);

/// Everything one descent step needs, sharing the two transforms.
struct EnergyState {
  double A = 0.0, C = 0.0, V = 0.0, F = 0.0;
  Field grad;     ///< L2 gradient of F
  Field neg_lap;  ///< -Δu
  Field w;        ///< log|·| * u²
};
EnergyState energy_state(const Field& u, const Params& params, const Workspace& ws);

/// Q = A - a(p-2)/p C - γc²/4 with c = params.c.
double pohozaev_Q(double A, double C, const Params& params);
double pohozaev_Q(const Field& u, const Params& params, const Workspace& ws);

/// λ = -(A + γV - aC)/m with m the actual mass of u.
double lagrange_multiplier(const Field& u, const Params& params, const Workspace& ws);

/// |λm + γV + γm²/4 - 2aC/p| / (1 + |λ|m + |γ||V|), m the actual mass.
double pohozaev_residual(const Field& u, const Params& params, double lambda, const Workspace& ws);

/// ‖-Δu + λu + γwu - a|u|^{p-2}u‖₂ / (1 + ‖Δu‖₂ + |λ|‖u‖₂).
double el_residual(const Field& u, const Params& params, double lambda, const Workspace& ws);

}  // namespace logsp
