#include "logsp/functionals.hpp"

#include <cmath>

#include "logsp/error.hpp"
#include "logsp/kernels.hpp"

namespace logsp {

namespace k = kernels::omp;

namespace {

std::vector<double> density(const Field& u) {
  std::vector<double> rho(u.size());
  k::square(u.values(), rho);
  return rho;
}

double interaction(const Field& u, const Workspace& ws, Kernel kernel) {
  require(u.grid() == ws.grid(), "workspace grid does not match the field");
  const auto rho = density(u);
  const auto w = ws.convolve(rho, kernel);
  return u.grid().cell_area() * k::dot(rho, w);
}

double l2norm(std::span<const double> x, double h2) { return std::sqrt(h2 * k::dot(x, x)); }

}  // namespace

void Params::validate() const {
  require(std::isfinite(gamma) && std::isfinite(a) && std::isfinite(p) && std::isfinite(c),
          "parameters must be finite");
  require(p > 2.0, "exponent p must exceed 2");
  require(c > 0.0, "mass c must be positive");
}

double kinetic(const Field& u, const Workspace& ws) {
  require(u.grid() == ws.grid(), "workspace grid does not match the field");
  return ws.dirichlet(u.values());
}

double kinetic(const Field& u) {
  Workspace ws(u.grid());
  return kinetic(u, ws);
}

double pnorm(const Field& u, double p) {
  require(p > 2.0, "pnorm needs p > 2");
  return u.grid().cell_area() * k::sum_abs_pow(u.values(), p);
}

Field log_potential(const Field& u, const Workspace& ws) {
  require(u.grid() == ws.grid(), "workspace grid does not match the field");
  return Field(u.grid(), ws.convolve(density(u), Kernel::Log));
}

double v_total(const Field& u, const Workspace& ws) { return interaction(u, ws, Kernel::Log); }
double v1(const Field& u, const Workspace& ws) { return interaction(u, ws, Kernel::LogOnePlusR); }
double v2(const Field& u, const Workspace& ws) { return interaction(u, ws, Kernel::LogOnePlusInvR); }

double star_norm(const Field& u) {
  const Grid& g = u.grid();
  double s = 0.0;
  for (std::size_t j = 0; j < g.n; ++j)
    for (std::size_t i = 0; i < g.n; ++i) {
      const double v = u(i, j);
      s += std::log1p(std::hypot(g.coord(i), g.coord(j))) * v * v;
    }
  return g.cell_area() * s;
}

EnergyBreakdown energy(const Field& u, const Params& params, const Workspace& ws) {
  EnergyBreakdown e;
  e.A = kinetic(u, ws);
  e.C = pnorm(u, params.p);
  e.V = v_total(u, ws);
  e.V1 = v1(u, ws);
  e.V2 = v2(u, ws);
  e.F = 0.5 * e.A + 0.25 * params.gamma * e.V - params.a / params.p * e.C;
  e.star_norm = star_norm(u);
  return e;
}

EnergyBreakdown energy(const Field& u, const Params& params) {
  Workspace ws(u.grid());
  return energy(u, params, ws);
}

EnergyState energy_state(const Field& u, const Params& params, const Workspace& ws) {
  require(u.grid() == ws.grid(), "workspace grid does not match the field");
  const Grid& g = u.grid();
  const double h2 = g.cell_area();
  const auto rho = density(u);
  auto w = ws.convolve(rho, Kernel::Log);
  auto lap = ws.neg_laplacian(u.values());
  EnergyState s;
  s.A = h2 * k::dot(u.values(), lap);
  s.C = h2 * k::sum_abs_pow(u.values(), params.p);
  s.V = h2 * k::dot(rho, w);
  s.F = 0.5 * s.A + 0.25 * params.gamma * s.V - params.a / params.p * s.C;
  std::vector<double> grad(u.size());
  k::gradient_combine(u.values(), lap, w, 1.0, params.gamma, params.a, params.p, grad);
  s.grad = Field(g, std::move(grad));
  s.neg_lap = Field(g, std::move(lap));
  s.w = Field(g, std::move(w));
  return s;
}

Field grad_energy(const Field& u, const Params& params, const Workspace& ws) {
  return energy_state(u, params, ws).grad;
}

double pohozaev_Q(double A, double C, const Params& params) {
  const double p = params.p;
  return A - params.a * (p - 2.0) / p * C - 0.25 * params.gamma * params.c * params.c;
}

double pohozaev_Q(const Field& u, const Params& params, const Workspace& ws) {
  return pohozaev_Q(kinetic(u, ws), pnorm(u, params.p), params);
}

double lagrange_multiplier(const Field& u, const Params& params, const Workspace& ws) {
  const double m = mass(u);
  require(m > 0.0, "lagrange_multiplier of a zero field");
  const double A = kinetic(u, ws);
  const double C = pnorm(u, params.p);
  const double V = v_total(u, ws);
  return -(A + params.gamma * V - params.a * C) / m;
}

double pohozaev_residual(const Field& u, const Params& params, double lambda, const Workspace& ws) {
  const double m = mass(u);
  if (m == 0.0) return 0.0;
  const double C = pnorm(u, params.p);
  const double V = v_total(u, ws);
  const double g = params.gamma;
  const double num = lambda * m + g * V + 0.25 * g * m * m - 2.0 * params.a / params.p * C;
  return std::abs(num) / (1.0 + std::abs(lambda) * m + std::abs(g) * std::abs(V));
}

double el_residual(const Field& u, const Params& params, double lambda, const Workspace& ws) {
  const auto s = energy_state(u, params, ws);
  const double h2 = u.grid().cell_area();
  std::vector<double> defect(u.size());
  k::axpby(1.0, s.grad.values(), lambda, u.values(), defect);
  const double scale = 1.0 + l2norm(s.neg_lap.values(), h2) + std::abs(lambda) * std::sqrt(mass(u));
  return l2norm(defect, h2) / scale;
}

}  // namespace logsp
