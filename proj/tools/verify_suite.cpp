#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>

#include <unistd.h>

#include "cli_commands.hpp"
#include "logsp/constants.hpp"
#include "logsp/error.hpp"
#include "logsp/radial.hpp"

namespace logsp::cli {

using nlohmann::json;

namespace {

struct Check {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string note;
};

std::vector<ProfileSpec> canned_profiles() {
  return {
      {GaussianProfile{1.0, {0.0, 0.0}}, 1.0},
      {GaussianProfile{0.7, {1.5, -1.0}}, 2.0},
      {RingProfile{2.0, 0.6}, 1.0},
      {TwoBumpProfile{{4.0, 0.0}, 1.0, 1.2, 1.2, 0.5, {-2.0, 0.0}}, 1.0},
      {RandomSmoothProfile{7, 1.5, 1.5}, 1.0},
  };
}

Check v_splitting(const Grid& grid, const Workspace& ws) {
  Check c{"v_splitting", true, 0.0, 1e-6, "|V - (V1 - V2)| / (1 + |V1| + |V2|) over canned profiles"};
  for (const auto& spec : canned_profiles()) {
    const Field u = discretize(spec, grid);
    const double V = v_total(u, ws), V1 = v1(u, ws), V2 = v2(u, ws);
    c.measured = std::max(c.measured, std::abs(V - (V1 - V2)) / (1.0 + std::abs(V1) + std::abs(V2)));
  }
  c.pass = c.measured < c.tolerance;
  return c;
}

Check gaussian_closed_forms(const Grid& grid, const Workspace& ws) {
  Check c{"gaussian_closed_forms", true, 0.0, 1e-3, "max relative error of A, C(p=3), V against closed forms"};
  const Field u = discretize({GaussianProfile{1.0, {0.0, 0.0}}, 1.0}, grid);
  const double pi = std::numbers::pi;
  const double A = kinetic(u, ws), C = pnorm(u, 3.0), V = v_total(u, ws);
  const double Vx = 0.5 * (std::log(2.0) - std::numbers::egamma);
  c.measured = std::max({std::abs(A - 1.0), std::abs(C - 2.0 / (3.0 * std::sqrt(pi))) / C, std::abs(V - Vx) / Vx});
  c.pass = c.measured < c.tolerance;
  return c;
}

Check translation(const Grid& grid, const Workspace& ws) {
  Check c{"translation_invariance", true, 0.0, 1e-12, "relative change of F under an integer shift"};
  const Params prm{1.0, 1.0, 3.0, 1.0};
  const Field u = discretize({GaussianProfile{0.8, {0.5, 0.2}}, 1.0}, grid);
  const double F0 = energy(u, prm, ws).F, F1 = energy(shift(u, 5, -3), prm, ws).F;
  c.measured = std::abs(F1 - F0) / std::abs(F0);
  c.pass = c.measured < c.tolerance;
  return c;
}

Check gradient(const Grid& grid, const Workspace& ws) {
  Check c{"gradient_consistency", true, 0.0, 1e-5, "central differences vs <grad, phi>, 3 random pairs"};
  const Params prm{1.0, 1.5, 3.0, 1.0};
  for (std::uint64_t s = 0; s < 3; ++s) {
    const Field u = discretize({RandomSmoothProfile{11 + s, 1.5, 1.5}, 1.0}, grid);
    const Field phi = discretize({RandomSmoothProfile{101 + s, 1.5, 1.5}, 1.0}, grid);
    const double eps = 1e-4;
    const double fd = (energy(axpy(eps, phi, u), prm, ws).F - energy(axpy(-eps, phi, u), prm, ws).F) / (2.0 * eps);
    const double an = inner(grad_energy(u, prm, ws), phi);
    c.measured = std::max(c.measured, std::abs(fd - an) / std::max(1.0, std::abs(an)));
  }
  c.pass = c.measured < c.tolerance;
  return c;
}

Check fiber_exactness(const Grid& grid, const Workspace& ws) {
  Check c{"fiber_scalar_exactness", true, 0.0, 1e-3, "g(t) from scalars vs F(dilate(u, t)) on the grid"};
  const Params prm{1.0, 1.0, 6.0, 1.0};
  const Field u = discretize({GaussianProfile{1.0, {0.0, 0.0}}, 1.0}, grid);
  const auto sc = scalars(u, prm, ws);
  for (double t : {0.7, 1.5}) {
    const double g = fiber_g(sc, t);
    const double F = energy(normalize(dilate(u, t), prm.c), prm, ws).F;
    c.measured = std::max(c.measured, std::abs(g - F) / std::max(1.0, std::abs(g)));
  }
  c.pass = c.measured < c.tolerance;
  return c;
}

Check gn_bound(const Grid& grid, const Workspace& ws) {
  Check c{"gagliardo_nirenberg_bound", true, 0.0, 0.0, "max of C / (K_GN A^{p/2-1} M) over canned profiles, p = 3"};
  const double kgn = sharp_constants(3.0).kgn;
  for (const auto& spec : canned_profiles()) {
    const Field u = discretize(spec, grid);
    const double q = pnorm(u, 3.0) / (kgn * std::sqrt(kinetic(u, ws)) * mass(u));
    c.measured = std::max(c.measured, q);
  }
  c.tolerance = 1.0;
  c.pass = c.measured <= c.tolerance + 1e-6;
  return c;
}

Check v2_bound(const Grid& grid, const Workspace& ws) {
  Check c{"v2_bound", true, 0.0, 0.0, "max of V2 / (K sqrt(A) c^{3/2}) over canned profiles"};
  const double K = kv2_estimate();
  for (const auto& spec : canned_profiles()) {
    const Field u = discretize(spec, grid);
    c.measured = std::max(c.measured, v2(u, ws) / (K * std::sqrt(kinetic(u, ws)) * std::pow(mass(u), 1.5)));
  }
  c.tolerance = 1.0;
  c.pass = c.measured <= c.tolerance;
  c.note += " (one-sided; K is an empirical lower bound)";
  return c;
}

Check nonexistence() {
  Check c{"nonexistence_phi_positive", true, 0.0, 0.0, "violations of phi > 0 for gamma < 0, a <= 0 on t in [1e-6, 1e6]"};
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int bad = 0;
  for (int k = 0; k < 100; ++k) {
    const Params prm{-std::exp(4.0 * U(rng) - 2.0), -3.0 * U(rng), 2.0 + 6.0 * U(rng) + 1e-3, std::exp(2.0 * U(rng) - 1.0)};
    const auto sc = FiberScalars::make(std::exp(4.0 * U(rng) - 2.0), std::exp(4.0 * U(rng) - 2.0), 0.0, prm);
    for (int i = 0; i <= 240; ++i) {
      const double t = std::pow(10.0, -6.0 + i * 0.05);
      if (!(fiber_phi(sc, t) > 0.0)) ++bad;
    }
    if (!critical_points(sc).empty()) ++bad;
  }
  c.measured = bad;
  c.pass = bad == 0;
  return c;
}

Check ground_state_pohozaev() {
  Check c{"ground_state_pohozaev", true, 0.0, 1e-8, "relative defect of M = 2C/p and A = (p-2)C/p, p in {3, 4, 6}"};
  for (double p : {3.0, 4.0, 6.0}) {
    const auto gs = radial::ground_state(p);
    c.measured = std::max({c.measured, std::abs(gs.mass - 2.0 * gs.pnorm / p) / gs.mass,
                           std::abs(gs.kinetic - (p - 2.0) * gs.pnorm / p) / gs.kinetic});
  }
  c.pass = c.measured < c.tolerance;
  return c;
}

Check kgn_dominates_trial() {
  Check c{"kgn_dominates_gaussian_trial", true, 0.0, 0.0, "min over p of K_GN(p) - Gaussian quotient"};
  c.measured = std::numeric_limits<double>::infinity();
  for (double p : {2.5, 3.0, 3.5, 4.0, 5.0, 6.0}) c.measured = std::min(c.measured, kgn_estimate(p) - kgn_gaussian_trial(p));
  c.pass = c.measured > 0.0;
  return c;
}

Check lpf_roundtrip(const Grid& grid) {
  Check c{"lpf_roundtrip", true, 0.0, 0.0, "max abs difference after write/read"};
  const Field u = discretize({RandomSmoothProfile{3, 1.5, 1.5}, 1.0}, grid);
  const auto path = std::filesystem::temp_directory_path() / ("logsp_verify_" + std::to_string(::getpid()) + ".lpf");
  write_lpf(path, u);
  const Field v = read_lpf(path);
  std::filesystem::remove(path);
  for (std::size_t k = 0; k < u.size(); ++k) c.measured = std::max(c.measured, std::abs(u.values()[k] - v.values()[k]));
  c.pass = v.grid() == u.grid() && c.measured == 0.0;
  return c;
}

}  // namespace

int cmd_verify(const RunConfig& cfg) {
  const Grid grid = make_grid(24.0, 256);
  KernelOptions opts;
  opts.log_origin_shift = cfg.inject_origin_shift;
  Workspace ws(grid, opts);
  Workspace clean(grid);

  std::vector<Check> checks;
  auto run = [&](std::function<Check()> f) {
    try {
      checks.push_back(f());
    } catch (const Error& e) {
      checks.push_back(Check{"exception", false, 0.0, 0.0, e.what()});
    }
  };
  run([&] { return v_splitting(grid, ws); });
  run([&] { return gaussian_closed_forms(grid, ws); });
  run([&] { return translation(grid, ws); });
  run([&] { return gradient(grid, ws); });
  run([&] { return fiber_exactness(grid, ws); });
  run([&] { return gn_bound(grid, clean); });
  run([&] { return v2_bound(grid, clean); });
  run([&] { return nonexistence(); });
  run([&] { return ground_state_pohozaev(); });
  run([&] { return kgn_dominates_trial(); });
  run([&] { return lpf_roundtrip(grid); });

  json arr = json::array();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    arr.push_back({{"name", c.name}, {"pass", c.pass}, {"measured", c.measured}, {"tolerance", c.tolerance}, {"note", c.note}});
  }
  json out = {{"pass", all}, {"checks", arr}};
  if (cfg.inject_origin_shift != 0.0) out["injected_log_origin_shift"] = cfg.inject_origin_shift;
  std::cout << out.dump(2) << '\n';
  return all ? kOk : kVerifyFailed;
}

}  // namespace logsp::cli
