#include "logsp/radial.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "logsp/error.hpp"

namespace logsp::radial {

namespace {

using State = std::array<double, 5>;  // φ, φ', mass, kinetic, pnorm (radial densities)
namespace odeint = boost::numeric::odeint;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kStart = 1e-6;
constexpr double kRadiusCap = 80.0;

enum class Outcome { Overshoot, Undershoot, Reached };

struct Rhs {
  double p;
  void operator()(const State& y, State& dy, double r) const {
    const double f = y[0];
    const double nl = std::pow(std::abs(f), p - 2.0) * f;
    dy[0] = y[1];
    dy[1] = -y[1] / r + f - nl;
    dy[2] = kTwoPi * f * f * r;
    dy[3] = kTwoPi * y[1] * y[1] * r;
    dy[4] = kTwoPi * std::pow(std::abs(f), p) * r;
  }
};

State series_start(double p, double alpha) {
  const double lap = alpha - std::pow(alpha, p - 1.0);  // Δφ(0), so φ ≈ α + lap r²/4
  const double r = kStart;
  const double f = alpha + 0.25 * lap * r * r;
  return {f, 0.5 * lap * r, kTwoPi * 0.5 * alpha * alpha * r * r, 0.0,
          kTwoPi * 0.5 * std::pow(alpha, p) * r * r};
}

// Integrates until φ changes sign or turns upward. `sample` sees (r, φ) at
// regular spacing dr when dr > 0.
template <class Sample>
Outcome shoot(double p, double alpha, State& y, double& r_end, double dr, Sample&& sample) {
  auto stepper = odeint::make_dense_output(1e-13, 1e-13, odeint::runge_kutta_dopri5<State>());
  y = series_start(p, alpha);
  stepper.initialize(y, kStart, 1e-4);
  const Rhs rhs{p};
  double next = dr;
  while (stepper.current_time() < kRadiusCap) {
    stepper.do_step(rhs);
    const State& cur = stepper.current_state();
    if (dr > 0.0) {
      State tmp;
      while (next <= stepper.current_time() && cur[0] > 0.0 && cur[1] <= 0.0) {
        stepper.calc_state(next, tmp);
        sample(next, tmp[0]);
        next += dr;
      }
    }
    if (cur[0] < 0.0 || cur[1] > 0.0) {
      y = stepper.previous_state();
      r_end = stepper.previous_time();
      return cur[0] < 0.0 ? Outcome::Overshoot : Outcome::Undershoot;
    }
  }
  y = stepper.current_state();
  r_end = stepper.current_time();
  return Outcome::Reached;
}

}  // namespace

double GroundState::gn_quotient() const { return pnorm / (std::pow(kinetic, 0.5 * p - 1.0) * mass); }

GroundState ground_state(double p, double dr) {
  require(p > 2.0 && std::isfinite(p), "ground state needs p > 2");
  require(dr > 0.0, "sampling step must be positive");

  // Energy E = φ'²/2 - φ²/2 + φ^p/p is nonincreasing along r, so any α with
  // E(α) <= 0 can never reach φ = 0: it undershoots.
  double lo = std::pow(0.5 * p, 1.0 / (p - 2.0));
  double hi = 2.0 * lo;
  State y{};
  double r_end = 0.0;
  auto none = [](double, double) {};
  int guard = 0;
  while (shoot(p, hi, y, r_end, 0.0, none) != Outcome::Overshoot) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 60) fail(ErrorKind::NonConvergence, "ground state shooting: no overshooting φ(0) found");
  }

  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const Outcome o = shoot(p, mid, y, r_end, 0.0, none);
    if (o == Outcome::Overshoot) {
      hi = mid;
    } else if (o == Outcome::Undershoot) {
      lo = mid;
    } else {
      lo = hi = mid;
    }
  }

  GroundState gs;
  gs.p = p;
  gs.alpha = 0.5 * (lo + hi);
  gs.tolerance = (hi - lo) / hi;
  gs.dr = dr;
  gs.profile.push_back(gs.alpha);
  shoot(p, gs.alpha, y, gs.r_end, dr, [&](double, double f) { gs.profile.push_back(f); });
  gs.mass = y[2];
  gs.kinetic = y[3];
  gs.pnorm = y[4];
  if (!(gs.r_end > 5.0)) fail(ErrorKind::NonConvergence, "ground state shooting truncated too early");
  return gs;
}

double log_energy(std::span<const double> rho, double dr) {
  require(dr > 0.0, "log_energy needs dr > 0");
  const std::size_t n = rho.size();
  if (n < 2) return 0.0;
  auto r = [&](std::size_t k) { return static_cast<double>(k) * dr; };

  std::vector<double> m(n, 0.0), tail(n, 0.0);
  for (std::size_t k = 1; k < n; ++k)
    m[k] = m[k - 1] + 0.5 * dr * kTwoPi * (rho[k - 1] * r(k - 1) + rho[k] * r(k));
  auto slog = [&](std::size_t k) { return k == 0 ? 0.0 : std::log(r(k)) * r(k); };  // s log s -> 0
  for (std::size_t k = n - 1; k-- > 0;)
    tail[k] = tail[k + 1] + 0.5 * dr * kTwoPi * (rho[k] * slog(k) + rho[k + 1] * slog(k + 1));

  double v = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double w = std::log(r(k)) * m[k] + tail[k];
    v += (k + 1 == n ? 0.5 : 1.0) * dr * kTwoPi * w * rho[k] * r(k);
  }
  return v;
}

}  // namespace logsp::radial
