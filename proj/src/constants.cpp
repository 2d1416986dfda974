#include "logsp/constants.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>

#include "logsp/convolution.hpp"
#include "logsp/error.hpp"
#include "logsp/radial.hpp"

namespace logsp {

namespace {

constexpr double kPi = std::numbers::pi;

Inequality compare(std::string name, double lhs, std::string relation, double rhs) {
  bool holds = false;
  if (relation == "<") holds = lhs < rhs;
  else if (relation == "<=") holds = lhs <= rhs;
  else if (relation == ">") holds = lhs > rhs;
  else if (relation == ">=") holds = lhs >= rhs;
  else if (relation == "==") holds = lhs == rhs;
  else if (relation == "~=") holds = std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(lhs), std::abs(rhs));
  return Inequality{std::move(name), lhs, std::move(relation), rhs, holds};
}

void require_lambda_regime(double p, double kgn) {
  require(p > 2.0 && p < 4.0, "K1/K2 need 2 < p < 4");
  require(kgn > 0.0, "K_GN must be positive");
}

}  // namespace

double k0(const Params& params) {
  params.validate();
  require(params.p != 4.0, "k0 is undefined at p = 4");
  require(params.gamma != 0.0, "k0 needs gamma != 0");
  return (params.p - 2.0) * std::abs(params.gamma) * params.c * params.c / (4.0 * std::abs(params.p - 4.0));
}

double c0(double p, double a, double gamma, double kgn) {
  require(p > 4.0, "c0 needs p > 4");
  require(a > 0.0 && gamma > 0.0 && kgn > 0.0, "c0 needs a, gamma, K_GN > 0");
  const double inner = p * std::pow(p - 4.0, 0.5 * (p - 4.0)) /
                       (std::pow(p - 2.0, 0.5 * p) * a * std::pow(gamma, 0.5 * (p - 4.0)) * kgn);
  return 2.0 * std::pow(inner, 1.0 / (p - 3.0));
}

double k1(double p, double kgn) {
  require_lambda_regime(p, kgn);
  const double q = 4.0 - p;
  return std::pow(2.0, -0.5 * q) / kgn * p /
         (std::pow(2.0, 3.0 - p) * std::pow(p - 2.0, 0.5 * p) * std::pow(q, 0.5 * q));
}

double k2(double p, double kgn) { return std::pow(2.0, 0.5 * (4.0 - p)) * k1(p, kgn); }

double k1_threshold(const Params& params, double kgn) {
  params.validate();
  return k1(params.p, kgn) * std::pow(std::abs(params.gamma), 0.5 * (4.0 - params.p)) *
         std::pow(params.c, 3.0 - params.p);
}

double k2_threshold(const Params& params, double kgn) {
  params.validate();
  return k2(params.p, kgn) * std::pow(std::abs(params.gamma), 0.5 * (4.0 - params.p)) *
         std::pow(params.c, 3.0 - params.p);
}

double mass_threshold(double K, double p, double a, double gamma) {
  require(p > 2.0 && p < 4.0 && p != 3.0, "mass thresholds need 2 < p < 4, p != 3");
  require(K > 0.0 && a > 0.0 && gamma != 0.0, "mass thresholds need K > 0, a > 0, gamma != 0");
  return std::pow(a / K, 1.0 / (3.0 - p)) * std::pow(std::abs(gamma), -(4.0 - p) / (2.0 * (3.0 - p)));
}

double masscritical_threshold(double a, double kgn4) {
  require(a > 0.0 && kgn4 > 0.0, "mass-critical bound needs a > 0 and K_GN > 0");
  return 2.0 / (a * kgn4);
}

double inf_Q_on_sphere(const Params& params, double kgn) {
  params.validate();
  require(params.gamma < 0.0 && params.a > 0.0 && params.p < 4.0, "inf Q is closed-form for gamma < 0, a > 0, p < 4");
  require(kgn > 0.0, "K_GN must be positive");
  const double p = params.p, e = 2.0 / (4.0 - p);
  const double kt = (4.0 - p) * std::pow(p - 2.0, p / (4.0 - p)) / (std::pow(p, e) * std::pow(2.0, e));
  return std::abs(params.gamma) * params.c * params.c / 4.0 - kt * std::pow(kgn * params.a * params.c, e);
}

const char* to_string(ConstantMethod m) {
  switch (m) {
    case ConstantMethod::OdeShooting: return "ode_shooting";
    case ConstantMethod::RayleighOptimization: return "rayleigh_optimization";
    case ConstantMethod::EmpiricalFamily: return "empirical_family";
  }
  return "?";
}

double kgn_estimate(double p) {
  require(p > 2.0 && std::isfinite(p), "K_GN needs p > 2");
  return radial::ground_state(p).gn_quotient();
}

double kgn_gaussian_trial(double p) {
  require(p > 2.0, "K_GN needs p > 2");
  return 2.0 / (p * std::pow(kPi, 0.5 * p - 1.0));
}

double kgn_rayleigh_estimate(double p) {
  require(p > 2.0 && std::isfinite(p), "K_GN needs p > 2");
  constexpr int kBasis = 8;
  constexpr int kNodes = 3000;
  constexpr double kRmax = 30.0;
  const double dr = kRmax / kNodes;

  // Radial Gaussians of geometric widths, tabulated once with their derivatives.
  std::vector<double> b(kBasis * (kNodes + 1)), db(b.size());
  for (int k = 0; k < kBasis; ++k) {
    const double sigma = 0.3 * std::pow(1.6, k);
    for (int i = 0; i <= kNodes; ++i) {
      const double r = i * dr;
      const double g = std::exp(-0.5 * r * r / (sigma * sigma));
      b[k * (kNodes + 1) + i] = g;
      db[k * (kNodes + 1) + i] = -r / (sigma * sigma) * g;
    }
  }

  auto log_quotient = [&](const std::vector<double>& w) {
    double m = 0.0, a = 0.0, c = 0.0;
    for (int i = 0; i <= kNodes; ++i) {
      double u = 0.0, du = 0.0;
      for (int k = 0; k < kBasis; ++k) {
        u += w[k] * b[k * (kNodes + 1) + i];
        du += w[k] * db[k * (kNodes + 1) + i];
      }
      const double wt = (i == 0 || i == kNodes ? 0.5 : 1.0) * i * dr;
      m += wt * u * u;
      a += wt * du * du;
      c += wt * std::pow(std::abs(u), p);
    }
    // The 2π dr factors cancel except for one.
    const double s = 2.0 * kPi * dr;
    return std::log(s * c) - (0.5 * p - 1.0) * std::log(s * a) - std::log(s * m);
  };

  std::vector<double> w(kBasis, 0.05);
  w[kBasis / 2] = 1.0;
  double f = log_quotient(w), step = 0.1;
  for (int it = 0; it < 400 && step > 1e-10; ++it) {
    std::vector<double> grad(kBasis);
    for (int k = 0; k < kBasis; ++k) {
      auto wp = w, wm = w;
      wp[k] += 1e-6;
      wm[k] -= 1e-6;
      grad[k] = (log_quotient(wp) - log_quotient(wm)) / 2e-6;
    }
    double gn = 0.0;
    for (double g : grad) gn += g * g;
    gn = std::sqrt(gn);
    if (gn < 1e-12) break;
    while (step > 1e-10) {
      auto trial = w;
      for (int k = 0; k < kBasis; ++k) trial[k] += step * grad[k] / gn;
      const double ft = log_quotient(trial);
      if (ft > f) {
        w = trial;
        f = ft;
        step *= 1.5;
        break;
      }
      step *= 0.5;
    }
  }
  return std::exp(f);
}

double kv2_estimate() {
  static const double cached = [] {
    const Grid grid = make_grid(32.0, 256);
    Workspace ws(grid);
    std::vector<ProfileKind> family;
    for (int k = 0; k < 20; ++k) family.push_back(GaussianProfile{0.5 * std::pow(6.0, k / 19.0), {0.0, 0.0}});
    for (int k = 0; k < 15; ++k) family.push_back(RingProfile{1.0 + 0.35 * k, 0.4 + 0.04 * k});
    for (int k = 0; k < 15; ++k) {
      const double sep = 3.0 + 0.35 * k;
      const double r = 1.0 + 0.05 * k;
      family.push_back(TwoBumpProfile{{sep, 0.0}, 1.0, r, r, 0.5, {-0.5 * sep, 0.0}});
    }
    double best = 0.0;
    for (const auto& kind : family) {
      const Field u = discretize(ProfileSpec{kind, 1.0}, grid);
      const double c = mass(u);
      best = std::max(best, std::abs(v2(u, ws)) / (std::sqrt(kinetic(u, ws)) * std::pow(c, 1.5)));
    }
    return best;
  }();
  return cached;
}

SharpConstants sharp_constants(double p) {
  static std::mutex mu;
  static std::map<double, SharpConstants> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(p); it != cache.end()) return it->second;
  }
  const auto gs = radial::ground_state(p);
  SharpConstants s;
  s.p = p;
  s.kgn = gs.gn_quotient();
  s.kv2 = kv2_estimate();
  s.method = ConstantMethod::OdeShooting;
  // The ground state satisfies M = 2C/p and A = (p-2)C/p; their defect bounds the quotient error.
  s.kgn_tolerance = std::max({gs.tolerance, std::abs(gs.mass - 2.0 * gs.pnorm / p) / gs.mass,
                              std::abs(gs.kinetic - (p - 2.0) * gs.pnorm / p) / gs.kinetic});
  std::lock_guard lock(mu);
  cache.emplace(p, s);
  return s;
}

const char* to_string(RegimeTag t) {
  switch (t) {
    case RegimeTag::GlobalMin: return "GlobalMin";
    case RegimeTag::GlobalMinMassCritical: return "GlobalMinMassCritical";
    case RegimeTag::LocalMinPlusMountainPass: return "LocalMinPlusMountainPass";
    case RegimeTag::NoCriticalPoint: return "NoCriticalPoint";
    case RegimeTag::LambdaEmpty: return "LambdaEmpty";
    case RegimeTag::MaxOnLambda: return "MaxOnLambda";
    case RegimeTag::TwoCriticalPointsOnLambda: return "TwoCriticalPointsOnLambda";
    case RegimeTag::OpenUnknown: return "OpenUnknown";
  }
  return "?";
}

bool is_existence(RegimeTag t) {
  switch (t) {
    case RegimeTag::GlobalMin:
    case RegimeTag::GlobalMinMassCritical:
    case RegimeTag::LocalMinPlusMountainPass:
    case RegimeTag::MaxOnLambda:
    case RegimeTag::TwoCriticalPointsOnLambda:
      return true;
    default:
      return false;
  }
}

RegimeLabel regime_classify(const Params& params, const SharpConstants& sharp) {
  params.validate();
  const double g = params.gamma, a = params.a, p = params.p, c = params.c;
  RegimeLabel out;
  auto& cert = out.certificate;
  auto label = [&](RegimeTag tag, std::string rule) {
    out.tag = tag;
    cert.rule = std::move(rule);
    return out;
  };

  if (g == 0.0) {
    cert.chain.push_back(compare("gamma", g, "==", 0.0));
    return label(RegimeTag::OpenUnknown, "gamma = 0: no logarithmic interaction, outside the classified regimes");
  }

  if (g > 0.0) {
    cert.chain.push_back(compare("gamma", g, ">", 0.0));
    if (a <= 0.0) {
      cert.chain.push_back(compare("a", a, "<=", 0.0));
      return label(RegimeTag::GlobalMin, "Theorem 1.1(i): gamma > 0, a <= 0, p > 2; m is achieved");
    }
    cert.chain.push_back(compare("a", a, ">", 0.0));
    if (p < 4.0) {
      cert.chain.push_back(compare("p", p, "<", 4.0));
      return label(RegimeTag::GlobalMin, "Theorem 1.1(ii): gamma > 0, a > 0, p < 4; m is achieved");
    }
    require(sharp.kgn > 0.0, "classification needs K_GN for this p");
    if (std::abs(p - 4.0) < 1e-12) {
      const double thr = masscritical_threshold(a, sharp.kgn);
      cert.chain.push_back(compare("p", p, "~=", 4.0));
      cert.chain.push_back(compare("c vs 2/(a K_GN)", c, "<", thr));
      if (c < thr)
        return label(RegimeTag::GlobalMinMassCritical, "Theorem 1.1(iii): a > 0, p = 4, c < 2/(a K_GN); m is achieved");
      return label(RegimeTag::OpenUnknown, "p = 4 with c >= 2/(a K_GN): not covered");
    }
    const double cz = c0(p, a, g, sharp.kgn);
    cert.chain.push_back(compare("p", p, ">", 4.0));
    cert.chain.push_back(compare("c vs c0", c, "<", cz));
    cert.checks.push_back(compare("k0", k0(params), ">", 0.0));
    if (c < cz)
      return label(RegimeTag::LocalMinPlusMountainPass,
                   "Theorem 1.2: gamma > 0, a > 0, p > 4, c < c0; local minimizer u+ on Lambda+ and mountain-pass u- on Lambda-");
    return label(RegimeTag::OpenUnknown, "p > 4 with c >= c0: not covered");
  }

  cert.chain.push_back(compare("gamma", g, "<", 0.0));
  if (a <= 0.0) {
    cert.chain.push_back(compare("a", a, "<=", 0.0));
    return label(RegimeTag::NoCriticalPoint,
                 "Theorem 1.4: gamma < 0, a <= 0; the fiber map is strictly increasing and F has no critical point on S(c)");
  }
  cert.chain.push_back(compare("a", a, ">", 0.0));
  if (p >= 4.0) {
    cert.chain.push_back(compare("p", p, ">=", 4.0));
    return label(RegimeTag::OpenUnknown, "gamma < 0, a > 0, p >= 4: open");
  }
  require(sharp.kgn > 0.0, "classification needs K_GN for this p");
  cert.chain.push_back(compare("p", p, "<", 4.0));
  const double t1 = k1_threshold(params, sharp.kgn), t2 = k2_threshold(params, sharp.kgn);
  const double iq = inf_Q_on_sphere(params, sharp.kgn);
  cert.checks.push_back(compare("inf over S(c) of Q (Lambda nonempty iff <= 0)", iq, "<=", 0.0));
  cert.checks.push_back(compare("a vs K2 threshold", a, ">=", t2));

  const bool at_t1 = std::abs(a - t1) <= 1e-12 * t1;
  if (a < t1 && !at_t1) {
    cert.chain.push_back(compare("a vs K1 threshold", a, "<", t1));
    return label(RegimeTag::LambdaEmpty, "Lemma 4.1: a < K1 |gamma|^{(4-p)/2} c^{3-p}; Lambda(c) is empty");
  }
  if (at_t1) {
    cert.chain.push_back(compare("a vs K1 threshold", a, "~=", t1));
    cert.chain.push_back(compare("a vs K2 threshold", a, "<", t2));
    return label(RegimeTag::MaxOnLambda, "Theorem 4.7: a = K1 |gamma|^{(4-p)/2} c^{3-p}; sup over Lambda(c) of F is achieved");
  }
  cert.chain.push_back(compare("a vs K1 threshold", a, ">", t1));
  cert.chain.push_back(compare("a vs K2 threshold", a, "<", t2));
  if (a < t2)
    return label(RegimeTag::TwoCriticalPointsOnLambda,
                 "Theorem 1.5: K1 threshold < a < K2 threshold; critical points u- on Lambda- and u+ on Lambda+");
  return label(RegimeTag::OpenUnknown, "gamma < 0, a >= K2 threshold: not covered");
}

}  // namespace logsp
