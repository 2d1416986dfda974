#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logsp/functionals.hpp"

namespace logsp {

// Threshold formulas ---------------------------------------------------------

/// Critical kinetic level k0 = (p-2)|γ|c² / (4|p-4|). Throws for p = 4 or γ = 0.
double k0(const Params& params);

/// Mass threshold c0 of the γ > 0, p > 4 regime.
double c0(double p, double a, double gamma, double kgn);

/// γ < 0 coupling constants, 2 < p < 4.
double k1(double p, double kgn);
double k2(double p, double kgn);

/// K_i |γ|^{(4-p)/2} c^{3-p}: the coupling thresholds on a for given (γ, p, c).
double k1_threshold(const Params& params, double kgn);
double k2_threshold(const Params& params, double kgn);

/// Mass thresholds c_i = (a/K_i)^{1/(3-p)} |γ|^{-(4-p)/(2(3-p))}, p ≠ 3.
/// They solve a = K_i |γ|^{(4-p)/2} c^{3-p} for c.
double mass_threshold(double K, double p, double a, double gamma);

/// Mass-critical bound 2/(a K_GN) at p = 4.
double masscritical_threshold(double a, double kgn4);

/// inf over S(c) of Q, attained by the Gagliardo-Nirenberg optimizer:
///   γ < 0, a > 0, p < 4:  |γ|c²/4 - K̃ (K_GN a c)^{2/(4-p)},
/// with K̃ = (4-p)(p-2)^{p/(4-p)} / (p^{2/(4-p)} 2^{2/(4-p)}).
/// Λ(c) is non-empty iff this is <= 0.
double inf_Q_on_sphere(const Params& params, double kgn);

// Sharp constants --------------------------------------------------------------

enum class ConstantMethod { OdeShooting, RayleighOptimization, EmpiricalFamily };
const char* to_string(ConstantMethod m);

struct SharpConstants {
  double p = 0.0;
  double kgn = 0.0;
  double kv2 = 0.0;
  ConstantMethod method = ConstantMethod::OdeShooting;
  double kgn_tolerance = 0.0;
};

/// Sharp Gagliardo-Nirenberg constant in C(u) <= K_GN A(u)^{p/2-1} ‖u‖₂², from
/// the radial ground state of -Δφ + φ = φ^{p-1}. Throws when shooting fails.
double kgn_estimate(double p);

/// Best K over a radial Gaussian-mixture family, by gradient ascent on the
/// scale-invariant quotient C / (A^{p/2-1} M). A lower bound on K_GN.
double kgn_rayleigh_estimate(double p);

/// Quotient of the single Gaussian: 2 / (p π^{p/2-1}).
double kgn_gaussian_trial(double p);

/// Empirical sup of V2 / (√A c^{3/2}) over a fixed 50-profile family. A lower
/// bound on the constant K of the V2 estimate.
double kv2_estimate();

/// kgn_estimate(p) and kv2_estimate(), both cached per process.
SharpConstants sharp_constants(double p);

// Regime classification ----------------------------------------------------

enum class RegimeTag {
  GlobalMin,
  GlobalMinMassCritical,
  LocalMinPlusMountainPass,
  NoCriticalPoint,
  LambdaEmpty,
  MaxOnLambda,
  TwoCriticalPointsOnLambda,
  OpenUnknown,
};
const char* to_string(RegimeTag t);

/// One numeric inequality lhs `relation` rhs and whether it holds.
struct Inequality {
  std::string name;
  double lhs = 0.0;
  std::string relation;
  double rhs = 0.0;
  bool holds = false;
};

struct Certificate {
  std::string rule;
  std::vector<Inequality> chain;
  std::vector<Inequality> checks;  ///< auxiliary consistency checks, not part of the rule
};

struct RegimeLabel {
  RegimeTag tag = RegimeTag::OpenUnknown;
  Certificate certificate;
};

RegimeLabel regime_classify(const Params& params, const SharpConstants& sharp);

/// True for the tags that assert existence of at least one critical point.
bool is_existence(RegimeTag t);

}  // namespace logsp
