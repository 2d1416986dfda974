#pragma once

#include <span>
#include <vector>

namespace logsp::radial {

/// Positive radial ground state of -Δφ + φ = φ^{p-1} in the plane, found by
/// shooting on φ(0). Integrals are over ℝ².
struct GroundState {
  double p = 0.0;
  double alpha = 0.0;      ///< φ(0)
  double r_end = 0.0;      ///< radius where the final shot was truncated
  double mass = 0.0;       ///< ∫φ²
  double kinetic = 0.0;    ///< ∫|∇φ|²
  double pnorm = 0.0;      ///< ∫φ^p
  double tolerance = 0.0;  ///< relative bracket width on alpha at exit
  double dr = 0.0;
  std::vector<double> profile;  ///< φ(k dr), zero past r_end

  /// C / (A^{p/2-1} M), the Gagliardo-Nirenberg quotient of φ.
  double gn_quotient() const;
};

/// Throws NonConvergence when the bracket cannot be established.
GroundState ground_state(double p, double dr = 1e-3);

/// ∬ log|x-y| ρ(x)ρ(y) for a radial density sampled at r_k = k dr, by Newton's formula
///   w(r) = log(r) m(r) + 2π ∫_r^∞ log(s) ρ(s) s ds,  m(r) = 2π ∫_0^r ρ(s) s ds.
/// Trapezoid rule throughout, so the error is O(dr²).
double log_energy(std::span<const double> rho, double dr);

}  // namespace logsp::radial
