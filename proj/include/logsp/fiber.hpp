#pragma once

#include <string>
#include <vector>

#include "logsp/convolution.hpp"
#include "logsp/functionals.hpp"
#include "logsp/grid_field.hpp"

namespace logsp {

/// Invariants of u on S(c). Under u^t(x) = t u(tx):
///   A(u^t) = t² A,  C(u^t) = t^{p-2} C,  V(u^t) = V - c² log t,
/// so the whole fiber t -> F(u^t) is a function of these scalars alone.
struct FiberScalars {
  double A = 0.0;
  double C = 0.0;
  double V = 0.0;
  Params params;

  /// Throws InvalidArgument unless A > 0 and C > 0.
  static FiberScalars make(double A, double C, double V, const Params& params);
};

enum class Branch { Plus, Minus };

const char* to_string(Branch b);
Branch branch_from_string(const std::string& s);

struct BranchPoint {
  double s = 0.0;
  Branch branch = Branch::Plus;
  double g = 0.0;
  double gpp = 0.0;
};

/// A, C, V of u. Throws when |mass(u) - c| > 1e-8 c or u is zero.
FiberScalars scalars(const Field& u, const Params& params, const Workspace& ws);

/// g(t) = F(u^t) = t²A/2 + γ(V - c² log t)/4 - a t^{p-2} C/p.
double fiber_g(const FiberScalars& sc, double t);
/// φ(t) = t g'(t) = Q(u^t) = t²A - a(p-2)/p t^{p-2} C - γc²/4.
double fiber_phi(const FiberScalars& sc, double t);
double fiber_dg(const FiberScalars& sc, double t);
double fiber_ddg(const FiberScalars& sc, double t);

/// Unique t with 2A(u^t) = a(p-2)²/p C(u^t); throws when a <= 0 or p == 4.
double t_star(const FiberScalars& sc);

/// Critical points of g, i.e. the dilations projecting u onto Λ(c), sorted by s.
/// Near-degenerate roots (|g''| <= 1e-10 A) are not returned; if `diagnostics`
/// is given, a message is appended for each one.
std::vector<BranchPoint> critical_points(const FiberScalars& sc, std::vector<std::string>* diagnostics = nullptr);

struct VMembership {
  bool inside = false;
  double t_star = 0.0;
  double margin = 0.0;  ///< (t*)² A - k0
  double q_at_t_star = 0.0;
};

/// u ∈ V  <=>  (t*)² A > k0. Only meaningful for γ < 0, a > 0, p < 4.
VMembership in_V(const FiberScalars& sc);

/// Materializes u^t(x) = t u(tx) by bicubic (Keys, a = -1/2) resampling;
/// samples outside the box are zero. Throws DomainTooSmall when more than 1e-6
/// of the mass would land in the boundary frame.
Field dilate(const Field& u, double t);

/// u^s for the critical point s of the requested branch.
Field project_to_lambda(const Field& u, const Params& params, Branch branch, const Workspace& ws);

}  // namespace logsp
