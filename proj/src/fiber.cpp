#include "logsp/fiber.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "logsp/constants.hpp"
#include "logsp/error.hpp"

namespace logsp {

namespace {

constexpr double kBoundaryLeakLimit = 1e-6;

struct Poly {
  double alpha, beta, delta, p;  // φ(t) = α t² - β t^{p-2} - δ

  explicit Poly(const FiberScalars& sc)
      : alpha(sc.A),
        beta(sc.params.a * (sc.params.p - 2.0) / sc.params.p * sc.C),
        delta(0.25 * sc.params.gamma * sc.params.c * sc.params.c),
        p(sc.params.p) {}

  double phi(double t) const { return alpha * t * t - beta * std::pow(t, p - 2.0) - delta; }
  double dphi(double t) const { return 2.0 * alpha * t - (p - 2.0) * beta * std::pow(t, p - 3.0); }
};

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

// Root of φ in (lo, hi) given opposite signs at the ends.
double solve_bracketed(const Poly& f, double lo, double hi, double t_ref) {
  double flo = f.phi(lo);
  while (hi - lo > 1e-8 * t_ref) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f.phi(mid);
    if (fm == 0.0) return mid;
    if (sgn(fm) == sgn(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double t = 0.5 * (lo + hi);
  for (int k = 0; k < 5; ++k) {
    const double d = f.dphi(t);
    if (d == 0.0) break;
    const double next = t - f.phi(t) / d;
    if (!(next > lo && next < hi)) break;
    if (next == t) break;
    t = next;
  }
  return t;
}

// Sign of φ as t -> 0+, resolving δ = 0 by the leading small-t term.
int sign_at_zero(const Poly& f) {
  if (f.delta != 0.0) return -sgn(f.delta);
  if (f.beta <= 0.0) return 1;
  if (f.p < 4.0) return -1;
  if (f.p > 4.0) return 1;
  return sgn(f.alpha - f.beta);
}

int sign_at_infinity(const Poly& f) {
  if (f.beta <= 0.0) return 1;
  if (f.p < 4.0) return 1;
  if (f.p > 4.0) return -1;
  const int s = sgn(f.alpha - f.beta);
  return s != 0 ? s : -sgn(f.delta);
}

double expand_down(const Poly& f, double from, int target_sign, double floor) {
  double t = from;
  while (sgn(f.phi(t)) != target_sign) {
    t *= 0.5;
    if (t < floor) fail(ErrorKind::NonConvergence, "fiber root bracket underflow: near-degenerate scalars");
  }
  return t;
}

double expand_up(const Poly& f, double from, int target_sign, double cap) {
  double t = from;
  while (sgn(f.phi(t)) != target_sign) {
    t *= 2.0;
    if (t > cap) fail(ErrorKind::NonConvergence, "fiber root bracket exceeded cap: near-degenerate scalars");
  }
  return t;
}

double keys(double x) {
  x = std::abs(x);
  if (x < 1.0) return (1.5 * x - 2.5) * x * x + 1.0;
  if (x < 2.0) return ((-0.5 * x + 2.5) * x - 4.0) * x + 2.0;
  return 0.0;
}

}  // namespace

FiberScalars FiberScalars::make(double A, double C, double V, const Params& params) {
  params.validate();
  require(A > 0.0 && std::isfinite(A), "fiber scalars need A > 0");
  require(C > 0.0 && std::isfinite(C), "fiber scalars need C > 0");
  require(std::isfinite(V), "fiber scalars need a finite V");
  return FiberScalars{A, C, V, params};
}

const char* to_string(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }

Branch branch_from_string(const std::string& s) {
  if (s == "plus" || s == "+") return Branch::Plus;
  if (s == "minus" || s == "-") return Branch::Minus;
  fail(ErrorKind::InvalidArgument, "unknown branch '" + s + "' (expected plus or minus)");
}

FiberScalars scalars(const Field& u, const Params& params, const Workspace& ws) {
  params.validate();
  const double m = mass(u);
  if (std::abs(m - params.c) > 1e-8 * params.c) {
    std::ostringstream msg;
    msg << "field mass " << m << " differs from c = " << params.c;
    fail(ErrorKind::InvalidArgument, msg.str());
  }
  return FiberScalars::make(kinetic(u, ws), pnorm(u, params.p), v_total(u, ws), params);
}

double fiber_g(const FiberScalars& sc, double t) {
  require(t > 0.0, "fiber maps need t > 0");
  const auto& q = sc.params;
  return 0.5 * t * t * sc.A + 0.25 * q.gamma * (sc.V - q.c * q.c * std::log(t)) -
         q.a / q.p * std::pow(t, q.p - 2.0) * sc.C;
}

double fiber_phi(const FiberScalars& sc, double t) {
  require(t > 0.0, "fiber maps need t > 0");
  return Poly(sc).phi(t);
}

double fiber_dg(const FiberScalars& sc, double t) { return fiber_phi(sc, t) / t; }

double fiber_ddg(const FiberScalars& sc, double t) {
  require(t > 0.0, "fiber maps need t > 0");
  const Poly f(sc);
  return f.dphi(t) / t - f.phi(t) / (t * t);
}

double t_star(const FiberScalars& sc) {
  const auto& q = sc.params;
  require(q.a > 0.0, "t* needs a > 0");
  require(q.p != 4.0, "t* is undefined at p = 4");
  const double ratio = q.a * (q.p - 2.0) * (q.p - 2.0) * sc.C / (2.0 * q.p * sc.A);
  return std::pow(ratio, 1.0 / (4.0 - q.p));
}

std::vector<BranchPoint> critical_points(const FiberScalars& sc, std::vector<std::string>* diagnostics) {
  const Poly f(sc);
  std::vector<double> roots;

  if (f.beta > 0.0 && f.p != 4.0) {
    const double ts = t_star(sc);
    const double at_star = f.phi(ts);
    const int s0 = sign_at_zero(f), sinf = sign_at_infinity(f), sm = sgn(at_star);
    if (sm != 0 && s0 != sm) {
      const double lo = expand_down(f, 0.5 * ts, s0, 1e-12 * ts);
      roots.push_back(solve_bracketed(f, lo, ts, ts));
    }
    if (sm != 0 && sinf != sm) {
      const double hi = expand_up(f, 2.0 * ts, sinf, 1e6 * ts);
      roots.push_back(solve_bracketed(f, ts, hi, ts));
    }
    if (sm == 0 && diagnostics) diagnostics->push_back("fiber critical point coincides with t*: degenerate (Λ⁰)");
  } else {
    const int s0 = sign_at_zero(f), sinf = sign_at_infinity(f);
    if (s0 != sinf && s0 != 0 && sinf != 0) {
      const double lo = expand_down(f, 1.0, s0, 1e-12);
      const double hi = expand_up(f, 1.0, sinf, 1e12);
      roots.push_back(solve_bracketed(f, lo, hi, std::max(1.0, lo)));
    }
  }

  std::vector<BranchPoint> out;
  for (double s : roots) {
    const double gpp = fiber_ddg(sc, s);
    if (std::abs(gpp) <= 1e-10 * sc.A) {
      if (diagnostics) {
        std::ostringstream msg;
        msg << "near-degenerate fiber critical point at s = " << s << " (g'' = " << gpp << ")";
        diagnostics->push_back(msg.str());
      }
      continue;
    }
    out.push_back(BranchPoint{s, gpp > 0.0 ? Branch::Plus : Branch::Minus, fiber_g(sc, s), gpp});
  }
  std::sort(out.begin(), out.end(), [](const BranchPoint& a, const BranchPoint& b) { return a.s < b.s; });
  return out;
}

VMembership in_V(const FiberScalars& sc) {
  const auto& q = sc.params;
  require(q.gamma < 0.0 && q.a > 0.0 && q.p < 4.0, "V membership is defined for γ < 0, a > 0, p < 4");
  VMembership m;
  m.t_star = t_star(sc);
  m.margin = m.t_star * m.t_star * sc.A - k0(q);
  m.inside = m.margin > 0.0;
  m.q_at_t_star = fiber_phi(sc, m.t_star);
  return m;
}

Field dilate(const Field& u, double t) {
  require(t > 0.0 && std::isfinite(t), "dilation factor must be positive");
  const Grid& g = u.grid();
  const long n = static_cast<long>(g.n);
  const double total = mass(u);

  if (total > 0.0) {
    // Source mass that would land in the target's boundary frame or beyond.
    const double edge = 0.4 * g.L * t;
    double outer = 0.0;
    for (long j = 0; j < n; ++j)
      for (long i = 0; i < n; ++i)
        if (std::max(std::abs(g.coord(i)), std::abs(g.coord(j))) >= edge) outer += u(i, j) * u(i, j);
    if (outer * g.cell_area() / total >= kBoundaryLeakLimit)
      fail(ErrorKind::DomainTooSmall, "dilated support escapes the domain");
  }

  auto src = [&](long i, long j) -> double {
    if (i < 0 || j < 0 || i >= n || j >= n) return 0.0;
    return u(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  };
  std::vector<double> out(g.size());
#pragma omp parallel for schedule(static)
  for (long j = 0; j < n; ++j) {
    const double fy = (t * g.coord(static_cast<std::size_t>(j)) + 0.5 * g.L) / g.h;
    const double jy = std::floor(fy);
    const double ry = fy - jy;
    std::array<double, 4> wy{keys(1.0 + ry), keys(ry), keys(1.0 - ry), keys(2.0 - ry)};
    for (long i = 0; i < n; ++i) {
      const double fx = (t * g.coord(static_cast<std::size_t>(i)) + 0.5 * g.L) / g.h;
      const double ix = std::floor(fx);
      const double rx = fx - ix;
      std::array<double, 4> wx{keys(1.0 + rx), keys(rx), keys(1.0 - rx), keys(2.0 - rx)};
      double s = 0.0;
      for (int b = 0; b < 4; ++b) {
        const long jj = static_cast<long>(jy) - 1 + b;
        double row = 0.0;
        for (int a = 0; a < 4; ++a) row += wx[a] * src(static_cast<long>(ix) - 1 + a, jj);
        s += wy[b] * row;
      }
      out[j * n + i] = t * s;
    }
  }
  return Field(g, std::move(out));
}

Field project_to_lambda(const Field& u, const Params& params, Branch branch, const Workspace& ws) {
  const auto sc = scalars(u, params, ws);
  for (const auto& bp : critical_points(sc)) {
    if (bp.branch != branch) continue;
    if (std::abs(bp.s - 1.0) < 1e-12) return u;
    return dilate(u, bp.s);
  }
  fail(ErrorKind::InvalidArgument, std::string("fiber has no ") + to_string(branch) + " critical point");
}

}  // namespace logsp
