// Acceptance run: one PASS/FAIL line per criterion.
//
//   logsp_acceptance [--sweep-cli PATH] [--strict] [ID ...]
//
// With no IDs every criterion runs. The exit code is nonzero when a criterion
// fails, except for those listed in kExpectedFailures whose failure matches the
// documented cause; --strict counts those too.

#include <fftw3.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>

#include "logsp/constants.hpp"
#include "logsp/error.hpp"
#include "logsp/fiber.hpp"
#include "logsp/functionals.hpp"
#include "logsp/radial.hpp"
#include "logsp/solvers.hpp"

using namespace logsp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  bool expected = false;  // failure with the documented cause
};

struct Options {
  std::string sweep_cli;
  bool strict = false;
  std::set<int> only;
};

// Criteria that cannot pass as stated. The run still reports FAIL for them.
const std::set<int> kExpectedFailures = {10};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

// Independent pieces -----------------------------------------------------------

// Radial RK4 shooting for -Δφ + φ = φ^{p-1}; returns ∫φ² over the plane.
double townes_mass(double p) {
  const double dr = 1e-3;
  auto shoot = [&](double alpha, double* mass) {
    double r = 1e-4;
    const double k = 0.25 * alpha * (1.0 - std::pow(alpha, p - 2.0));
    double y = alpha + k * r * r, v = 2.0 * k * r, m = 0.0;
    auto f = [&](double rr, double yy, double vv) {
      return std::pair{vv, -vv / rr + yy - std::pow(std::abs(yy), p - 2.0) * yy};
    };
    while (r < 40.0) {
      const auto [a1, b1] = f(r, y, v);
      const auto [a2, b2] = f(r + dr / 2, y + dr / 2 * a1, v + dr / 2 * b1);
      const auto [a3, b3] = f(r + dr / 2, y + dr / 2 * a2, v + dr / 2 * b2);
      const auto [a4, b4] = f(r + dr, y + dr * a3, v + dr * b3);
      m += 2.0 * std::numbers::pi * y * y * r * dr;
      y += dr / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
      v += dr / 6 * (b1 + 2 * b2 + 2 * b3 + b4);
      r += dr;
      if (y < 0.0) return 1;
      if (v > 0.0) return -1;
      if (mass) *mass = m;
    }
    return 0;
  };
  double lo = 1.0, hi = 4.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (shoot(mid, nullptr) > 0 ? hi : lo) = mid;
  }
  double m = 0.0;
  shoot(lo, &m);
  return m;
}

// V of the unit gaussian density (c/π)e^{-r²} by quadrature of w ρ with
// w(r) = c (log r + E1(r²)/2).
double gaussian_v_quadrature(double c) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [c](double r) {
    if (r < 1e-8 || r * r > 700.0) return 0.0;
    const double w = c * (std::log(r) + 0.5 * boost::math::expint(1, r * r));
    return w * c * std::exp(-r * r) * 2.0 * r;
  };
  return integrator.integrate(f);
}

// Sub-cell translation by a Fourier phase; the field is treated as periodic.
Field fourier_shift(const Field& u, double dx, double dy) {
  const Grid& g = u.grid();
  const int n = static_cast<int>(g.n), half = n / 2 + 1;
  std::vector<double> r(u.values().begin(), u.values().end());
  std::vector<fftw_complex> c(static_cast<std::size_t>(n) * half);
  fftw_plan fwd = fftw_plan_dft_r2c_2d(n, n, r.data(), c.data(), FFTW_ESTIMATE);
  fftw_plan bwd = fftw_plan_dft_c2r_2d(n, n, c.data(), r.data(), FFTW_ESTIMATE);
  fftw_execute(fwd);
  const double dk = 2.0 * std::numbers::pi / g.L;
  for (int j = 0; j < n; ++j) {
    const double ky = dk * (j < n / 2 ? j : j - n);
    for (int i = 0; i < half; ++i) {
      const double kx = dk * i;
      const double ph = -(kx * dx + ky * dy);
      auto& z = c[static_cast<std::size_t>(j) * half + i];
      const double re = z[0] * std::cos(ph) - z[1] * std::sin(ph);
      const double im = z[0] * std::sin(ph) + z[1] * std::cos(ph);
      z[0] = re / (n * n);
      z[1] = im / (n * n);
    }
  }
  fftw_execute(bwd);
  fftw_destroy_plan(fwd);
  fftw_destroy_plan(bwd);
  return Field(g, std::move(r));
}

std::array<double, 2> centroid(const Field& u) {
  const Grid& g = u.grid();
  double m = 0.0, x = 0.0, y = 0.0;
  for (std::size_t j = 0; j < g.n; ++j)
    for (std::size_t i = 0; i < g.n; ++i) {
      const double w = u(i, j) * u(i, j);
      m += w;
      x += w * g.coord(i);
      y += w * g.coord(j);
    }
  return {x / m, y / m};
}

// min over translations of ‖u - v(· - shift)‖ / ‖u‖: centroid alignment, then a
// shrinking pattern search in the shift.
double aligned_distance(const Field& u, const Field& v) {
  const auto cu = centroid(u), cv = centroid(v);
  double sx = cu[0] - cv[0], sy = cu[1] - cv[1];
  auto dist = [&](double dx, double dy) { return std::sqrt(mass(u - fourier_shift(v, dx, dy)) / mass(u)); };
  double best = dist(sx, sy);
  for (double step = 0.5 * u.grid().h; step > 1e-4 * u.grid().h; step *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (auto [ex, ey] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
        const double d = dist(sx + ex * step, sy + ey * step);
        if (d < best) {
          best = d;
          sx += ex * step;
          sy += ey * step;
          moved = true;
        }
      }
    }
  }
  return best;
}

bool certified(const SolveReport& r, double tol, std::string& why) {
  std::ostringstream os;
  os << r.solver << ": converged=" << r.converged << " |Q|=" << r.q_residual << " poh=" << r.pohozaev_residual
     << " el=" << r.el_residual << " F=" << r.breakdown.F << " iters=" << r.iters;
  why = os.str();
  return r.converged && r.q_residual < tol && r.pohozaev_residual < tol && r.el_residual < tol;
}

// Criteria ---------------------------------------------------------------------

Outcome c01_scaling_laws(const Options&) {
  const Grid g = make_grid(40.0, 512);
  const Workspace ws(g);
  const Field u = discretize({GaussianProfile{1.0}, 1.0}, g);
  const double A = kinetic(u, ws), C = pnorm(u, 3.0), V = v_total(u, ws);
  double worst_a = 0.0, worst_c = 0.0, worst_v = 0.0;
  for (double t : {0.5, 2.0}) {
    const Field ut = dilate(u, t);
    worst_a = std::max(worst_a, rel(kinetic(ut, ws) / A, t * t));
    worst_c = std::max(worst_c, rel(pnorm(ut, 3.0) / C, t));
    worst_v = std::max(worst_v, std::abs(v_total(ut, ws) - V + std::log(t)));
  }
  return {worst_a < 1e-3 && worst_c < 1e-3 && worst_v < 1e-3,
          fmt("max rel err A %.2e, C %.2e; max abs err V %.2e", worst_a, worst_c, worst_v)};
}

Outcome c02_gaussian_closed_forms(const Options&) {
  const Grid g = make_grid(40.0, 512);
  const Workspace ws(g);
  const double v_closed = 0.5 * (std::numbers::ln2 - std::numbers::egamma);
  const double oracle_gap = rel(gaussian_v_quadrature(1.0), v_closed);
  double worst = 0.0;
  for (double c : {1.0, 2.0}) {
    const Field u = discretize({GaussianProfile{1.0}, c}, g);
    worst = std::max({worst, rel(kinetic(u, ws), c),
                      rel(pnorm(u, 3.0), 2.0 * std::pow(c, 1.5) / (3.0 * std::sqrt(std::numbers::pi))),
                      rel(v_total(u, ws), v_closed * c * c)});
  }
  return {worst < 1e-3 && oracle_gap < 1e-10,
          fmt("max rel err %.2e over c in {1,2}; V closed form vs quadrature %.1e", worst, oracle_gap)};
}

Outcome c03_gradient_check(const Options&) {
  const Grid g = make_grid(20.0, 128);
  const Workspace ws(g);
  const Params prm{1.0, 1.0, 3.0, 1.0};
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Field u = discretize({RandomSmoothProfile{static_cast<std::uint64_t>(k), 1.5, 1.8}, 1.0}, g);
    const Field phi = discretize({RandomSmoothProfile{static_cast<std::uint64_t>(1000 + k), 1.5, 1.8}, 1.0}, g);
    const double an = inner(grad_energy(u, prm, ws), phi);
    const double eps = 1e-5;
    const double fd = (energy(axpy(eps, phi, u), prm, ws).F - energy(axpy(-eps, phi, u), prm, ws).F) / (2 * eps);
    worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(an)));
  }
  return {worst < 1e-5, fmt("max rel err %.2e over 10 random pairs", worst)};
}

Outcome c04_pohozaev(const Options&) {
  const Grid g = make_grid(40.0, 256);
  const auto r = global_minimize({1.0, 0.0, 3.0, 1.0}, g, {}, {GaussianProfile{1.5}, 1.0});
  std::string why;
  const bool ok = certified(r, 1e-3, why);
  return {ok, why};
}

Outcome c05_fiber_roots(const Options&) {
  const Params q{1.0, 1.0, 6.0, 1.0};
  const auto sc = FiberScalars::make(1.0, 1.0, 0.0, q);
  // φ = t² - (2/3) t⁴ - 1/4, a quadratic in t²
  const double lo = std::sqrt(0.75 * (1.0 - 1.0 / std::sqrt(3.0)));
  const double hi = std::sqrt(0.75 * (1.0 + 1.0 / std::sqrt(3.0)));
  const auto cps = critical_points(sc);
  if (cps.size() != 2) return {false, fmt("expected two roots, got %zu", cps.size())};
  const double ts = t_star(sc);
  const double e1 = std::abs(cps[0].s - lo), e2 = std::abs(cps[1].s - hi);
  const bool ok = e1 < 1e-10 && e2 < 1e-10 && cps[0].branch == Branch::Plus && cps[1].branch == Branch::Minus &&
                  cps[0].s < ts && ts < cps[1].s && std::abs(ts - std::sqrt(0.75)) < 1e-15;
  return {ok, fmt("s+ = %.12f (err %.1e), s- = %.12f (err %.1e), t* = %.12f", cps[0].s, e1, cps[1].s, e2, ts)};
}

Outcome c06_sharp_constant(const Options&) {
  const double M = townes_mass(4.0);
  const double k = kgn_estimate(4.0);
  const double gap = rel(k, 2.0 / M);
  const double trial = kgn_gaussian_trial(4.0);
  return {gap < 1e-2 && trial < k,
          fmt("kgn(4) = %.6f, 2/M = %.6f (M = %.4f), rel gap %.1e; gaussian trial %.6f", k, 2.0 / M, M, gap, trial)};
}

Outcome c07_masscritical(const Options&) {
  const double a = 1.0;
  const double thr = masscritical_threshold(a, kgn_estimate(4.0));
  const auto above = masscritical_probe({1.0, a, 4.0, 1.2 * thr});
  const auto below = masscritical_probe({1.0, a, 4.0, 0.8 * thr});
  bool decreasing = true;
  for (std::size_t k = 2; k < above.F.size(); ++k) decreasing &= above.F[k] < above.F[k - 1];
  bool above_min = below.min_F.has_value();
  if (above_min)
    for (double f : below.F) above_min &= f >= *below.min_F - 1e-12;
  const bool ok = !above.bounded_below && decreasing && below.bounded_below && above_min;
  return {ok, fmt("threshold %.6f; 1.2x: t^2 coeff %.3e, F(2^%zu) = %.3e; 0.8x: t^2 coeff %.3e, min F = %.6f", thr,
                  above.quadratic, above.F.size() - 1, above.F.back(), below.quadratic,
                  below.min_F.value_or(NAN))};
}

Outcome c08_nonexistence(const Options&) {
  std::mt19937_64 rng(20241019);
  std::uniform_real_distribution<double> lg(-3.0, 3.0);
  auto pos = [&] { return std::pow(10.0, lg(rng)); };
  int violations = 0, roots = 0;
  for (int k = 0; k < 100; ++k) {
    const double a = k % 10 == 0 ? 0.0 : -pos();
    const Params q{-pos(), a, 2.0 + 4.0 * std::uniform_real_distribution<double>(1e-3, 1.0)(rng), pos()};
    const auto sc = FiberScalars::make(pos(), pos(), lg(rng), q);
    for (int e = -600; e <= 600; ++e)
      if (!(fiber_phi(sc, std::pow(10.0, e / 100.0)) > 0.0)) ++violations;
    roots += static_cast<int>(critical_points(sc).size());
  }
  return {violations == 0 && roots == 0, fmt("%d violations of phi > 0, %d roots over 100 tuples", violations, roots)};
}

Outcome c09_two_bump(const Options&) {
  const Grid g = make_grid(40.0, 512);
  const Params prm{-1.0, 20.0, 3.0, 1.0};
  TwoBumpProfile tb;
  tb.center = {-12.0, 0.0};
  tb.separation = {4.5, 0.0};
  tb.base_radius = 3.0;
  tb.tail_radius = 1.0;
  tb.base_fraction = 0.9;
  const auto res = two_bump_probe(prm, g, {1, 2, 3, 4}, tb);
  bool decreasing = true, approaching = true;
  double worst = 0.0;
  for (std::size_t k = 0; k < res.rows.size(); ++k) {
    worst = std::max(worst, std::abs(res.rows[k].Q - res.rows[k].Q_predicted));
    if (k > 0) {
      decreasing &= res.rows[k].F < res.rows[k - 1].F;
      approaching &= std::abs(res.rows[k].Q - res.Q_limit) < std::abs(res.rows[k - 1].Q - res.Q_limit);
    }
  }
  const double t1 = k1_threshold(prm, kgn_estimate(3.0));
  const auto& last = res.rows.back();
  const bool ok = prm.a > t1 && res.Q_limit < 0.0 && decreasing && approaching && worst < 1e-2;
  return {ok, fmt("a = %.1f > K1 threshold %.4f; F: %.4f %.4f %.4f %.4f; Q(u_4) = %.4f -> limit %.4f; "
                  "max |Q - prediction| %.1e",
                  prm.a, t1, res.rows[0].F, res.rows[1].F, res.rows[2].F, res.rows[3].F, last.Q, res.Q_limit, worst)};
}

struct PlusMinus {
  SolveReport plus, minus;
  double c = 0.0;
};

Params c10_plus_params() {
  const double cz = c0(6.0, 1.0, 1.0, kgn_estimate(6.0));
  return {1.0, 1.0, 6.0, 0.5 * cz};
}

const SolveReport& capped_plus() {
  static const SolveReport r =
      local_minimize_capped(c10_plus_params(), make_grid(32.0, 256), {}, {GaussianProfile{1.5}, 1.0});
  return r;
}

Outcome c10_two_solutions(const Options&) {
  std::ostringstream detail;
  // (a) gamma > 0, p = 6, c = c0 / 2. The minus point is much narrower than the
  // plus point, so it gets its own box.
  const Params prm = c10_plus_params();
  const auto& up = capped_plus();
  const auto um = lambda_branch_minimize(prm, make_grid(12.0, 256), {}, {GaussianProfile{1.0}, 1.0}, Branch::Minus);
  std::string wp, wm;
  const bool cp = certified(up, 1e-3, wp), cm = certified(um, 1e-3, wm);
  const bool signs = up.branch && up.branch->gpp > 0.0 && um.branch && um.branch->gpp < 0.0;
  const bool order = um.breakdown.F > up.breakdown.F && up.breakdown.F > 0.0;
  const bool part_a = cp && cm && signs && order;
  detail << "(a) " << (part_a ? "pass" : "fail") << " c=" << prm.c << " F(u-)=" << um.breakdown.F
         << " > F(u+)=" << up.breakdown.F << "; [" << wp << "] [" << wm << "]";

  // (b) gamma < 0, p = 3, a midway between the K1 and K2 thresholds, c = 1.
  const auto s3 = sharp_constants(3.0);
  const Params unit{-1.0, 1.0, 3.0, 1.0};
  const double a = 0.5 * (k1_threshold(unit, s3.kgn) + k2_threshold(unit, s3.kgn));
  const Params q{-1.0, a, 3.0, 1.0};
  const double iq = inf_Q_on_sphere(q, s3.kgn);
  int refused = 0, certified_count = 0, attempts = 0;
  const Grid g = make_grid(40.0, 256);
  for (Branch b : {Branch::Minus, Branch::Plus})
    for (double sigma : {0.3, 0.7, 1.5, 3.0}) {
      ++attempts;
      try {
        const auto r = lambda_maximize(q, g, {}, {GaussianProfile{sigma}, 1.0}, b);
        std::string w;
        certified_count += certified(r, 1e-3, w);
      } catch (const Error& e) {
        refused += e.kind() == ErrorKind::RegimeRefusal;
      }
    }
  const bool part_b = certified_count >= 2;
  detail << "; (b) " << (part_b ? "pass" : "fail") << " a=" << a << ": inf over S(c) of Q = " << iq
         << " > 0, so V and Lambda(c) are empty; " << refused << "/" << attempts << " starts refused, "
         << certified_count << " certified";
  Outcome out{part_a && part_b, detail.str()};
  // Documented cause: the ascent has nothing to start from because inf Q > 0.
  out.expected = part_a && !part_b && iq > 0.0 && refused == attempts;
  return out;
}

Outcome c11_regime_map(const Options& opt) {
  if (opt.sweep_cli.empty()) return {false, "no --sweep-cli given"};
  const double g = -1.0;
  std::ostringstream detail;
  bool ok = true;
  double worst = 0.0;
  for (double p : {2.5, 3.0, 3.5}) {
    const auto dir = std::filesystem::temp_directory_path() /
                     ("logsp_accept_sweep_" + std::to_string(::getpid()) + "_" + std::to_string(int(p * 10)));
    std::ostringstream cmd;
    cmd << '"' << opt.sweep_cli << "\" sweep --gamma " << g << " --p " << p
        << " --a-range 2 14 13 --c-range 0.05 4 80 --out \"" << dir.string() << "\" > /dev/null";
    if (std::system(cmd.str().c_str()) != 0) return {false, "sweep command failed: " + cmd.str()};
    std::ifstream in(dir / "sweep.csv");
    std::string line;
    std::getline(in, line);
    std::map<double, std::vector<std::pair<double, std::string>>> rows;  // a -> (c, tag)
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string a, c, tag;
      std::getline(ls, a, ',');
      std::getline(ls, c, ',');
      std::getline(ls, tag);
      rows[std::stod(a)].emplace_back(std::stod(c), tag);
    }
    std::filesystem::remove_all(dir);

    const auto sharp = sharp_constants(p);
    auto tag_at = [&](double a, double c) { return std::string(to_string(regime_classify({g, a, p, c}, sharp).tag)); };
    auto exists = [](const std::string& t) { return t == "MaxOnLambda" || t == "TwoCriticalPointsOnLambda"; };
    int bands = 0;
    for (const auto& [a, line_c] : rows) {
      // Transitions along c, each refined by bisection on the classifier.
      std::vector<std::pair<double, std::string>> edges;  // (c, kind)
      for (std::size_t k = 1; k < line_c.size(); ++k) {
        const auto& [c0v, t0] = line_c[k - 1];
        const auto& [c1v, t1] = line_c[k];
        if (t0 == t1) continue;
        double lo = c0v, hi = c1v;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
          const double mid = 0.5 * (lo + hi);
          (tag_at(a, mid) == t0 ? lo : hi) = mid;
        }
        edges.emplace_back(0.5 * (lo + hi), t0 + ">" + t1);
      }
      if (p == 3.0) {
        ok &= edges.empty();
        continue;
      }
      const double K1 = k1(p, sharp.kgn), K2 = k2(p, sharp.kgn);
      const double c1 = mass_threshold(K1, p, a, g), c2 = mass_threshold(K2, p, a, g);
      // p < 3: OpenUnknown below c2, band (c2, c1], empty above. p > 3: reversed.
      const std::vector<std::pair<double, std::string>> expect =
          p < 3.0 ? std::vector<std::pair<double, std::string>>{{c2, "OpenUnknown>TwoCriticalPointsOnLambda"},
                                                                {c1, "TwoCriticalPointsOnLambda>LambdaEmpty"}}
                  : std::vector<std::pair<double, std::string>>{{c1, "LambdaEmpty>TwoCriticalPointsOnLambda"},
                                                                {c2, "TwoCriticalPointsOnLambda>OpenUnknown"}};
      std::vector<std::pair<double, std::string>> in_range;
      for (const auto& e : expect)
        if (e.first > line_c.front().first && e.first < line_c.back().first) in_range.push_back(e);
      if (edges.size() != in_range.size()) {
        ok = false;
        continue;
      }
      for (std::size_t k = 0; k < edges.size(); ++k) {
        ok &= edges[k].second == in_range[k].second;
        worst = std::max(worst, rel(edges[k].first, in_range[k].first));
      }
      bands += in_range.size() == 2;
      // The band itself is where Lambda-existence tags live.
      ok &= exists(tag_at(a, 0.5 * (c1 + c2)));
    }
    if (p == 3.0) {
      // c-independent: rows split at the K thresholds in a.
      const double t1 = k1(3.0, sharp.kgn) * std::sqrt(std::abs(g)), t2 = k2(3.0, sharp.kgn) * std::sqrt(std::abs(g));
      for (const auto& [a, line_c] : rows) {
        const std::string want = a < t1 ? "LambdaEmpty" : (a < t2 ? "TwoCriticalPointsOnLambda" : "OpenUnknown");
        for (const auto& cell : line_c) ok &= cell.second == want;
      }
      detail << "p=3: c-independent, band " << t1 << " <= a < " << t2 << "; ";
    } else {
      detail << "p=" << p << ": " << bands << " rows with full band; ";
      ok &= bands > 0;
    }
  }
  ok &= worst < 1e-10;
  detail << "max rel edge error " << worst;
  return {ok, detail.str()};
}

Outcome c12_cross_solver(const Options&) {
  const Params prm = c10_plus_params();
  const auto& capped = capped_plus();
  const auto branch = lambda_branch_minimize(prm, make_grid(32.0, 256), {}, {GaussianProfile{1.5}, 1.0}, Branch::Plus);
  const double dF = std::abs(capped.breakdown.F - branch.breakdown.F);
  const double dist = aligned_distance(capped.field, branch.field);
  const bool ok = capped.converged && branch.converged && dF < 1e-3 && dist < 1e-2;
  return {ok, fmt("F capped %.8f, branch %.8f, |dF| %.1e; aligned relative L2 distance %.1e", capped.breakdown.F,
                  branch.breakdown.F, dF, dist)};
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)(const Options&);
};

const Criterion kCriteria[] = {
    {1, "scaling_laws", c01_scaling_laws},
    {2, "gaussian_closed_forms", c02_gaussian_closed_forms},
    {3, "gradient_check", c03_gradient_check},
    {4, "pohozaev_certification", c04_pohozaev},
    {5, "fiber_roots_closed_form", c05_fiber_roots},
    {6, "sharp_constant", c06_sharp_constant},
    {7, "masscritical_dichotomy", c07_masscritical},
    {8, "nonexistence", c08_nonexistence},
    {9, "two_bump_divergence", c09_two_bump},
    {10, "two_solution_regimes", c10_two_solutions},
    {11, "regime_map", c11_regime_map},
    {12, "cross_solver_agreement", c12_cross_solver},
};

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--strict") opt.strict = true;
    else if (a == "--sweep-cli" && i + 1 < argc) opt.sweep_cli = argv[++i];
    else opt.only.insert(std::atoi(a.c_str()));
  }

  int hard_failures = 0;
  for (const auto& c : kCriteria) {
    if (!opt.only.empty() && !opt.only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(opt);
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool tolerated = !o.pass && o.expected && kExpectedFailures.count(c.id) && !opt.strict;
    std::printf("%s %02d %-24s %7.2fs  %s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str(),
                tolerated ? "  [expected failure]" : "");
    std::fflush(stdout);
    if (!o.pass && !tolerated) ++hard_failures;
  }
  return hard_failures == 0 ? 0 : 1;
}
