#include "logsp/solvers.hpp"

#include <cmath>
#include <sstream>

#include "logsp/error.hpp"
#include "logsp/kernels.hpp"
#include "logsp/radial.hpp"

namespace logsp {

namespace k = kernels::omp;

namespace {

constexpr double kDomainLeakLimit = 1e-8;
constexpr double kStepFloor = 1e-14;
constexpr double kMaterializeDrift = 0.1;

enum class Mode { Energy, Capped, Fiber };

struct Problem {
  Mode mode = Mode::Energy;
  bool ascent = false;
  Branch branch = Branch::Plus;
  double cap = 0.0;    // k0 for Capped, V guard floor for γ < 0 fiber ascent
  bool v_guard = false;
};

// Everything known about one iterate.
struct Point {
  Field u;
  EnergyState st;
  double obj = 0.0;  // F, or I = F(u^s) for fiber flows
  double s = 1.0;
  double gpp = 0.0;
  double Q = 0.0;
  double mu = 0.0;
  Field r;           // tangent residual of the objective gradient
  double res = 0.0;
  double v_margin = 0.0;
  bool valid = true;
  std::string why;
};

std::string describe(const RegimeLabel& label) {
  std::ostringstream os;
  os << to_string(label.tag) << " [" << label.certificate.rule << "]";
  for (const auto& q : label.certificate.chain)
    os << "; " << q.name << ": " << q.lhs << ' ' << q.relation << ' ' << q.rhs << (q.holds ? "" : " (fails)");
  return os.str();
}

[[noreturn]] void refuse(const std::string& solver, const RegimeLabel& label, const std::string& why) {
  fail(ErrorKind::RegimeRefusal, solver + " refused: " + why + "; regime " + describe(label));
}

double l2(std::span<const double> x, double h2) { return std::sqrt(h2 * k::dot(x, x)); }

void check_domain(const Field& u, const char* where) {
  const double leak = boundary_mass_fraction(u);
  if (leak > kDomainLeakLimit) {
    std::ostringstream msg;
    msg << where << ": boundary mass fraction " << leak << " exceeds " << kDomainLeakLimit << "; enlarge L";
    fail(ErrorKind::DomainTooSmall, msg.str());
  }
}

Point evaluate(Field u, const Params& prm, const Problem& pb, const Workspace& ws) {
  Point pt;
  pt.st = energy_state(u, prm, ws);
  pt.u = std::move(u);
  const Grid& g = pt.u.grid();
  const double h2 = g.cell_area();
  const double m = mass(pt.u);
  pt.Q = pohozaev_Q(pt.st.A, pt.st.C, prm);

  double lap_weight = 1.0;
  Field grad = pt.st.grad;
  if (pb.mode == Mode::Fiber) {
    const auto sc = FiberScalars::make(pt.st.A, pt.st.C, pt.st.V, prm);
    const auto roots = critical_points(sc);
    const BranchPoint* bp = nullptr;
    for (const auto& r : roots)
      if (r.branch == pb.branch) bp = &r;
    if (!bp) {
      pt.valid = false;
      pt.why = std::string("fiber lost its ") + to_string(pb.branch) + " critical point";
      return pt;
    }
    if (pb.v_guard) {
      pt.v_margin = in_V(sc).margin;
      if (pt.v_margin < pb.cap) {
        pt.valid = false;
        pt.why = "iterate reached the guard margin of the boundary of V";
        return pt;
      }
    }
    pt.s = bp->s;
    pt.gpp = bp->gpp;
    pt.obj = bp->g;
    lap_weight = pt.s * pt.s;
    std::vector<double> gi(pt.u.size());
    k::gradient_combine(pt.u.values(), pt.st.neg_lap.values(), pt.st.w.values(), lap_weight, prm.gamma,
                        prm.a * std::pow(pt.s, prm.p - 2.0), prm.p, gi);
    grad = Field(g, std::move(gi));
  } else {
    pt.obj = pt.st.F;
    if (pb.mode == Mode::Capped && pt.st.A > pb.cap) {
      pt.valid = false;
      pt.why = "kinetic cap A <= k0 violated";
    }
  }

  pt.mu = -inner(grad, pt.u) / m;
  pt.r = axpy(pt.mu, pt.u, grad);
  const double scale = 1.0 + lap_weight * l2(pt.st.neg_lap.values(), h2) + std::abs(pt.mu) * std::sqrt(m);
  pt.res = l2(pt.r.values(), h2) / scale;
  return pt;
}

// x·∇u by fourth-order central differences; the field is negligible at the edges.
Field dilation_generator(const Field& u) {
  const Grid& g = u.grid();
  const long n = static_cast<long>(g.n);
  auto at = [&](long i, long j) { return u(static_cast<std::size_t>((i + n) % n), static_cast<std::size_t>((j + n) % n)); };
  const double inv = 1.0 / (12.0 * g.h);
  std::vector<double> out(g.size());
#pragma omp parallel for schedule(static)
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < n; ++i) {
      const double ux = (at(i - 2, j) - 8.0 * at(i - 1, j) + 8.0 * at(i + 1, j) - at(i + 2, j)) * inv;
      const double uy = (at(i, j - 2) - 8.0 * at(i, j - 1) + 8.0 * at(i, j + 1) - at(i, j + 2)) * inv;
      out[j * n + i] = g.coord(static_cast<std::size_t>(i)) * ux + g.coord(static_cast<std::size_t>(j)) * uy;
    }
  return Field(g, std::move(out));
}

// I is constant along dilations, so sliding along u + x·∇u costs nothing but
// moves s. Removing that component obliquely keeps φ_u(s) = 0 to first order
// and leaves the slope ⟨r, d⟩ unchanged up to discretization.
Field hold_fiber_point(const Field& d, const Point& pt, const Params& prm) {
  const double s = pt.s;
  std::vector<double> gphi(pt.u.size());
  kernels::omp::gradient_combine(pt.u.values(), pt.st.neg_lap.values(), pt.st.w.values(), 2.0 * s * s, 0.0,
                                 prm.a * (prm.p - 2.0) * std::pow(s, prm.p - 2.0), prm.p, gphi);
  const Field gq(pt.u.grid(), std::move(gphi));
  Field du = dilation_generator(pt.u);
  du = axpy(-inner(du, pt.u) / mass(pt.u), pt.u, du);
  const double denom = inner(gq, du);
  if (std::abs(denom) < 1e-12 * (1.0 + pt.st.A)) return d;
  return axpy(-inner(gq, d) / denom, du, d);
}

struct FlowResult {
  Point final;
  int iters = 0;
  int materializations = 0;
  bool converged = false;
  std::string status;
  std::vector<TraceRow> trace;
};

FlowResult run_flow(Field u0, const Params& prm, const Problem& pb, const SolverConfig& cfg, const Workspace& ws) {
  FlowResult out;
  Point cur = evaluate(normalize(u0, prm.c), prm, pb, ws);
  if (!cur.valid) fail(ErrorKind::RegimeRefusal, "initial iterate rejected: " + cur.why);
  double tau = cfg.step0 > 0.0 ? cfg.step0 : 0.1 / std::max(1.0, cur.st.A);
  const double sign = pb.ascent ? 1.0 : -1.0;

  auto record = [&](int it, const Point& p) {
    if (cfg.trace) out.trace.push_back(TraceRow{it, p.st.F, p.Q, p.res, p.st.A, p.st.C, p.st.V});
  };

  for (int it = 0;; ++it) {
    record(it, cur);
    const double q_tol = cfg.tol_Q * (cur.st.A + std::abs(prm.gamma) * prm.c * prm.c / 4.0);
    if (cur.res < cfg.tol_grad) {
      if (std::abs(cur.Q) < q_tol) {
        out.converged = true;
        out.status = "converged";
        out.iters = it;
        break;
      }
      if (pb.mode == Mode::Fiber && std::abs(cur.s - 1.0) > 1e-12) {
        // Stationary for I but not yet on Λ: move the iterate onto its fiber point.
        Point next = evaluate(normalize(dilate(cur.u, cur.s), prm.c), prm, pb, ws);
        ++out.materializations;
        if (next.valid) {
          cur = std::move(next);
          continue;
        }
      }
    }
    if (it >= cfg.max_iter) {
      out.status = "iteration budget exhausted";
      out.iters = it;
      break;
    }
    if (it % 25 == 0) check_domain(cur.u, "solver iterate");

    if (pb.mode == Mode::Fiber && std::abs(cur.s - 1.0) > kMaterializeDrift) {
      Point next = evaluate(normalize(dilate(cur.u, cur.s), prm.c), prm, pb, ws);
      ++out.materializations;
      if (next.valid) {
        cur = std::move(next);
        continue;
      }
    }

    // Preconditioned tangent direction (σ - s²Δ)^{-1} r.
    const double s2 = pb.mode == Mode::Fiber ? cur.s * cur.s : 1.0;
    const double sigma = 1.0 + std::abs(cur.mu);
    Field d(ws.grid(), ws.resolvent(cur.r.values(), sigma / s2));
    d = (1.0 / s2) * d;
    d = axpy(-inner(d, cur.u) / mass(cur.u), cur.u, d);
    double slope = inner(cur.r, d);
    if (pb.mode == Mode::Fiber) {
      // Keep the held direction unless discretization has eaten its slope.
      Field held = hold_fiber_point(d, cur, prm);
      const double held_slope = inner(cur.r, held);
      if (held_slope > 0.5 * slope) {
        d = std::move(held);
        slope = held_slope;
      }
    }
    if (!(slope > 0.0)) {
      out.status = "preconditioned direction lost descent";
      out.iters = it;
      break;
    }

    bool accepted = false;
    std::string last_reject;
    while (tau > kStepFloor) {
      Point trial = evaluate(normalize(axpy(sign * tau, d, cur.u), prm.c), prm, pb, ws);
      const double gain = pb.ascent ? trial.obj - cur.obj : cur.obj - trial.obj;
      if (trial.valid && gain >= cfg.armijo * tau * slope) {
        cur = std::move(trial);
        tau *= 1.5;
        accepted = true;
        break;
      }
      last_reject = trial.valid ? "sufficient decrease" : trial.why;
      tau *= cfg.backtrack;
    }
    if (!accepted) {
      out.status = "step size collapsed (" + last_reject + ")";
      out.iters = it;
      break;
    }
  }
  check_domain(cur.u, "converged field");
  out.final = std::move(cur);
  return out;
}

SolveReport certify(const std::string& solver, const Params& prm, const Grid& grid, const SolverConfig& cfg,
                    FlowResult&& flow, const RegimeLabel& regime, const SharpConstants& sharp, const Workspace& ws) {
  SolveReport rep;
  rep.solver = solver;
  rep.params = prm;
  rep.grid = grid;
  rep.config = cfg;
  rep.field = std::move(flow.final.u);
  rep.breakdown = energy(rep.field, prm, ws);
  rep.lambda = lagrange_multiplier(rep.field, prm, ws);
  rep.Q = pohozaev_Q(rep.breakdown.A, rep.breakdown.C, prm);
  rep.q_residual = std::abs(rep.Q);
  rep.q_scale = rep.breakdown.A + std::abs(prm.gamma) * prm.c * prm.c / 4.0;
  rep.pohozaev_residual = pohozaev_residual(rep.field, prm, rep.lambda, ws);
  rep.el_residual = el_residual(rep.field, prm, rep.lambda, ws);
  rep.boundary_fraction = boundary_mass_fraction(rep.field);
  rep.mass_error = std::abs(mass(rep.field) - prm.c) / prm.c;
  rep.iters = flow.iters;
  rep.materializations = flow.materializations;
  rep.converged = flow.converged;
  rep.status = flow.status;
  rep.regime = regime;
  rep.sharp = sharp;
  rep.trace = std::move(flow.trace);
  return rep;
}

void attach_branch(SolveReport& rep, Branch branch) {
  const auto sc = FiberScalars::make(rep.breakdown.A, rep.breakdown.C, rep.breakdown.V, rep.params);
  BranchInfo info;
  info.branch = branch;
  std::vector<std::string> diag;
  for (const auto& bp : critical_points(sc, &diag))
    if (bp.branch == branch) {
      info.s = bp.s;
      info.gpp = bp.gpp;
    }
  if (rep.params.a > 0.0 && rep.params.p != 4.0) info.t_star = t_star(sc);
  if (rep.params.gamma < 0.0 && rep.params.a > 0.0 && rep.params.p < 4.0) info.v_margin = in_V(sc).margin;
  if (info.gpp == 0.0) {
    rep.converged = false;
    rep.status = std::string("final field has no ") + to_string(branch) + " fiber critical point";
  }
  rep.branch = info;
}

Field initial_field(const ProfileSpec& init, const Params& prm, const Grid& grid) {
  ProfileSpec spec = init;
  spec.c = prm.c;
  return discretize(spec, grid);
}

}  // namespace

void SolverConfig::validate() const {
  require(tol_grad > 0.0 && tol_Q > 0.0, "solver tolerances must be positive");
  require(max_iter > 0, "max_iter must be positive");
  require(backtrack > 0.0 && backtrack < 1.0, "backtrack factor must lie in (0, 1)");
  require(armijo > 0.0 && armijo < 1.0, "armijo constant must lie in (0, 1)");
  require(guard_margin >= 0.0, "guard margin must be nonnegative");
  require(std::isfinite(step0), "step0 must be finite");
}

SolveReport global_minimize(const Params& params, const Grid& grid, const SolverConfig& config,
                            const ProfileSpec& init) {
  params.validate();
  config.validate();
  const auto sharp = sharp_constants(params.p);
  const auto regime = regime_classify(params, sharp);
  if (regime.tag != RegimeTag::GlobalMin && regime.tag != RegimeTag::GlobalMinMassCritical)
    refuse("global_minimize", regime, "F is not known to attain its infimum on S(c)");

  Workspace ws(grid);
  auto flow = run_flow(initial_field(init, params, grid), params, Problem{}, config, ws);
  auto rep = certify("global_minimize", params, grid, config, std::move(flow), regime, sharp, ws);
  if (params.a <= 0.0) {
    const double A = rep.breakdown.A;
    rep.lower_bound = 0.5 * A - 0.25 * params.gamma * sharp.kv2 * std::sqrt(A) * std::pow(params.c, 1.5);
  }
  return rep;
}

SolveReport local_minimize_capped(const Params& params, const Grid& grid, const SolverConfig& config,
                                  const ProfileSpec& init) {
  params.validate();
  config.validate();
  const auto sharp = sharp_constants(params.p);
  const auto regime = regime_classify(params, sharp);
  if (regime.tag != RegimeTag::LocalMinPlusMountainPass)
    refuse("local_minimize_capped", regime, "needs gamma > 0, a > 0, p > 4 and c < c0");

  Workspace ws(grid);
  const double cap = k0(params);
  Field u = initial_field(init, params, grid);
  const double A0 = kinetic(u, ws);
  if (A0 > 0.5 * cap) u = normalize(dilate(u, std::sqrt(0.5 * cap / A0)), params.c);

  Problem pb;
  pb.mode = Mode::Capped;
  pb.cap = cap;
  auto flow = run_flow(std::move(u), params, pb, config, ws);
  const bool pinned = flow.final.st.A > cap * (1.0 - 1e-3);
  auto rep = certify("local_minimize_capped", params, grid, config, std::move(flow), regime, sharp, ws);
  if (pinned) {
    std::ostringstream msg;
    msg << "capped descent settled on the cap: A = " << rep.breakdown.A << ", k0 = " << cap
        << "; interior minimizer expected for c < c0 (check resolution or regime)";
    fail(ErrorKind::CapBoundary, msg.str());
  }
  attach_branch(rep, Branch::Plus);
  return rep;
}

SolveReport lambda_branch_minimize(const Params& params, const Grid& grid, const SolverConfig& config,
                                   const ProfileSpec& init, Branch branch) {
  params.validate();
  config.validate();
  const auto sharp = sharp_constants(params.p);
  const auto regime = regime_classify(params, sharp);
  const bool open_ok = config.explore_open && regime.tag == RegimeTag::OpenUnknown && params.gamma > 0.0 &&
                       params.a > 0.0 && params.p > 4.0;
  if (regime.tag != RegimeTag::LocalMinPlusMountainPass && !open_ok)
    refuse("lambda_branch_minimize", regime, "needs gamma > 0, a > 0, p > 4 and c < c0");

  Workspace ws(grid);
  Field u = initial_field(init, params, grid);
  u = normalize(project_to_lambda(u, params, branch, ws), params.c);

  Problem pb;
  pb.mode = Mode::Fiber;
  pb.branch = branch;
  auto flow = run_flow(std::move(u), params, pb, config, ws);
  auto rep = certify("lambda_branch_minimize", params, grid, config, std::move(flow), regime, sharp, ws);
  attach_branch(rep, branch);
  return rep;
}

SolveReport lambda_maximize(const Params& params, const Grid& grid, const SolverConfig& config,
                            const ProfileSpec& init, Branch branch) {
  params.validate();
  config.validate();
  const auto sharp = sharp_constants(params.p);
  const auto regime = regime_classify(params, sharp);
  if (regime.tag == RegimeTag::LambdaEmpty) refuse("lambda_maximize", regime, "Lambda(c) is empty");
  if (regime.tag == RegimeTag::MaxOnLambda) {
    if (branch != Branch::Minus) refuse("lambda_maximize", regime, "only the maximizer on Lambda- is available at a = K1 threshold");
  } else if (regime.tag != RegimeTag::TwoCriticalPointsOnLambda) {
    const bool open_ok = config.explore_open && regime.tag == RegimeTag::OpenUnknown && params.gamma < 0.0 &&
                         params.a > 0.0 && params.p < 4.0;
    if (!open_ok)
      refuse("lambda_maximize", regime, "needs gamma < 0, a > 0, p < 4 and K1 threshold <= a < K2 threshold");
  }

  Workspace ws(grid);
  Field u = initial_field(init, params, grid);
  const auto sc = scalars(u, params, ws);
  const auto vm = in_V(sc);
  const double floor = config.guard_margin * k0(params);
  if (!vm.inside || vm.margin < floor) {
    std::ostringstream msg;
    msg << "init is not in V: (t*)^2 A - k0 = " << vm.margin << " (guard floor " << floor
        << "), Q(u^t*) = " << vm.q_at_t_star;
    refuse("lambda_maximize", regime, msg.str());
  }
  u = normalize(project_to_lambda(u, params, branch, ws), params.c);

  Problem pb;
  pb.mode = Mode::Fiber;
  pb.ascent = true;
  pb.branch = branch;
  pb.v_guard = true;
  pb.cap = floor;
  auto flow = run_flow(std::move(u), params, pb, config, ws);
  auto rep = certify("lambda_maximize", params, grid, config, std::move(flow), regime, sharp, ws);
  attach_branch(rep, branch);
  return rep;
}

TwoBumpResult two_bump_probe(const Params& params, const Grid& grid, const std::vector<int>& n_list,
                             const TwoBumpProfile& shape) {
  params.validate();
  require(!n_list.empty(), "two_bump_probe needs at least one n");
  const auto sharp = sharp_constants(params.p);
  if (!(params.gamma < 0.0 && params.a > 0.0 && params.p < 4.0))
    fail(ErrorKind::RegimeRefusal, "two_bump_probe needs gamma < 0, a > 0, p < 4");
  const double t1 = k1_threshold(params, sharp.kgn);
  if (!(params.a > t1)) {
    std::ostringstream msg;
    msg << "two_bump_probe needs a above the K1 threshold " << t1;
    fail(ErrorKind::RegimeRefusal, msg.str());
  }

  Workspace ws(grid);
  const double pc = params.a * (params.p - 2.0) / params.p;

  // Lobe scalars at n = 1, split by the base support.
  TwoBumpProfile one = shape;
  one.scale = 1.0;
  const Field u1 = discretize(ProfileSpec{one, params.c}, grid);
  std::vector<double> base(u1.size(), 0.0), tail(u1.size(), 0.0);
  for (std::size_t j = 0; j < grid.n; ++j)
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double r = std::hypot(grid.coord(i) - shape.center[0], grid.coord(j) - shape.center[1]);
      (r < shape.base_radius ? base : tail)[j * grid.n + i] = u1(i, j);
    }
  const Field fb(grid, std::move(base)), ft(grid, std::move(tail));
  const double Ab = kinetic(fb, ws), Cb = pnorm(fb, params.p);
  const double At = kinetic(ft, ws), Ct = pnorm(ft, params.p);

  TwoBumpResult out;
  out.Q_limit = Ab - pc * Cb - 0.25 * params.gamma * params.c * params.c;
  for (int n : n_list) {
    require(n >= 1, "two_bump_probe needs n >= 1");
    TwoBumpProfile sh = shape;
    sh.scale = n;
    const Field u = discretize(ProfileSpec{sh, params.c}, grid);
    const auto e = energy(u, params, ws);
    TwoBumpRow row;
    row.n = n;
    row.Q = pohozaev_Q(e.A, e.C, params);
    row.F = e.F;
    row.Q_predicted = out.Q_limit + At / (n * n) - pc * Ct / std::pow(n, params.p - 2.0);
    out.rows.push_back(row);
  }
  return out;
}

MassCriticalResult masscritical_probe(const Params& params, int doublings) {
  params.validate();
  if (!(std::abs(params.p - 4.0) < 1e-12 && params.gamma > 0.0 && params.a > 0.0))
    fail(ErrorKind::RegimeRefusal, "masscritical_probe needs p = 4, gamma > 0, a > 0");
  require(doublings >= 1, "masscritical_probe needs at least one doubling");

  const auto gs = radial::ground_state(4.0);
  std::vector<double> rho(gs.profile.size());
  for (std::size_t k = 0; k < rho.size(); ++k) rho[k] = gs.profile[k] * gs.profile[k];
  const double VT = radial::log_energy(rho, gs.dr);

  // u = √(c/M) φ has A = (c/M)A_φ, C = (c/M)²C_φ, V = (c/M)²V_φ.
  const double c = params.c, q = c / gs.mass;
  const double A = q * gs.kinetic, C = q * q * gs.pnorm, V = q * q * VT;

  MassCriticalResult out;
  out.threshold = masscritical_threshold(params.a, gs.gn_quotient());
  out.quadratic = 0.5 * A - params.a / 4.0 * C;
  auto F = [&](double t) { return t * t * out.quadratic + 0.25 * params.gamma * (V - c * c * std::log(t)); };
  for (int k = 0; k <= doublings; ++k) {
    const double t = std::ldexp(1.0, k);
    out.t.push_back(t);
    out.F.push_back(F(t));
  }
  out.bounded_below = out.quadratic > 0.0;
  if (out.bounded_below) {
    // d/dt [t² q - γc² log t / 4] = 0 at t² = γc² / (8q).
    out.min_F = F(std::sqrt(params.gamma * c * c / (8.0 * out.quadratic)));
  }
  return out;
}

}  // namespace logsp
