#include "cli_commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>

#include "logsp/constants.hpp"
#include "logsp/error.hpp"
#include "logsp/report_json.hpp"

namespace logsp::cli {

using nlohmann::json;

namespace {

std::array<double, 2> pair_of(const json& j, const char* key, std::array<double, 2> fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  require(v.is_array() && v.size() == 2, std::string(key) + " must be a two-element array");
  return {v[0].get<double>(), v[1].get<double>()};
}

Range range_from_json(const json& j, Range fallback) {
  if (j.is_null()) return fallback;
  require(j.is_array() && j.size() == 3, "ranges are [lo, hi, count]");
  return Range{j[0].get<double>(), j[1].get<double>(), j[2].get<int>()};
}

double linspace(const Range& r, int i) {
  return r.count == 1 ? r.lo : r.lo + (r.hi - r.lo) * static_cast<double>(i) / (r.count - 1);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) fail(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  return os;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create output directory " + dir.string() + ": " + ec.message());
}

json thresholds(const Params& p, double kgn) {
  json t = json::object();
  if (p.p != 4.0 && p.gamma != 0.0) t["k0"] = k0(p);
  if (p.p > 4.0 && p.a > 0.0 && p.gamma > 0.0) t["c0"] = c0(p.p, p.a, p.gamma, kgn);
  if (p.p > 2.0 && p.p < 4.0) {
    t["K1"] = k1(p.p, kgn);
    t["K2"] = k2(p.p, kgn);
    if (p.gamma != 0.0) {
      t["K1_threshold"] = k1_threshold(p, kgn);
      t["K2_threshold"] = k2_threshold(p, kgn);
      if (p.a > 0.0 && p.p != 3.0) {
        t["c1"] = mass_threshold(k1(p.p, kgn), p.p, p.a, p.gamma);
        t["c2"] = mass_threshold(k2(p.p, kgn), p.p, p.a, p.gamma);
      }
      if (p.gamma < 0.0 && p.a > 0.0) t["inf_Q_on_sphere"] = inf_Q_on_sphere(p, kgn);
    }
  }
  if (std::abs(p.p - 4.0) < 1e-12 && p.a > 0.0) t["masscritical"] = masscritical_threshold(p.a, kgn);
  return t;
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

ProfileSpec profile_from_json(const json& j, double c) {
  ProfileSpec spec;
  spec.c = c;
  const std::string kind = j.value("kind", "gaussian");
  if (kind == "gaussian") {
    spec.kind = GaussianProfile{j.value("sigma", 1.0), pair_of(j, "center", {0.0, 0.0})};
  } else if (kind == "ring") {
    spec.kind = RingProfile{j.value("r0", 1.0), j.value("sigma", 0.5)};
  } else if (kind == "two_bump") {
    TwoBumpProfile tb;
    tb.separation = pair_of(j, "separation", tb.separation);
    tb.scale = j.value("scale", tb.scale);
    tb.base_radius = j.value("base_radius", tb.base_radius);
    tb.tail_radius = j.value("tail_radius", tb.tail_radius);
    tb.base_fraction = j.value("base_fraction", tb.base_fraction);
    tb.center = pair_of(j, "center", tb.center);
    spec.kind = tb;
  } else if (kind == "random") {
    spec.kind = RandomSmoothProfile{j.value("seed", std::uint64_t{0}), j.value("cutoff", 2.0), j.value("envelope", 2.0)};
  } else {
    fail(ErrorKind::InvalidArgument, "unknown init kind '" + kind + "'");
  }
  return spec;
}

json profile_to_json(const ProfileSpec& spec) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GaussianProfile>)
          return {{"kind", "gaussian"}, {"sigma", p.sigma}, {"center", p.center}};
        else if constexpr (std::is_same_v<T, RingProfile>)
          return {{"kind", "ring"}, {"r0", p.r0}, {"sigma", p.sigma}};
        else if constexpr (std::is_same_v<T, TwoBumpProfile>)
          return {{"kind", "two_bump"},         {"separation", p.separation},   {"scale", p.scale},
                  {"base_radius", p.base_radius}, {"tail_radius", p.tail_radius}, {"base_fraction", p.base_fraction},
                  {"center", p.center}};
        else
          return {{"kind", "random"}, {"seed", p.seed}, {"cutoff", p.cutoff}, {"envelope", p.envelope}};
      },
      spec.kind);
}

RunConfig load_config(const std::optional<std::filesystem::path>& path) {
  RunConfig cfg;
  json j = json::object();
  if (path) {
    std::ifstream is(*path);
    if (!is) fail(ErrorKind::InvalidArgument, "cannot read config " + path->string());
    try {
      j = json::parse(is);
    } catch (const json::exception& e) {
      fail(ErrorKind::InvalidArgument, "config " + path->string() + " is not valid JSON: " + e.what());
    }
    require(j.is_object(), "config root must be a JSON object");
  }
  try {
    const json prm = j.value("params", json::object());
    cfg.params = Params{prm.value("gamma", 1.0), prm.value("a", 0.0), prm.value("p", 3.0), prm.value("c", 1.0)};
    const json grid = j.value("grid", json::object());
    cfg.grid_L = grid.value("L", cfg.grid_L);
    cfg.grid_n = grid.value("n", cfg.grid_n);
    const json s = j.value("solver", json::object());
    auto& sc = cfg.solver;
    sc.tol_grad = s.value("tol_grad", sc.tol_grad);
    sc.tol_Q = s.value("tol_Q", sc.tol_Q);
    sc.max_iter = s.value("max_iter", sc.max_iter);
    sc.step0 = s.value("step0", sc.step0);
    sc.backtrack = s.value("backtrack", sc.backtrack);
    sc.armijo = s.value("armijo", sc.armijo);
    sc.guard_margin = s.value("guard_margin", sc.guard_margin);
    sc.seed = s.value("seed", sc.seed);
    sc.trace = s.value("trace", sc.trace);
    sc.explore_open = s.value("explore_open", sc.explore_open);
    cfg.method = s.value("method", cfg.method);
    cfg.init = profile_from_json(j.value("init", json::object()), cfg.params.c);
    if (j.contains("branch")) cfg.branch = branch_from_string(j.at("branch").get<std::string>());
    const json f = j.value("fiber", json::object());
    if (f.contains("A")) cfg.A = f.at("A").get<double>();
    if (f.contains("C")) cfg.C = f.at("C").get<double>();
    if (f.contains("V")) cfg.V = f.at("V").get<double>();
    if (f.contains("t_min")) cfg.t_min = f.at("t_min").get<double>();
    if (f.contains("t_max")) cfg.t_max = f.at("t_max").get<double>();
    cfg.fiber_points = f.value("points", cfg.fiber_points);
    const json sw = j.value("sweep", json::object());
    cfg.a_range = range_from_json(sw.value("a", json()), cfg.a_range);
    cfg.c_range = range_from_json(sw.value("c", json()), cfg.c_range);
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("config has a field of the wrong type: ") + e.what());
  }
  cfg.source = j;
  return cfg;
}

void validate(const RunConfig& cfg) {
  cfg.params.validate();
  make_grid(cfg.grid_L, cfg.grid_n);
  cfg.solver.validate();
  require(cfg.method == "auto" || cfg.method == "global" || cfg.method == "capped" || cfg.method == "branch" ||
              cfg.method == "maximize",
          "solver method must be auto, global, capped, branch or maximize");
  require(cfg.fiber_points >= 2, "fiber needs at least two points");
  if (cfg.t_min) require(*cfg.t_min > 0.0, "t_min must be positive");
  if (cfg.t_min && cfg.t_max) require(*cfg.t_max > *cfg.t_min, "t_max must exceed t_min");
  for (const Range* r : {&cfg.a_range, &cfg.c_range}) {
    require(r->count >= 1 && std::isfinite(r->lo) && std::isfinite(r->hi) && r->hi >= r->lo,
            "sweep ranges need lo <= hi and count >= 1");
  }
  require(cfg.c_range.lo > 0.0, "sweep masses must be positive");
}

json effective_config(const RunConfig& cfg) {
  json j = {{"params", to_json(cfg.params)},
            {"grid", {{"L", cfg.grid_L}, {"n", cfg.grid_n}}},
            {"solver", to_json(cfg.solver)},
            {"init", profile_to_json(cfg.init)},
            {"method", cfg.method}};
  j["solver"]["method"] = cfg.method;
  if (cfg.branch) j["branch"] = to_string(*cfg.branch);
  return j;
}

int cmd_classify(const RunConfig& cfg) {
  const auto& p = cfg.params;
  SharpConstants sharp;
  sharp.p = p.p;
  sharp.kgn = kgn_estimate(p.p);
  const auto label = regime_classify(p, sharp);
  print({{"params", to_json(p)},
         {"kgn", sharp.kgn},
         {"regime", to_json(label)},
         {"thresholds", thresholds(p, sharp.kgn)}});
  return kOk;
}

int cmd_solve(const RunConfig& cfg) {
  const auto& p = cfg.params;
  const Grid grid = make_grid(cfg.grid_L, cfg.grid_n);
  const auto sharp = sharp_constants(p.p);
  const auto label = regime_classify(p, sharp);

  std::string method = cfg.method;
  if (method == "auto") {
    switch (label.tag) {
      case RegimeTag::GlobalMin:
      case RegimeTag::GlobalMinMassCritical:
        method = "global";
        break;
      case RegimeTag::LocalMinPlusMountainPass:
        method = cfg.branch.value_or(Branch::Plus) == Branch::Plus ? "capped" : "branch";
        break;
      case RegimeTag::MaxOnLambda:
      case RegimeTag::TwoCriticalPointsOnLambda:
        method = "maximize";
        break;
      case RegimeTag::OpenUnknown:
        if (cfg.solver.explore_open && p.gamma < 0.0 && p.a > 0.0 && p.p < 4.0) {
          method = "maximize";
          break;
        }
        if (cfg.solver.explore_open && p.gamma > 0.0 && p.a > 0.0 && p.p > 4.0) {
          method = "branch";
          break;
        }
        [[fallthrough]];
      default:
        std::cerr << "solve refused: regime " << to_string(label.tag) << " [" << label.certificate.rule
                  << "] admits no solver\n";
        return kRegimeRefusal;
    }
  }

  SolveReport rep;
  if (method == "global") rep = global_minimize(p, grid, cfg.solver, cfg.init);
  else if (method == "capped") rep = local_minimize_capped(p, grid, cfg.solver, cfg.init);
  else if (method == "branch") rep = lambda_branch_minimize(p, grid, cfg.solver, cfg.init, cfg.branch.value_or(Branch::Plus));
  else rep = lambda_maximize(p, grid, cfg.solver, cfg.init, cfg.branch.value_or(Branch::Minus));

  ensure_dir(cfg.out);
  write_lpf(cfg.out / "solution.lpf", rep.field);
  json j = to_json(rep);
  j["config"] = effective_config(cfg);
  open_out(cfg.out / "report.json") << j.dump(2) << '\n';
  if (cfg.solver.trace) write_trace_csv(cfg.out / "trace.csv", rep.trace);

  print({{"solver", rep.solver},
         {"converged", rep.converged},
         {"status", rep.status},
         {"F", rep.breakdown.F},
         {"q_residual", rep.q_residual},
         {"pohozaev_residual", rep.pohozaev_residual},
         {"el_residual", rep.el_residual},
         {"iters", rep.iters},
         {"out", cfg.out.string()}});
  if (!rep.converged) {
    std::cerr << "solve did not converge: " << rep.status << '\n';
    return kNonConvergence;
  }
  return kOk;
}

int cmd_fiber(const RunConfig& cfg) {
  const auto& p = cfg.params;
  FiberScalars sc;
  std::string source;
  if (cfg.A || cfg.C || cfg.V) {
    require(cfg.A && cfg.C, "fiber scalars need both A and C");
    sc = FiberScalars::make(*cfg.A, *cfg.C, cfg.V.value_or(0.0), p);
    source = "scalars";
  } else {
    const Grid grid = make_grid(cfg.grid_L, cfg.grid_n);
    Workspace ws(grid);
    sc = scalars(discretize(cfg.init, grid), p, ws);
    source = "profile";
  }

  const auto roots = critical_points(sc);
  double lo = 1e-2, hi = 1e2;
  if (!roots.empty()) {
    lo = roots.front().s / 10.0;
    hi = roots.back().s * 10.0;
  }
  lo = cfg.t_min.value_or(lo);
  hi = cfg.t_max.value_or(hi);
  require(hi > lo, "fiber range is empty");

  ensure_dir(cfg.out);
  auto os = open_out(cfg.out / "fiber.csv");
  os << "t,g,dg,ddg,phi\n";
  const int n = cfg.fiber_points;
  for (int i = 0; i < n; ++i) {
    const double t = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    os << t << ',' << fiber_g(sc, t) << ',' << fiber_dg(sc, t) << ',' << fiber_ddg(sc, t) << ',' << fiber_phi(sc, t)
       << '\n';
  }

  json jr = json::array();
  for (const auto& r : roots) jr.push_back({{"s", r.s}, {"branch", to_string(r.branch)}, {"g", r.g}, {"gpp", r.gpp}});
  json out = {{"source", source},
              {"scalars", {{"A", sc.A}, {"C", sc.C}, {"V", sc.V}}},
              {"params", to_json(p)},
              {"roots", jr},
              {"t_range", {lo, hi}},
              {"file", (cfg.out / "fiber.csv").string()}};
  if (p.a > 0.0 && p.p != 4.0) out["t_star"] = t_star(sc);
  print(out);
  return kOk;
}

int cmd_sweep(const RunConfig& cfg) {
  const auto& p = cfg.params;
  SharpConstants sharp;
  sharp.p = p.p;
  sharp.kgn = kgn_estimate(p.p);
  const int na = cfg.a_range.count, nc = cfg.c_range.count;
  std::vector<RegimeTag> tags(static_cast<std::size_t>(na) * nc);

#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < na * nc; ++k) {
    Params q = p;
    q.a = linspace(cfg.a_range, k / nc);
    q.c = linspace(cfg.c_range, k % nc);
    tags[k] = regime_classify(q, sharp).tag;
  }

  ensure_dir(cfg.out);
  auto os = open_out(cfg.out / "sweep.csv");
  os << "a,c,tag\n";
  for (int k = 0; k < na * nc; ++k)
    os << linspace(cfg.a_range, k / nc) << ',' << linspace(cfg.c_range, k % nc) << ',' << to_string(tags[k]) << '\n';

  print({{"params", to_json(p)}, {"kgn", sharp.kgn}, {"points", na * nc}, {"file", (cfg.out / "sweep.csv").string()}});
  return kOk;
}

int cmd_constants(const RunConfig& cfg) {
  const auto& p = cfg.params;
  const auto sharp = sharp_constants(p.p);
  json j = {{"p", p.p}, {"kgn", sharp.kgn}, {"kv2", sharp.kv2}, {"method", to_string(sharp.method)}};
  json tol = {{"kgn", sharp.kgn_tolerance}, {"kv2", "empirical lower bound over a 50-profile family"}};
  if (p.p != 4.0 && p.gamma != 0.0) j["k0"] = k0(p);
  if (p.p > 4.0 && p.a > 0.0 && p.gamma > 0.0) j["c0"] = c0(p.p, p.a, p.gamma, sharp.kgn);
  if (p.p < 4.0) {
    j["K1"] = k1(p.p, sharp.kgn);
    j["K2"] = k2(p.p, sharp.kgn);
  }
  j["kgn_gaussian_trial"] = kgn_gaussian_trial(p.p);
  if (cfg.cross_check) {
    const double r = kgn_rayleigh_estimate(p.p);
    j["kgn_rayleigh"] = r;
    tol["rayleigh_excess"] = (r - sharp.kgn) / sharp.kgn;
  }
  j["tolerances"] = tol;
  print(j);
  return kOk;
}

}  // namespace logsp::cli
