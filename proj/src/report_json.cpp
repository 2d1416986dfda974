#include "logsp/report_json.hpp"

#include <fstream>
#include <iomanip>
#include <limits>

#include "logsp/error.hpp"

namespace logsp {

using nlohmann::json;

json to_json(const Params& p) { return {{"gamma", p.gamma}, {"a", p.a}, {"p", p.p}, {"c", p.c}}; }

json to_json(const Grid& g) { return {{"L", g.L}, {"n", g.n}, {"h", g.h}}; }

json to_json(const SolverConfig& c) {
  return {{"tol_grad", c.tol_grad}, {"tol_Q", c.tol_Q},       {"max_iter", c.max_iter},
          {"step0", c.step0},       {"backtrack", c.backtrack}, {"armijo", c.armijo},
          {"guard_margin", c.guard_margin}, {"seed", c.seed}, {"trace", c.trace},
          {"explore_open", c.explore_open}};
}

json to_json(const Inequality& q) {
  return {{"name", q.name}, {"lhs", q.lhs}, {"relation", q.relation}, {"rhs", q.rhs}, {"holds", q.holds}};
}

json to_json(const RegimeLabel& label) {
  json chain = json::array(), checks = json::array();
  for (const auto& q : label.certificate.chain) chain.push_back(to_json(q));
  for (const auto& q : label.certificate.checks) checks.push_back(to_json(q));
  return {{"tag", to_string(label.tag)},
          {"existence", is_existence(label.tag)},
          {"certificate", {{"rule", label.certificate.rule}, {"chain", chain}, {"checks", checks}}}};
}

json to_json(const SharpConstants& s) {
  return {{"p", s.p}, {"kgn", s.kgn}, {"kv2", s.kv2}, {"method", to_string(s.method)}, {"kgn_tolerance", s.kgn_tolerance}};
}

json to_json(const EnergyBreakdown& e) {
  return {{"A", e.A}, {"C", e.C}, {"V", e.V}, {"V1", e.V1}, {"V2", e.V2}, {"F", e.F}, {"star_norm", e.star_norm}};
}

json to_json(const SolveReport& r) {
  json j = {{"solver", r.solver},
            {"params", to_json(r.params)},
            {"grid", to_json(r.grid)},
            {"config", to_json(r.config)},
            {"breakdown", to_json(r.breakdown)},
            {"lambda", r.lambda},
            {"Q", r.Q},
            {"q_residual", r.q_residual},
            {"q_scale", r.q_scale},
            {"pohozaev_residual", r.pohozaev_residual},
            {"el_residual", r.el_residual},
            {"boundary_fraction", r.boundary_fraction},
            {"mass_error", r.mass_error},
            {"iters", r.iters},
            {"materializations", r.materializations},
            {"converged", r.converged},
            {"status", r.status},
            {"regime", to_json(r.regime)},
            {"constants", to_json(r.sharp)}};
  if (r.branch) {
    j["branch"] = {{"branch", to_string(r.branch->branch)}, {"s", r.branch->s},           {"gpp", r.branch->gpp},
                   {"t_star", r.branch->t_star},            {"v_margin", r.branch->v_margin}};
  }
  if (r.lower_bound) j["lower_bound"] = *r.lower_bound;
  return j;
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& rows) {
  std::ofstream os(path);
  if (!os) fail(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "iter,F,Q,grad_res,A,C,V\n";
  for (const auto& r : rows) os << r.iter << ',' << r.F << ',' << r.Q << ',' << r.grad_res << ',' << r.A << ',' << r.C << ',' << r.V << '\n';
  if (!os) fail(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace logsp
