#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "logsp/constants.hpp"
#include "logsp/solvers.hpp"

namespace logsp {

nlohmann::json to_json(const Params& p);
nlohmann::json to_json(const Grid& g);
nlohmann::json to_json(const SolverConfig& c);
nlohmann::json to_json(const Inequality& q);
nlohmann::json to_json(const RegimeLabel& label);
nlohmann::json to_json(const SharpConstants& s);
nlohmann::json to_json(const EnergyBreakdown& e);

/// Everything but the field itself, which goes to an LPF1 file.
nlohmann::json to_json(const SolveReport& r);

/// "iter,F,Q,grad_res,A,C,V" with full precision.
void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& rows);

}  // namespace logsp
