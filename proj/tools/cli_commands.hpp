#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "logsp/fiber.hpp"
#include "logsp/functionals.hpp"
#include "logsp/grid_field.hpp"
#include "logsp/solvers.hpp"

namespace logsp::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kConfigError = 2,
  kNonConvergence = 3,
  kRegimeRefusal = 4,
};

struct Range {
  double lo = 0.0, hi = 0.0;
  int count = 0;
};

/// Everything a command needs, assembled from the JSON config and flag overrides.
struct RunConfig {
  Params params;
  double grid_L = 40.0;
  std::size_t grid_n = 256;
  SolverConfig solver;
  ProfileSpec init;
  std::optional<Branch> branch;
  std::string method = "auto";  // auto | global | capped | branch | maximize
  std::filesystem::path out = ".";

  // fiber
  std::optional<double> A, C, V;
  std::optional<double> t_min, t_max;
  int fiber_points = 400;

  // sweep
  Range a_range{0.5, 20.0, 40};
  Range c_range{0.2, 3.0, 40};

  // verify
  double inject_origin_shift = 0.0;
  bool cross_check = false;

  nlohmann::json source;  ///< merged configuration, echoed into reports
};

/// Parses a ProfileSpec from {"kind": "gaussian" | "ring" | "two_bump" | "random", ...}.
ProfileSpec profile_from_json(const nlohmann::json& j, double c);
nlohmann::json profile_to_json(const ProfileSpec& spec);

/// Reads the JSON file (if any) into a RunConfig. Throws InvalidArgument on bad content.
RunConfig load_config(const std::optional<std::filesystem::path>& path);

/// Validates everything the commands rely on, before any allocation.
void validate(const RunConfig& cfg);

/// Normalized JSON echo of the effective configuration.
nlohmann::json effective_config(const RunConfig& cfg);

int cmd_classify(const RunConfig& cfg);
int cmd_solve(const RunConfig& cfg);
int cmd_fiber(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);
int cmd_constants(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);

}  // namespace logsp::cli
