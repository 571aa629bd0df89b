#pragma once

// Experiment runner behind the sphnys command-line tool.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sphnys/moments.hpp"
#include "sphnys/pointsets.hpp"
#include "sphnys/solver.hpp"

namespace sphnys::cli {

enum ExitCode : int { kSuccess = 0, kValidationError = 2, kNumericalError = 3 };

/// Everything a run needs. Strings use the command-line descriptor syntax:
///   points   file:<path> | <path> | equal_area:<m|auto> | random:<m|auto>:<seed> | tdesign:<dir>
///   weights  equal | file
///   kernel   one | algebraic:<nu> | log | mixed:<nu1>:<nu2>
///   K        const:<c> | sin:<c> | cos:<c>
///   f        const:<c> | const:auto | const:oracle
struct RunConfig {
  std::string subcommand = "solve";
  std::string points = "equal_area:auto";
  std::string weights = "equal";
  std::string kernel = "one";
  std::string K = "const:1";
  std::string f = "const:auto";
  int n = 10;
  int experiment = 0;
  std::size_t grid = 5000;
  std::uint64_t seed = 2024;
  std::string sweep;
  std::string out;
  bool timing = true;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

/// Reads `key = value` lines (`#` comments) into config fields; unknown keys throw.
void apply_config_file(const std::filesystem::path& path, RunConfig& config);
void apply_setting(const std::string& key, const std::string& value, RunConfig& config);

/// Checks every range and file reference without doing any numerical work.
void validate(const RunConfig& config);

SingularKernel parse_kernel(const std::string& descriptor);
ContinuousKernel parse_continuous_kernel(const std::string& descriptor);

/// Degrees of `n=<start>:<step>:<stop>` (inclusive).
std::vector<int> parse_sweep(const std::string& descriptor);

/// Resolves a point descriptor. `design_t` is the exactness degree used by the
/// auto forms: m = (design_t + 1)^2 for equal_area/random, and the file
/// sd_t<design_t>_m<m>.txt inside a tdesign directory.
QuadratureRule resolve_points(const std::string& descriptor, const std::string& weights, int design_t);

/// Setup of one of the four reference experiments; the exact solution is 1.
struct ExperimentSetup {
  int id = 0;
  SingularKernel h = SingularKernel::one();
  ContinuousKernel K = ContinuousKernel::constant(1.0);
  double f = 0.0;
};
ExperimentSetup experiment_setup(int id);

/// 1 - 2 pi int h(sqrt(2(1-t))) K(t) dt: the constant f whose solution is phi = 1.
double constant_rhs_for_unit_solution(const SingularKernel& h, const ContinuousKernel& K);

struct ResultRecord {
  int experiment = 0;
  int n = 0;
  std::size_t m = 0;
  double eta = 0.0;
  double uniform_error = 0.0;
  double residual = 0.0;
  double seconds = 0.0;
  std::string points;
};

void to_json(nlohmann::json& j, const ResultRecord& r);

struct RunOptions {
  std::size_t grid = 5000;
  std::uint64_t seed = 2024;
  bool timing = true;
  std::string weights = "equal";
};

ResultRecord run_experiment(int id, int n, const std::string& points, const RunOptions& opts = {},
                            int design_t = -1);
/// Solves the configured problem against the exact solution phi = 1.
ResultRecord run_solve(const RunConfig& config);

/// CSV `experiment,n,m,eta,uniform_error,residual,seconds` at 17 significant
/// digits, plus a JSON mirror (same stem, .json) echoing the config.
void emit_results(const std::vector<ResultRecord>& records, const std::filesystem::path& path,
                  const RunConfig& config);
std::string results_csv(const std::vector<ResultRecord>& records);

/// Runs a full invocation and returns the process exit code. Output goes to
/// config.out when set, otherwise to stdout.
int execute(const RunConfig& config);

}  // namespace sphnys::cli
