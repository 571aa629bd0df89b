// sphnys: experiment runner for product-integration solvers of second-kind
// integral equations on the unit sphere.

#include <CLI11.hpp>
#include <iostream>

#include "sphnys/cli.hpp"
#include "sphnys/error.hpp"
#include "sphnys/simd/kernels.hpp"

namespace {

struct Flags {
  std::string config_file;
  std::string points, weights, kernel, K, f, sweep, out, timing;
  int n = -1;
  int experiment = 0;
  long long grid = 0;
  long long seed = -1;
};

void add_common(CLI::App* cmd, Flags& fl) {
  cmd->add_option("--config", fl.config_file, "key = value config file; flags override it");
  cmd->add_option("--points", fl.points,
                  "file:<path> | <path> | equal_area:<m|auto> | random:<m|auto>:<seed> | tdesign:<dir>");
  cmd->add_option("--weights", fl.weights, "equal | file");
  cmd->add_option("--n", fl.n, "hyperinterpolation degree");
  cmd->add_option("--seed", fl.seed, "seed of the evaluation grid / probe (default 2024)");
  cmd->add_option("--out", fl.out, "output path (CSV, with a .json mirror)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Product-integration solver for weakly singular integral equations on the sphere"};
  app.require_subcommand(1);
  Flags fl;
  std::string isa;
  app.add_option("--simd", isa, "force kernel variant: scalar | avx2");

  auto* analyze = app.add_subcommand("analyze", "Marcinkiewicz-Zygmund report of a point set");
  add_common(analyze, fl);

  auto* moments = app.add_subcommand("moments", "modified moments mu_0..mu_n of a kernel");
  add_common(moments, fl);
  moments->add_option("--kernel", fl.kernel, "one | algebraic:nu | log | mixed:nu1:nu2");

  auto* solve = app.add_subcommand("solve", "solve a problem whose exact solution is phi = 1");
  add_common(solve, fl);
  solve->add_option("--kernel", fl.kernel, "one | algebraic:nu | log | mixed:nu1:nu2");
  solve->add_option("--K", fl.K, "const:c | sin:c | cos:c");
  solve->add_option("--f", fl.f, "const:c | const:auto | const:oracle");
  solve->add_option("--grid", fl.grid, "number of evaluation points (default 5000)");
  solve->add_option("--sweep", fl.sweep, "n=start:step:stop");
  solve->add_option("--timing", fl.timing, "on | off (off writes seconds = 0)");

  auto* experiment = app.add_subcommand("experiment", "run reference experiment 1-4");
  add_common(experiment, fl);
  experiment->add_option("--id", fl.experiment, "experiment id 1-4")->required();
  experiment->add_option("--grid", fl.grid, "number of evaluation points (default 5000)");
  experiment->add_option("--sweep", fl.sweep, "n=start:step:stop, with t = floor(1.2 n)");
  experiment->add_option("--timing", fl.timing, "on | off (off writes seconds = 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sphnys::cli::kValidationError;
  }

  sphnys::cli::RunConfig config;
  try {
    if (!isa.empty()) {
      if (isa != "scalar" && isa != "avx2") throw sphnys::ValidationError("--simd must be scalar|avx2");
      const auto want = isa == "avx2" ? sphnys::simd::Isa::avx2 : sphnys::simd::Isa::scalar;
      if (!sphnys::simd::isa_available(want)) throw sphnys::ValidationError("avx2 not available");
      sphnys::simd::force_isa(want);
    }
    config.subcommand = app.get_subcommands().front()->get_name();
    if (!fl.config_file.empty()) sphnys::cli::apply_config_file(fl.config_file, config);
    auto set = [&config](const char* key, const std::string& v) {
      if (!v.empty()) sphnys::cli::apply_setting(key, v, config);
    };
    set("points", fl.points);
    set("weights", fl.weights);
    set("kernel", fl.kernel);
    set("K", fl.K);
    set("f", fl.f);
    set("sweep", fl.sweep);
    set("out", fl.out);
    set("timing", fl.timing);
    if (fl.n >= 0) config.n = fl.n;
    else if (fl.n != -1) throw sphnys::ValidationError("degree n must be non-negative");
    if (fl.experiment != 0) config.experiment = fl.experiment;
    if (fl.grid != 0) set("grid", std::to_string(fl.grid));
    if (fl.seed != -1) set("seed", std::to_string(fl.seed));
  } catch (const sphnys::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return sphnys::cli::kValidationError;
  }
  return sphnys::cli::execute(config);
}
