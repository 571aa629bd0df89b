#include "sphnys/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "sphnys/error.hpp"
#include "sphnys/mz_analysis.hpp"

namespace sphnys::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty() || !std::isfinite(v)) {
    throw ValidationError("invalid number '" + s + "' in " + what);
  }
  return v;
}

long long to_integer(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) throw ValidationError("invalid integer '" + s + "' in " + what);
  return v;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr double kPi = std::numbers::pi;

}  // namespace

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = nlohmann::json{{"subcommand", c.subcommand}, {"points", c.points},   {"weights", c.weights},
                     {"kernel", c.kernel},         {"K", c.K},             {"f", c.f},
                     {"n", c.n},                   {"experiment", c.experiment},
                     {"grid", c.grid},             {"seed", c.seed},       {"sweep", c.sweep},
                     {"out", c.out},               {"timing", c.timing}};
}

void from_json(const nlohmann::json& j, RunConfig& c) {
  j.at("subcommand").get_to(c.subcommand);
  j.at("points").get_to(c.points);
  j.at("weights").get_to(c.weights);
  j.at("kernel").get_to(c.kernel);
  j.at("K").get_to(c.K);
  j.at("f").get_to(c.f);
  j.at("n").get_to(c.n);
  j.at("experiment").get_to(c.experiment);
  j.at("grid").get_to(c.grid);
  j.at("seed").get_to(c.seed);
  j.at("sweep").get_to(c.sweep);
  j.at("out").get_to(c.out);
  j.at("timing").get_to(c.timing);
}

void apply_setting(const std::string& key, const std::string& value, RunConfig& c) {
  if (key == "subcommand") c.subcommand = value;
  else if (key == "points") c.points = value;
  else if (key == "weights") c.weights = value;
  else if (key == "kernel") c.kernel = value;
  else if (key == "K") c.K = value;
  else if (key == "f") c.f = value;
  else if (key == "n") c.n = static_cast<int>(to_integer(value, "n"));
  else if (key == "experiment") c.experiment = static_cast<int>(to_integer(value, "experiment"));
  else if (key == "grid") {
    const long long g = to_integer(value, "grid");
    if (g <= 0) throw ValidationError("grid must be positive");
    c.grid = static_cast<std::size_t>(g);
  } else if (key == "seed") {
    const long long s = to_integer(value, "seed");
    if (s < 0) throw ValidationError("seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  } else if (key == "sweep") c.sweep = value;
  else if (key == "out") c.out = value;
  else if (key == "timing") {
    if (value != "on" && value != "off" && value != "true" && value != "false") {
      throw ValidationError("timing must be on|off");
    }
    c.timing = value == "on" || value == "true";
  } else {
    throw ValidationError("unknown config key '" + key + "'");
  }
}

void apply_config_file(const std::filesystem::path& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), config);
  }
}

SingularKernel parse_kernel(const std::string& d) {
  const auto p = split(d, ':');
  if (p.size() == 1 && p[0] == "one") return SingularKernel::one();
  if (p.size() == 1 && p[0] == "log") return SingularKernel::log();
  if (p.size() == 2 && p[0] == "algebraic") {
    const double nu = to_double(p[1], "kernel");
    if (!(nu > -1.0)) throw ValidationError("algebraic kernel needs nu > -1");
    return SingularKernel::algebraic(nu);
  }
  if (p.size() == 3 && p[0] == "mixed") {
    return SingularKernel::mixed(to_double(p[1], "kernel"), to_double(p[2], "kernel"));
  }
  throw ValidationError("unknown kernel '" + d + "' (one | algebraic:nu | log | mixed:nu1:nu2)");
}

ContinuousKernel parse_continuous_kernel(const std::string& d) {
  const auto p = split(d, ':');
  if (p.size() == 2) {
    const double c = to_double(p[1], "K");
    if (p[0] == "const") return ContinuousKernel::constant(c);
    if (p[0] == "sin") return ContinuousKernel::sin_scaled(c);
    if (p[0] == "cos") return ContinuousKernel::cos_scaled(c);
  }
  throw ValidationError("unknown K '" + d + "' (const:c | sin:c | cos:c)");
}

std::vector<int> parse_sweep(const std::string& d) {
  if (d.rfind("n=", 0) != 0) throw ValidationError("sweep must look like n=start:step:stop");
  const auto p = split(d.substr(2), ':');
  if (p.size() != 3) throw ValidationError("sweep must look like n=start:step:stop");
  const long long start = to_integer(p[0], "sweep"), step = to_integer(p[1], "sweep"),
                  stop = to_integer(p[2], "sweep");
  if (start < 0 || step <= 0 || stop < start) throw ValidationError("sweep range is empty or invalid");
  std::vector<int> ns;
  for (long long n = start; n <= stop; n += step) ns.push_back(static_cast<int>(n));
  return ns;
}

namespace {

WeightMode parse_weights(const std::string& w) {
  if (w == "equal") return WeightMode::equal;
  if (w == "file") return WeightMode::from_file;
  throw ValidationError("weights must be equal|file");
}

std::filesystem::path design_file(const std::filesystem::path& dir, int t) {
  char name[64];
  std::snprintf(name, sizeof name, "sd_t%02d_m%d.txt", t, (t + 1) * (t + 1));
  return dir / name;
}

std::size_t auto_count(const std::string& s, int design_t, const std::string& what) {
  if (s == "auto") {
    if (design_t < 0) throw ValidationError(what + ":auto needs a degree");
    return static_cast<std::size_t>(design_t + 1) * static_cast<std::size_t>(design_t + 1);
  }
  const long long m = to_integer(s, what);
  if (m <= 0) throw ValidationError(what + " needs a positive point count");
  return static_cast<std::size_t>(m);
}

// Parses the descriptor and checks file references; returns the file to load
// (empty for generated sets).
std::filesystem::path check_points(const std::string& d, int design_t) {
  const auto p = split(d, ':');
  if (p.size() == 2 && p[0] == "equal_area") {
    auto_count(p[1], design_t, "equal_area");
    return {};
  }
  if (p.size() == 3 && p[0] == "random") {
    auto_count(p[1], design_t, "random");
    if (to_integer(p[2], "random seed") < 0) throw ValidationError("random seed must be non-negative");
    return {};
  }
  std::filesystem::path file;
  if (d.rfind("tdesign:", 0) == 0) {
    file = design_file(d.substr(8), design_t);
  } else if (d.rfind("file:", 0) == 0) {
    file = d.substr(5);
  } else {
    file = d;
  }
  if (!std::filesystem::is_regular_file(file)) {
    throw ValidationError("point file not found: " + file.string());
  }
  return file;
}

}  // namespace

QuadratureRule resolve_points(const std::string& d, const std::string& weights, int design_t) {
  const WeightMode mode = parse_weights(weights);
  const std::filesystem::path file = check_points(d, design_t);
  if (!file.empty()) return load_pointset(file, mode);
  const auto p = split(d, ':');
  if (p[0] == "equal_area") return equal_area_points(auto_count(p[1], design_t, "equal_area"));
  return random_rule(auto_count(p[1], design_t, "random"),
                     static_cast<std::uint64_t>(to_integer(p[2], "random seed")));
}

double constant_rhs_for_unit_solution(const SingularKernel& h, const ContinuousKernel& K) {
  if (!K.is_zonal()) throw ValidationError("constant right-hand side needs a zonal K");
  const OracleMoment integral =
      oracle_zonal_integral(h, [&K](double r) { return K.from_distance(r); });
  if (!integral.converged) throw NumericalError("oracle integral for f did not converge");
  return 1.0 - integral.value;
}

ExperimentSetup experiment_setup(int id) {
  ExperimentSetup s;
  s.id = id;
  switch (id) {
    case 1:
      s.h = SingularKernel::one();
      s.K = ContinuousKernel::sin_scaled(10.0);
      s.f = 1.455449001125579;
      break;
    case 2:
      s.h = SingularKernel::algebraic(-0.5);
      s.K = ContinuousKernel::cos_scaled(10.0);
      s.f = 0.303738699125466;
      break;
    case 3:
      s.h = SingularKernel::log();
      s.K = ContinuousKernel::constant(1.0);
      s.f = 1.0 - kPi * (4.0 * std::log(2.0) - 2.0);
      break;
    case 4: {
      s.h = SingularKernel::mixed(-0.5, -0.5);
      s.K = ContinuousKernel::sin_scaled(10.0);
      static const double f4 = constant_rhs_for_unit_solution(s.h, s.K);
      s.f = f4;
      break;
    }
    default:
      throw ValidationError("experiment id must be 1, 2, 3 or 4");
  }
  return s;
}

void to_json(nlohmann::json& j, const ResultRecord& r) {
  j = nlohmann::json{{"experiment", r.experiment}, {"n", r.n},
                     {"m", r.m},                   {"eta", r.eta},
                     {"uniform_error", r.uniform_error}, {"residual", r.residual},
                     {"seconds", r.seconds},       {"points", r.points}};
}

namespace {

ResultRecord solve_and_measure(int experiment, const ProblemSpec& spec, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const DiscreteSolution sol = solve_stage1(spec);
  const EvaluationGrid grid = uniform_random_points(opts.grid, opts.seed);
  ResultRecord r;
  r.experiment = experiment;
  r.n = spec.n;
  r.m = spec.rule.size();
  r.eta = sol.gamma.eta;
  r.uniform_error = uniform_error(sol, [](const SpherePoint&) { return 1.0; }, grid);
  r.residual = sol.residual;
  r.points = spec.rule.label;
  for (const std::string& w : sol.warnings) std::cerr << "warning: " << w << '\n';
  if (opts.timing) {
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

}  // namespace

ResultRecord run_experiment(int id, int n, const std::string& points, const RunOptions& opts,
                            int design_t) {
  const ExperimentSetup setup = experiment_setup(id);
  if (n < 0) throw ValidationError("degree n must be non-negative");
  ProblemSpec spec;
  spec.h = setup.h;
  spec.K = setup.K;
  spec.f = RightHandSide::constant(setup.f);
  spec.n = n;
  spec.rule = resolve_points(points, opts.weights, design_t >= 0 ? design_t : 2 * n);
  return solve_and_measure(id, spec, opts);
}

namespace {

double resolve_rhs(const std::string& f, const SingularKernel& h, const ContinuousKernel& K) {
  const auto p = split(f, ':');
  if (p.size() != 2 || p[0] != "const") {
    throw ValidationError("unknown f '" + f + "' (const:c | const:auto | const:oracle)");
  }
  if (p[1] == "auto") {
    if (K.kind() != ContinuousKernel::Kind::constant) {
      throw ValidationError("f const:auto needs a constant K; pass f explicitly or use const:oracle");
    }
    return 1.0 - K.parameter() * compute_moments(h, 0)[0];
  }
  if (p[1] == "oracle") return constant_rhs_for_unit_solution(h, K);
  return to_double(p[1], "f");
}

void check_f_syntax(const std::string& f, const ContinuousKernel& K) {
  const auto p = split(f, ':');
  if (p.size() != 2 || p[0] != "const") {
    throw ValidationError("unknown f '" + f + "' (const:c | const:auto | const:oracle)");
  }
  if (p[1] == "auto" && K.kind() != ContinuousKernel::Kind::constant) {
    throw ValidationError("f const:auto needs a constant K; pass f explicitly or use const:oracle");
  }
  if (p[1] != "auto" && p[1] != "oracle") to_double(p[1], "f");
}

}  // namespace

ResultRecord run_solve(const RunConfig& c) {
  ProblemSpec spec;
  spec.h = parse_kernel(c.kernel);
  spec.K = parse_continuous_kernel(c.K);
  spec.f = RightHandSide::constant(resolve_rhs(c.f, spec.h, spec.K));
  spec.n = c.n;
  spec.rule = resolve_points(c.points, c.weights, 2 * c.n);
  return solve_and_measure(0, spec, {c.grid, c.seed, c.timing, c.weights});
}

void validate(const RunConfig& c) {
  static const std::vector<std::string> subcommands{"analyze", "moments", "solve", "experiment"};
  if (std::find(subcommands.begin(), subcommands.end(), c.subcommand) == subcommands.end()) {
    throw ValidationError("unknown subcommand '" + c.subcommand + "'");
  }
  if (c.n < 0) throw ValidationError("degree n must be non-negative");
  if (c.n > 200) throw ValidationError("degree n above 200 is not supported");
  if (c.grid == 0) throw ValidationError("grid must be positive");
  parse_weights(c.weights);
  if (c.subcommand == "moments") {
    parse_kernel(c.kernel);
    return;
  }
  std::vector<int> degrees{c.n};
  if (!c.sweep.empty()) degrees = parse_sweep(c.sweep);
  if (c.subcommand == "experiment") {
    if (c.experiment < 1 || c.experiment > 4) throw ValidationError("experiment id must be 1, 2, 3 or 4");
    // A sweep tolerates missing design files (those degrees are skipped).
    if (c.sweep.empty()) check_points(c.points, 2 * c.n);
    else for (int n : degrees) {
      if (c.points.rfind("tdesign:", 0) != 0) check_points(c.points, 6 * n / 5);
    }
    return;
  }
  if (c.subcommand == "solve") {
    const SingularKernel h = parse_kernel(c.kernel);
    const ContinuousKernel K = parse_continuous_kernel(c.K);
    (void)h;
    check_f_syntax(c.f, K);
  }
  for (int n : degrees) check_points(c.points, 2 * n);
}

std::string results_csv(const std::vector<ResultRecord>& records) {
  std::string csv = "experiment,n,m,eta,uniform_error,residual,seconds\n";
  for (const ResultRecord& r : records) {
    csv += std::to_string(r.experiment) + "," + std::to_string(r.n) + "," + std::to_string(r.m) + "," +
           fmt17(r.eta) + "," + fmt17(r.uniform_error) + "," + fmt17(r.residual) + "," +
           fmt17(r.seconds) + "\n";
  }
  return csv;
}

void emit_results(const std::vector<ResultRecord>& records, const std::filesystem::path& path,
                  const RunConfig& config) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << results_csv(records);
    if (!out) throw ValidationError("write failed for " + path.string());
  }
  std::filesystem::path json_path = path;
  json_path.replace_extension(".json");
  if (json_path == path) json_path += ".json";
  nlohmann::json doc{{"config", config}, {"results", records}};
  std::ofstream out(json_path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + json_path.string());
  out << doc.dump(2, ' ', false, nlohmann::json::error_handler_t::strict) << '\n';
  if (!out) throw ValidationError("write failed for " + json_path.string());
}

namespace {

void write_text(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  const std::filesystem::path path(out);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot write " + out);
  file << text;
}

int run_analyze(const RunConfig& c) {
  const QuadratureRule rule = resolve_points(c.points, c.weights, 2 * c.n);
  MZOptions opts;
  opts.probe_seed = c.seed;
  const MZReport r = mz_constant(rule, c.n, opts);
  nlohmann::json j{{"points", rule.label},       {"m", rule.size()},
                   {"n", r.n},                   {"eta", r.eta},
                   {"lambda_min", r.lambda_min}, {"lambda_max", r.lambda_max},
                   {"exact_to", r.exact_to},     {"mesh_norm", r.mesh_norm},
                   {"degree_bound", r.degree_bound}, {"status", r.status()}};
  const std::string csv = "n,eta,lambda_min,lambda_max,exact_to,mesh_norm,degree_bound\n" +
                          std::to_string(r.n) + "," + fmt17(r.eta) + "," + fmt17(r.lambda_min) + "," +
                          fmt17(r.lambda_max) + "," + std::to_string(r.exact_to) + "," +
                          fmt17(r.mesh_norm) + "," + fmt17(r.degree_bound) + "\n";
  if (c.out.empty()) {
    std::cout << j.dump(2) << '\n' << csv;
  } else {
    write_text(c.out, csv);
    std::filesystem::path jp(c.out);
    jp.replace_extension(".json");
    write_text(jp.string(), j.dump(2) + "\n");
  }
  return kSuccess;
}

int run_moments(const RunConfig& c) {
  const ModifiedMoments mm = compute_moments(parse_kernel(c.kernel), c.n);
  std::string csv = "l,mu,method\n";
  for (int l = 0; l <= mm.n; ++l) {
    csv += std::to_string(l) + "," + fmt17(mm[l]) + "," + method_name(mm.method) + "\n";
  }
  write_text(c.out, csv);
  return kSuccess;
}

void report(const std::vector<ResultRecord>& records, const RunConfig& c) {
  if (c.out.empty()) {
    std::cout << results_csv(records);
  } else {
    emit_results(records, c.out, c);
  }
}

}  // namespace

int execute(const RunConfig& c) {
  try {
    validate(c);
    if (c.subcommand == "analyze") return run_analyze(c);
    if (c.subcommand == "moments") return run_moments(c);
    std::vector<ResultRecord> records;
    if (c.subcommand == "solve") {
      if (c.sweep.empty()) {
        records.push_back(run_solve(c));
      } else {
        for (int n : parse_sweep(c.sweep)) {
          RunConfig one = c;
          one.n = n;
          records.push_back(run_solve(one));
        }
      }
    } else {
      const RunOptions opts{c.grid, c.seed, c.timing, c.weights};
      if (c.sweep.empty()) {
        records.push_back(run_experiment(c.experiment, c.n, c.points, opts));
      } else {
        for (int n : parse_sweep(c.sweep)) {
          const int t = 6 * n / 5;  // floor(1.2 n)
          try {
            records.push_back(run_experiment(c.experiment, n, c.points, opts, t));
          } catch (const ValidationError& e) {
            std::cerr << "skipping n=" << n << ": " << e.what() << '\n';
          }
        }
      }
    }
    report(records, c);
    return kSuccess;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace sphnys::cli
