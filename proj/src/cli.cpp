// Copyright 2026 The mgval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mgval/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "mgval/common.hpp"
#include "mgval/io.hpp"

namespace mgval {
namespace {

struct RunConfig {
  std::string input;
  std::string out = ".";
  std::optional<std::string> solution;
  std::size_t resolution = 1025;
  double ode_step = 1e-4;
  double n = 256.0;
  std::size_t grid = 2001;
  std::size_t trajectories = 10000;
  std::optional<double> horizon;
  std::uint64_t seed = 0;
  double p = 0.5;
  std::string format = "json";
};

void Require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(ValidationError::Code::kOutOfRange, what);
}

void ValidateConfig(const RunConfig& c) {
  Require(c.resolution >= 3, "--resolution must be at least 3");
  Require(c.ode_step > 0.0 && c.ode_step <= 0.1, "--ode-step must lie in (0, 0.1]");
  Require(c.n > 0.0, "--n must be positive");
  Require(c.grid >= 3, "--grid must be at least 3");
  Require(c.trajectories >= 1, "--trajectories must be at least 1");
  Require(!c.horizon || *c.horizon > 0.0, "--horizon must be positive");
  Require(c.p >= 0.0 && c.p <= 1.0, "--p must lie in [0, 1]");
}

std::string OutPath(const RunConfig& c, const std::string& file) {
  std::error_code ec;
  std::filesystem::create_directories(c.out, ec);
  if (ec) throw IoError("cannot create output directory " + c.out);
  return (std::filesystem::path(c.out) / file).string();
}

void Write(const RunConfig& c, const std::string& file,
           const std::string& content, std::ostream& out) {
  const std::string path = OutPath(c, file);
  WriteTextFile(path, content);
  out << "wrote " << path << '\n';
}

SolverOptions OptionsOf(const RunConfig& c) {
  SolverOptions opts;
  opts.resolution = c.resolution;
  opts.ode_step = c.ode_step;
  return opts;
}

// Solution from --solution when given, else a fresh solve.
struct Solved {
  UOracle oracle;
  PiecewiseValue value;
};

Solved Obtain(const RunConfig& c, const ValidatedGame& game) {
  const SolverOptions opts = OptionsOf(c);
  if (c.solution) {
    UOracle oracle = BuildUOracle(game.spec, opts.resolution,
                                  opts.refine_tol_rel * game.params.scale());
    PiecewiseValue pv = ValueFromJson(ReadJsonFile(*c.solution), game.params);
    return {std::move(oracle), std::move(pv)};
  }
  Solution sol = SolveLimitValue(game.spec, opts);
  return {std::move(sol.oracle), std::move(sol.value)};
}

int Solve(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ValidatedGame game = LoadGame(c.input);
  const Solution sol = SolveLimitValue(game.spec, OptionsOf(c));
  for (const std::string& d : sol.trace.diagnostics) err << "warning: " << d << '\n';
  Write(c, "solution.json", SolutionToJson(sol).dump(2) + "\n", out);
  Write(c, "curve.csv", CurveCsv(sol.oracle, sol.envelope, &sol.value, c.grid), out);
  return kExitOk;
}

int Check(const RunConfig& c, std::ostream& out) {
  const ValidatedGame game = LoadGame(c.input);
  const Solved s = Obtain(c, game);
  const CharReport rep = CheckCharacterization(s.value, s.oracle);
  Write(c, "char_report.json", CharReportToJson(rep).dump(2) + "\n", out);
  out << (rep.pass ? "characterization: pass" : "characterization: FAIL") << '\n';
  return rep.pass ? kExitOk : kExitCheckFailed;
}

int Oracle(const RunConfig& c, std::ostream& out) {
  const ValidatedGame game = LoadGame(c.input);
  std::optional<PiecewiseValue> pv;
  if (c.solution) pv = ValueFromJson(ReadJsonFile(*c.solution), game.params);
  const OracleGrid og = DiscreteOracleValue(game.spec, c.n, c.grid);
  Json summary = OracleSummaryToJson(og);
  if (pv) summary["sup_diff"] = CompareToOracle(*pv, og);
  Write(c, "oracle.csv", OracleCsv(og), out);
  Write(c, "oracle_summary.json", summary.dump(2) + "\n", out);
  return kExitOk;
}

int Simulate(const RunConfig& c, std::ostream& out) {
  const ValidatedGame game = LoadGame(c.input);
  const Solved s = Obtain(c, game);
  const RevelationPolicy policy = BuildPolicy(s.value);
  const double horizon = c.horizon.value_or(12.0 / game.spec.r);
  if (c.format == "csv") {
    const BeliefTrajectory tr = SampleTrajectory(policy, c.p, horizon, c.seed);
    Write(c, "trajectory.csv", TrajectoryCsv(tr), out);
  } else {
    const ValueEstimate est = EstimateValue(policy, s.oracle, c.p,
                                            c.trajectories, horizon, c.seed);
    Write(c, "estimate.json", EstimateToJson(est).dump(2) + "\n", out);
  }
  return kExitOk;
}

int Curve(const RunConfig& c, std::ostream& out) {
  const ValidatedGame game = LoadGame(c.input);
  UOracle oracle = BuildUOracle(game.spec, c.resolution,
                                SolverOptions{}.refine_tol_rel * game.params.scale());
  const ConcaveEnvelope env = UpperConcaveEnvelope(oracle);
  Write(c, "curve.csv", CurveCsv(oracle, env, nullptr, c.grid), out);
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Limit value of two-state stochastic games with an informed player"};
  app.name("mgval");
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", c.input, "game spec JSON")->required();
    sub->add_option("--out", c.out, "output directory");
    sub->add_option("--resolution", c.resolution, "uniform u samples");
    sub->add_option("--ode-step", c.ode_step, "RK4 step");
  };
  CLI::App* solve = app.add_subcommand("solve", "solution JSON and curve CSV");
  common(solve);
  solve->add_option("--grid", c.grid, "curve points");
  CLI::App* check = app.add_subcommand("check", "characterization report");
  common(check);
  check->add_option("--solution", c.solution, "solution JSON to check");
  CLI::App* oracle = app.add_subcommand("oracle", "discrete-time value iteration");
  common(oracle);
  oracle->add_option("--n", c.n, "stages per unit time");
  oracle->add_option("--grid", c.grid, "belief grid size");
  oracle->add_option("--solution", c.solution, "solution JSON to compare with");
  CLI::App* simulate = app.add_subcommand("simulate", "belief paths and value estimate");
  common(simulate);
  simulate->add_option("--solution", c.solution, "solution JSON to simulate");
  simulate->add_option("--p", c.p, "initial belief");
  simulate->add_option("--trajectories", c.trajectories, "paths in the estimate");
  simulate->add_option("--horizon", c.horizon, "truncation time (default 12/r)");
  simulate->add_option("--seed", c.seed, "root seed");
  simulate->add_option("--format", c.format, "json: estimate, csv: one path")
      ->check(CLI::IsMember({"json", "csv"}));
  CLI::App* curve = app.add_subcommand("curve", "u and cav u CSV");
  common(curve);
  curve->add_option("--grid", c.grid, "curve points");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    ValidateConfig(c);
    if (solve->parsed()) return Solve(c, out, err);
    if (check->parsed()) return Check(c, out);
    if (oracle->parsed()) return Oracle(c, out);
    if (simulate->parsed()) return Simulate(c, out);
    return Curve(c, out);
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace mgval
