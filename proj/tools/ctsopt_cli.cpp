// ctsopt: run experiment sweeps, evaluate single points, list registries.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctsopt/benchmarks.hpp"
#include "ctsopt/design_problems.hpp"
#include "ctsopt/harness.hpp"
#include "ctsopt/registry.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

int cmd_eval(const std::string& problem, const std::vector<double>& x, double penalty) {
  using namespace ctsopt;
  Settings s;
  s.penalty = penalty;
  if (is_design_problem(problem)) {
    const auto p = problem == "welded_beam" ? design::Problem::WeldedBeam : design::Problem::PressureVessel;
    if (x.size() != design::problem_space(p).dim()) {
      throw ConfigError(problem + " takes " + std::to_string(design::problem_space(p).dim()) + " coordinates");
    }
    const auto rep = design::problem_constraints(p, x);
    std::cout << "value: " << num(design::penalized_objective(p, x, penalty)) << "\n";
    std::cout << "cost: " << num(design::problem_cost(p, x)) << "\n";
    std::cout << "feasible: " << (rep.feasible ? "yes" : "no") << "\n";
    std::cout << "violation: " << num(rep.violation) << "\n";
    for (std::size_t i = 0; i < rep.values.size(); ++i) {
      std::cout << "g" << i + 1 << ": " << num(rep.values[i]) << "\n";
    }
    return 0;
  }
  const auto id = bench::BenchmarkId::parse(problem);
  if (!id) {
    make_problem(problem, s);  // throws the error listing valid ids
    return kExitConfig;
  }
  if (id->category() == bench::Category::FixedDimensional && x.size() != bench::spec_of(*id).dim) {
    throw ConfigError(problem + " takes " + std::to_string(bench::spec_of(*id).dim) + " coordinates");
  }
  if (x.empty()) throw ConfigError("no coordinates given");
  // F7's additive noise is left out so the printed value is reproducible
  const bool noisy = id->index == 7;
  std::cout << "value: " << num(bench::benchmark_value(*id, x, noisy ? std::optional<double>(0.0) : std::nullopt))
            << "\n";
  if (noisy) std::cout << "noise: excluded\n";
  return 0;
}

int cmd_list() {
  std::cout << "problems:";
  for (const auto& p : ctsopt::problem_ids()) std::cout << " " << p;
  std::cout << "\noptimizers:";
  for (const auto& o : ctsopt::optimizer_ids()) std::cout << " " << o;
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous MCTS optimizer and benchmark harness"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a (problem x optimizer x trial) sweep");
  std::string spec_path;
  std::uint64_t seed = 0;
  std::int64_t budget = 0;
  std::size_t trials = 0;
  std::string out;
  bool log_points = false;
  std::vector<std::string> sets;
  run->add_option("--spec", spec_path, "Experiment spec file")->required()->check(CLI::ExistingFile);
  auto* seed_opt = run->add_option("--seed", seed, "Master seed (overrides the spec)");
  run->add_option("--budget", budget, "Evaluations per trial (overrides the spec)")->check(CLI::PositiveNumber);
  run->add_option("--trials", trials, "Trials per (problem, optimizer)")->check(CLI::PositiveNumber);
  run->add_option("--out", out, "Output directory (overrides the spec)");
  run->add_flag("--log-points", log_points, "Write sampled points next to each trace");
  run->add_option("--set", sets, "Extra key=value configuration override");

  auto* eval = app.add_subcommand("eval", "Evaluate one point on a named problem");
  std::string problem;
  std::vector<double> coords;
  double penalty = ctsopt::design::kDefaultPenalty;
  eval->add_option("problem", problem, "Problem id")->required();
  eval->add_option("x", coords, "Coordinates in problem units")->required();
  eval->add_option("--penalty", penalty, "Penalty weight for design problems");

  app.add_subcommand("list", "List problem and optimizer ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      auto spec = ctsopt::harness::parse_spec_file(spec_path);
      if (*seed_opt) spec.master_seed = seed;
      if (budget > 0) spec.budget = budget;
      if (trials > 0) spec.trials = trials;
      if (!out.empty()) spec.out_dir = out;
      if (log_points) spec.log_points = true;
      for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ctsopt::ConfigError("--set expects key=value, got '" + kv + "'");
        spec.overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
      }
      const auto res = ctsopt::harness::run_experiment(spec, &std::cerr);
      std::cout << ctsopt::harness::emit_summary(res.rows, ctsopt::harness::Format::Text);
      return 0;
    }
    if (*eval) return cmd_eval(problem, coords, penalty);
    return cmd_list();
  } catch (const ctsopt::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ctsopt::ContractViolation& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
