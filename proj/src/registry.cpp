#include "ctsopt/registry.hpp"

#include <charconv>
#include <functional>
#include <map>

#include "ctsopt/benchmarks.hpp"
#include "ctsopt/design_problems.hpp"

namespace ctsopt {

namespace {

double parse_real(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
  return out;
}

std::size_t parse_count(const std::string& key, const std::string& v) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError("'" + key + "' expects a non-negative integer, got '" + v + "'");
  }
  return out;
}

using Setter = std::function<void(Settings&, const std::string&, const std::string&)>;

template <typename Field>
Setter real(Field f) {
  return [f](Settings& s, const std::string& k, const std::string& v) { f(s) = parse_real(k, v); };
}
template <typename Field>
Setter count(Field f) {
  return [f](Settings& s, const std::string& k, const std::string& v) { f(s) = parse_count(k, v); };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"penalty", real([](Settings& s) -> double& { return s.penalty; })},
      {"dim", count([](Settings& s) -> std::size_t& { return s.dim_override; })},
      {"workers", count([](Settings& s) -> std::size_t& { return s.mcts.parallel.workers; })},
      {"mcts.global.tree_count", count([](Settings& s) -> std::size_t& { return s.mcts.global.tree_count; })},
      {"mcts.global.a_min", real([](Settings& s) -> double& { return s.mcts.global.a_min; })},
      {"mcts.global.a_max", real([](Settings& s) -> double& { return s.mcts.global.a_max; })},
      {"mcts.global.b", real([](Settings& s) -> double& { return s.mcts.global.b; })},
      {"mcts.global.C_base", real([](Settings& s) -> double& { return s.mcts.global.C_base; })},
      {"mcts.global.C_large", real([](Settings& s) -> double& { return s.mcts.global.C_large; })},
      {"mcts.global.max_depth",
       [](Settings& s, const std::string& k, const std::string& v) {
         s.mcts.global.max_depth = static_cast<int>(parse_count(k, v));
       }},
      {"mcts.global.stagnation_threshold",
       count([](Settings& s) -> std::size_t& { return s.mcts.global.stagnation_threshold; })},
      {"mcts.global.iterations_per_tree",
       count([](Settings& s) -> std::size_t& { return s.mcts.global.iterations_per_tree; })},
      {"mcts.global.budget_fraction", real([](Settings& s) -> double& { return s.mcts.global.budget_fraction; })},
      {"mcts.global.rollouts_per_expansion",
       count([](Settings& s) -> std::size_t& { return s.mcts.global.rollouts_per_expansion; })},
      {"mcts.local.seed_count", count([](Settings& s) -> std::size_t& { return s.mcts.local.seed_count; })},
      {"mcts.local.stages", count([](Settings& s) -> std::size_t& { return s.mcts.local.stages; })},
      {"mcts.local.iterations_per_stage",
       count([](Settings& s) -> std::size_t& { return s.mcts.local.iterations_per_stage; })},
      {"mcts.local.C_local", real([](Settings& s) -> double& { return s.mcts.local.C_local; })},
      {"mcts.local.descend_patience",
       count([](Settings& s) -> std::size_t& { return s.mcts.local.descend_patience; })},
      {"mcts.local.alpha", real([](Settings& s) -> double& { return s.mcts.local.alpha; })},
      {"mcts.local.epsilon", real([](Settings& s) -> double& { return s.mcts.local.epsilon; })},
      {"mcts.local.delta", real([](Settings& s) -> double& { return s.mcts.local.delta; })},
      {"mcts.local.f_target",
       [](Settings& s, const std::string& k, const std::string& v) { s.mcts.local.f_target = parse_real(k, v); }},
      {"mcts.local.target_tolerance", real([](Settings& s) -> double& { return s.mcts.local.target_tolerance; })},
      {"mcts.local.rollouts_per_expansion",
       count([](Settings& s) -> std::size_t& { return s.mcts.local.rollouts_per_expansion; })},
      {"surrogate.bootstrap_count",
       count([](Settings& s) -> std::size_t& { return s.mcts.sampler.surrogate.bootstrap_count; })},
      {"surrogate.retrain_period",
       count([](Settings& s) -> std::size_t& { return s.mcts.sampler.surrogate.retrain_period; })},
      {"surrogate.rbf_count", count([](Settings& s) -> std::size_t& { return s.mcts.sampler.surrogate.rbf_count; })},
      {"surrogate.hill_climb_iters",
       count([](Settings& s) -> std::size_t& { return s.mcts.sampler.surrogate.hill_climb_iters; })},
      {"surrogate.cdf_points", count([](Settings& s) -> std::size_t& { return s.mcts.sampler.surrogate.cdf_points; })},
      {"surrogate.history_window",
       count([](Settings& s) -> std::size_t& { return s.mcts.sampler.surrogate.history_window; })},
      {"surrogate.train_step", real([](Settings& s) -> double& { return s.mcts.sampler.surrogate.train.step; })},
      {"surrogate.train_iterations",
       [](Settings& s, const std::string& k, const std::string& v) {
         s.mcts.sampler.surrogate.train.iterations = static_cast<int>(parse_count(k, v));
       }},
      {"surrogate.l2", real([](Settings& s) -> double& { return s.mcts.sampler.surrogate.train.l2; })},
      {"pso.swarm_size", count([](Settings& s) -> std::size_t& { return s.pso.swarm_size; })},
      {"pso.w", real([](Settings& s) -> double& { return s.pso.w; })},
      {"pso.c1", real([](Settings& s) -> double& { return s.pso.c1; })},
      {"pso.c2", real([](Settings& s) -> double& { return s.pso.c2; })},
      {"pso.v_max", real([](Settings& s) -> double& { return s.pso.v_max; })},
  };
  return table;
}

}  // namespace

void apply_override(Settings& s, const std::string& key, const std::string& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError("unknown configuration key '" + key + "'");
  it->second(s, key, value);
}

nlohmann::json settings_to_json(const Settings& s) {
  const auto& g = s.mcts.global;
  const auto& l = s.mcts.local;
  const auto& sur = s.mcts.sampler.surrogate;
  nlohmann::json j;
  j["penalty"] = {{"form", "linear exterior: cost + lambda * sum(max(0, g_i))"}, {"lambda", s.penalty}};
  j["dim_override"] = s.dim_override;
  j["workers"] = s.mcts.parallel.workers;
  j["mcts"]["global"] = {{"tree_count", g.tree_count},
                         {"a_min", g.a_min},
                         {"a_max", g.a_max},
                         {"b", g.b},
                         {"C_base", g.C_base},
                         {"C_large", g.C_large},
                         {"max_depth", g.max_depth},
                         {"stagnation_threshold", g.stagnation_threshold},
                         {"iterations_per_tree", g.iterations_per_tree},
                         {"budget_fraction", g.budget_fraction},
                         {"rollouts_per_expansion", g.rollouts_per_expansion}};
  j["mcts"]["local"] = {{"seed_count", l.seed_count},
                        {"stages", l.stages},
                        {"iterations_per_stage", l.iterations_per_stage},
                        {"C_local", l.C_local},
                        {"descend_patience", l.descend_patience},
                        {"alpha", l.alpha},
                        {"epsilon", l.epsilon},
                        {"delta", l.delta},
                        {"f_target", l.f_target ? nlohmann::json(*l.f_target) : nlohmann::json("known_min")},
                        {"target_tolerance", l.target_tolerance},
                        {"rollouts_per_expansion", l.rollouts_per_expansion}};
  j["surrogate"] = {{"bootstrap_count", sur.bootstrap_count},
                    {"retrain_period", sur.retrain_period},
                    {"rbf_count", sur.rbf_count},
                    {"hill_climb_iters", sur.hill_climb_iters == 0 ? nlohmann::json("10*dim")
                                                                   : nlohmann::json(sur.hill_climb_iters)},
                    {"cdf_points", sur.cdf_points},
                    {"history_window", sur.history_window},
                    {"train_step", sur.train.step},
                    {"train_iterations", sur.train.iterations},
                    {"l2", sur.train.l2}};
  j["pso"] = {{"swarm_size", s.pso.swarm_size},
              {"w", s.pso.w},
              {"c1", s.pso.c1},
              {"c2", s.pso.c2},
              {"v_max", s.pso.v_max}};
  return j;
}

const std::vector<std::string>& problem_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (int i = 1; i <= 23; ++i) v.push_back("F" + std::to_string(i));
    v.push_back("welded_beam");
    v.push_back("pressure_vessel");
    return v;
  }();
  return ids;
}

const std::vector<std::string>& optimizer_ids() {
  static const std::vector<std::string> ids = {"mcts_logistic", "mcts_hypersphere", "random", "pso"};
  return ids;
}

namespace {
std::string joined(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}
}  // namespace

bool is_design_problem(std::string_view id) { return id == "welded_beam" || id == "pressure_vessel"; }

Objective make_problem(std::string_view id, const Settings& s) {
  if (id == "welded_beam") return design::make_design_objective(design::Problem::WeldedBeam, s.penalty);
  if (id == "pressure_vessel") return design::make_design_objective(design::Problem::PressureVessel, s.penalty);
  const auto bid = bench::BenchmarkId::parse(id);
  if (!bid) throw ConfigError("unknown problem '" + std::string(id) + "'; valid ids: " + joined(problem_ids()));
  if (s.dim_override != 0 && bid->category() != bench::Category::FixedDimensional) {
    return bench::make_benchmark(*bid, s.dim_override);
  }
  return bench::make_benchmark(*bid);
}

RunResult run_optimizer(std::string_view optimizer, const Objective& obj, std::int64_t budget, std::uint64_t seed,
                        const Settings& s, bool log_points) {
  if (optimizer == "mcts_logistic" || optimizer == "mcts_hypersphere") {
    MctsConfig cfg = s.mcts;
    cfg.sampler.kind = optimizer == "mcts_logistic" ? SamplerKind::Logistic : SamplerKind::Hypersphere;
    return optimize(obj, budget, cfg, seed, log_points);
  }
  if (optimizer == "random") return random_search(obj, budget, seed, log_points);
  if (optimizer == "pso") return pso_optimize(obj, budget, s.pso, seed, log_points);
  throw ConfigError("unknown optimizer '" + std::string(optimizer) + "'; valid ids: " + joined(optimizer_ids()));
}

}  // namespace ctsopt
