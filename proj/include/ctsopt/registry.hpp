#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ctsopt/baselines.hpp"
#include "ctsopt/core.hpp"
#include "ctsopt/orchestrator.hpp"

namespace ctsopt {

/// Bad ids, malformed keys or values in a run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every tunable the optimizers and problems resolve, in one place so that
/// it can be echoed into run metadata.
struct Settings {
  MctsConfig mcts;
  PsoConfig pso;
  double penalty = 1e6;
  std::size_t dim_override = 0;  // 0 -> each benchmark's tabulated dimension
};

/// key is e.g. "mcts.global.tree_count", "surrogate.retrain_period", "pso.w", "penalty".
void apply_override(Settings& s, const std::string& key, const std::string& value);
nlohmann::json settings_to_json(const Settings& s);

const std::vector<std::string>& problem_ids();
const std::vector<std::string>& optimizer_ids();

bool is_design_problem(std::string_view id);
Objective make_problem(std::string_view id, const Settings& s);

RunResult run_optimizer(std::string_view optimizer, const Objective& obj, std::int64_t budget, std::uint64_t seed,
                        const Settings& s, bool log_points = false);

}  // namespace ctsopt
