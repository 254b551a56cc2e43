#pragma once

#include <cstdint>

#include "ctsopt/core.hpp"

namespace ctsopt {

/// i.i.d. uniform points over the box.
RunResult random_search(const Objective& obj, std::int64_t budget, std::uint64_t seed, bool log_points = false);

/// Constriction-coefficient PSO in unit-cube coordinates.
struct PsoConfig {
  std::size_t swarm_size = 30;
  double w = 0.729;
  double c1 = 1.49445;
  double c2 = 1.49445;
  double v_max = 0.2;  // fraction of each coordinate's range
};

RunResult pso_optimize(const Objective& obj, std::int64_t budget, const PsoConfig& cfg, std::uint64_t seed,
                       bool log_points = false);

}  // namespace ctsopt
