#include "ctsopt/baselines.hpp"

#include <algorithm>
#include <limits>

#include "ctsopt/random.hpp"

namespace ctsopt {

namespace {
constexpr std::uint64_t kNoiseStream = 3;
constexpr std::uint64_t kSearchStream = 4;
}  // namespace

RunResult random_search(const Objective& obj, std::int64_t budget, std::uint64_t seed, bool log_points) {
  RandomStream master(seed);
  RandomStream noise = master.split(kNoiseStream);
  RandomStream rng = master.split(kSearchStream);
  Evaluator eval(obj, budget, obj.stochastic ? &noise : nullptr, log_points);
  Vec x(obj.space.dim());
  while (eval.remaining() > 0) {
    for (double& c : x) c = rng.uniform();
    eval.evaluate_unit(x);
  }
  return make_result(eval);
}

RunResult pso_optimize(const Objective& obj, std::int64_t budget, const PsoConfig& cfg, std::uint64_t seed,
                       bool log_points) {
  if (cfg.swarm_size < 2) throw ContractViolation("pso: swarm_size must be >= 2");
  if (budget < static_cast<std::int64_t>(cfg.swarm_size)) throw ContractViolation("pso: budget below swarm size");
  RandomStream master(seed);
  RandomStream noise = master.split(kNoiseStream);
  RandomStream rng = master.split(kSearchStream);
  Evaluator eval(obj, budget, obj.stochastic ? &noise : nullptr, log_points);

  const std::size_t n = cfg.swarm_size, d = obj.space.dim();
  std::vector<Vec> x(n, Vec(d)), v(n, Vec(d)), pbest(n);
  std::vector<double> pbest_val(n);
  Vec gbest;
  double gbest_val = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      x[i][j] = rng.uniform();
      v[i][j] = rng.uniform(-cfg.v_max, cfg.v_max);
    }
    pbest[i] = x[i];
    pbest_val[i] = eval.evaluate_unit(x[i]);
    if (pbest_val[i] < gbest_val) {
      gbest_val = pbest_val[i];
      gbest = x[i];
    }
  }

  while (eval.remaining() > 0) {
    for (std::size_t i = 0; i < n && eval.remaining() > 0; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const double r1 = rng.uniform(), r2 = rng.uniform();
        double vj = cfg.w * v[i][j] + cfg.c1 * r1 * (pbest[i][j] - x[i][j]) + cfg.c2 * r2 * (gbest[j] - x[i][j]);
        v[i][j] = std::clamp(vj, -cfg.v_max, cfg.v_max);
        x[i][j] = std::clamp(x[i][j] + v[i][j], 0.0, 1.0);
      }
      const double f = eval.evaluate_unit(x[i]);
      if (f < pbest_val[i]) {
        pbest_val[i] = f;
        pbest[i] = x[i];
        if (f < gbest_val) {
          gbest_val = f;
          gbest = x[i];
        }
      }
    }
  }
  return make_result(eval);
}

}  // namespace ctsopt
