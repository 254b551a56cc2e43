#include "ctsopt/orchestrator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "ctsopt/parallel.hpp"
#include "ctsopt/sampling.hpp"

namespace ctsopt {

std::unique_ptr<ProposalSampler> SamplerSpec::make() const {
  if (kind == SamplerKind::Hypersphere) return std::make_unique<HypersphereSampler>();
  return std::make_unique<LogisticSampler>(surrogate);
}

namespace {

// Stream ids carved out of a run's master stream.
constexpr std::uint64_t kLhsStream = 1;
constexpr std::uint64_t kDecayStream = 2;
constexpr std::uint64_t kNoiseStream = 3;
constexpr std::uint64_t kGlobalTreeBase = 1000;
constexpr std::uint64_t kLocalTreeBase = 1'000'000;

// Work unit for one tree: its quota-limited evaluator and private streams.
struct TreeJob {
  std::int64_t quota = 0;
  std::optional<RandomStream> noise;
  std::optional<Evaluator> eval;
  std::optional<Tree> tree;
  RandomStream rng{0};
};

std::vector<TreeJob> make_jobs(Evaluator& parent, std::size_t count, std::int64_t per_tree, const RandomStream& rng,
                               std::uint64_t base) {
  std::vector<TreeJob> jobs(count);
  for (std::size_t i = 0; i < count; ++i) {
    TreeJob& j = jobs[i];
    j.rng = rng.split(base + i);
    j.quota = parent.reserve(per_tree);
    if (parent.noise()) j.noise = parent.noise()->split(base + i);
    if (j.quota > 0) {
      j.eval.emplace(parent.objective(), j.quota, j.noise ? &*j.noise : nullptr, parent.log().log_points);
    }
  }
  return jobs;
}

void absorb_jobs(Evaluator& parent, std::vector<TreeJob>& jobs) {
  for (TreeJob& j : jobs) {
    if (j.eval) parent.absorb(*j.eval);
  }
}

bool target_reached(double value, double target, double tol) { return std::abs(value - target) <= tol; }

}  // namespace

std::vector<Candidate> run_global_batch(Evaluator& eval, const GlobalConfig& cfg, const SamplerSpec& sampler,
                                        RandomStream& rng, Parallelism par) {
  if (cfg.tree_count == 0) throw ContractViolation("global batch needs at least one tree");
  if (!(cfg.a_min > 0.0 && cfg.a_min <= cfg.a_max)) throw ContractViolation("global batch: bad decay range");
  const std::size_t dim = eval.objective().space.dim();

  RandomStream lhs_rng = rng.split(kLhsStream);
  RandomStream decay_rng = rng.split(kDecayStream);
  const std::vector<Vec> roots = lhs_sample(cfg.tree_count, dim, lhs_rng);

  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double a = decay_rng.uniform(cfg.a_min, cfg.a_max);
    double v;
    try {
      v = eval.evaluate_unit(roots[i]);
    } catch (const BudgetExhausted&) {
      break;
    }
    cands.push_back(Candidate{roots[i], v, a, cfg.b, i, false});
  }
  if (cands.empty() || cfg.iterations_per_tree == 0) return cands;

  const std::int64_t per_tree =
      static_cast<std::int64_t>(cfg.iterations_per_tree * cfg.rollouts_per_expansion);
  std::vector<TreeJob> jobs = make_jobs(eval, cands.size(), per_tree, rng, kGlobalTreeBase);

  parallel_for(jobs.size(), par.workers, [&](std::size_t i) {
    TreeJob& job = jobs[i];
    if (!job.eval) return;
    TreeConfig tc;
    tc.C = cfg.C_base;
    tc.a = cands[i].a;
    tc.b = cfg.b;
    tc.max_depth = cfg.max_depth;
    tc.rollouts_per_expansion = cfg.rollouts_per_expansion;
    job.tree.emplace(cands[i].point, cands[i].value, tc);
    Tree& tree = *job.tree;
    auto proposer = sampler.make();

    double C = cfg.C_base;
    double best = tree.best_node().value;
    std::size_t stagnant = 0;
    try {
      for (std::size_t it = 0; it < cfg.iterations_per_tree; ++it) {
        if (!tree.iterate(C, *proposer, *job.eval, job.rng)) break;
        if (tree.best_node().value < best) {
          best = tree.best_node().value;
          stagnant = 0;
          C = cfg.C_base;
        } else if (++stagnant >= cfg.stagnation_threshold) {
          C = cfg.C_large;
        }
      }
    } catch (const BudgetExhausted&) {
    }
  });
  absorb_jobs(eval, jobs);

  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (!jobs[i].tree) continue;
    const TreeNode& best = jobs[i].tree->best_node();
    cands[i].point = best.point;
    cands[i].value = best.value;
    cands[i].window = window_scale(best.depth, cands[i].a, cfg.b);
  }
  return cands;
}

std::vector<Candidate> select_top(std::vector<Candidate> candidates, std::size_t m) {
  if (m == 0) throw ContractViolation("select_top: m must be >= 1");
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    if (x.value != y.value) return x.value < y.value;
    return x.origin < y.origin;
  });
  if (candidates.size() > m) candidates.resize(m);
  return candidates;
}

double adapt_window(double b_prev, double f_prev, double f_curr, double f_target, double alpha, double epsilon,
                    double delta) {
  if (!(b_prev > 0.0)) throw ContractViolation("adapt_window: b_prev must be positive");
  if (f_curr < f_prev) {
    if (f_target > f_prev) throw ContractViolation("adapt_window: target above previous value");
    const double ratio = (f_prev - f_curr + epsilon) / (f_prev - f_target + epsilon);
    return b_prev * std::pow(ratio, alpha);
  }
  return b_prev * delta;
}

std::vector<Candidate> run_local_stage(std::vector<Candidate> seeds, const LocalConfig& cfg, double f_target,
                                       std::size_t iterations, Evaluator& eval, const SamplerSpec& sampler,
                                       RandomStream& rng, Parallelism par) {
  if (seeds.empty()) throw ContractViolation("local stage needs at least one seed");
  const std::int64_t per_tree = static_cast<std::int64_t>(iterations * cfg.rollouts_per_expansion);
  std::vector<TreeJob> jobs = make_jobs(eval, seeds.size(), per_tree, rng, kLocalTreeBase);

  parallel_for(jobs.size(), par.workers, [&](std::size_t i) {
    TreeJob& job = jobs[i];
    if (!job.eval || target_reached(seeds[i].value, f_target, cfg.target_tolerance)) return;
    TreeConfig tc;
    tc.C = cfg.C_local;
    tc.a = seeds[i].a;
    tc.b = seeds[i].window;
    tc.descend_patience = cfg.descend_patience;
    tc.rollouts_per_expansion = cfg.rollouts_per_expansion;
    job.tree.emplace(seeds[i].point, seeds[i].value, tc);
    auto proposer = sampler.make();
    try {
      for (std::size_t it = 0; it < iterations; ++it) {
        if (!job.tree->iterate(cfg.C_local, *proposer, *job.eval, job.rng)) break;
      }
    } catch (const BudgetExhausted&) {
    }
  });
  absorb_jobs(eval, jobs);

  for (std::size_t i = 0; i < seeds.size(); ++i) {
    Candidate& s = seeds[i];
    const double f_prev = s.value;
    // a seed sitting on the target is the ratio-1 fixed point
    if (target_reached(f_prev, f_target, cfg.target_tolerance)) {
      s.improved = false;
      continue;
    }
    double f_curr = f_prev;
    if (jobs[i].tree) {
      const TreeNode& best = jobs[i].tree->best_node();
      f_curr = best.value;
      if (f_curr < f_prev) s.point = best.point;
    }
    // a target the seed has already passed would make the ratio exceed 1
    const double target = std::min({f_target, f_curr, f_prev});
    s.window = std::max(adapt_window(s.window, f_prev, f_curr, target, cfg.alpha, cfg.epsilon, cfg.delta),
                        std::numeric_limits<double>::min());
    s.improved = f_curr < f_prev;
    s.value = f_curr;
  }
  return seeds;
}

std::vector<Candidate> prune(std::vector<Candidate> seeds) {
  if (seeds.empty()) throw ContractViolation("prune: no seeds");
  std::size_t best = 0;
  for (std::size_t i = 1; i < seeds.size(); ++i) {
    if (seeds[i].value < seeds[best].value ||
        (seeds[i].value == seeds[best].value && seeds[i].origin < seeds[best].origin)) {
      best = i;
    }
  }
  std::vector<Candidate> kept;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (seeds[i].improved || i == best) kept.push_back(std::move(seeds[i]));
  }
  return kept;
}

RunResult optimize(const Objective& obj, std::int64_t budget, const MctsConfig& cfg, std::uint64_t seed,
                   bool log_points) {
  if (budget < static_cast<std::int64_t>(cfg.global.tree_count)) {
    throw ContractViolation("optimize: budget must cover one evaluation per global tree");
  }
  RandomStream master(seed);
  RandomStream noise = master.split(kNoiseStream);
  Evaluator eval(obj, budget, obj.stochastic ? &noise : nullptr, log_points);
  RunResult result;

  GlobalConfig gcfg = cfg.global;
  if (gcfg.iterations_per_tree == 0) {
    const double share = gcfg.budget_fraction * static_cast<double>(budget) - static_cast<double>(gcfg.tree_count);
    const double per = static_cast<double>(gcfg.tree_count * gcfg.rollouts_per_expansion);
    gcfg.iterations_per_tree = share > 0.0 ? static_cast<std::size_t>(share / per) : 0;
  }
  std::vector<Candidate> cands = run_global_batch(eval, gcfg, cfg.sampler, master, cfg.parallel);
  result.census.push_back(cands.size());

  const std::optional<double> known = cfg.local.f_target ? cfg.local.f_target : obj.known_min;
  double root_best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < std::min(eval.log().values.size(), gcfg.tree_count); ++i) {
    root_best = std::min(root_best, eval.log().values[i]);
  }

  std::vector<Candidate> seeds = select_top(std::move(cands), std::max<std::size_t>(cfg.local.seed_count, 1));
  const LocalConfig& lcfg = cfg.local;
  for (std::size_t stage = 0; stage < lcfg.stages && !seeds.empty(); ++stage) {
    const std::int64_t remaining = eval.remaining();
    if (remaining <= 0) break;
    const double best = eval.best_value();
    double target;
    if (known) {
      target = *known;
      if (target_reached(best, target, lcfg.target_tolerance)) break;
    } else {
      target = best - 0.1 * std::max(0.0, root_best - best);
    }
    std::size_t iters = lcfg.iterations_per_stage;
    if (iters == 0) {
      const std::size_t stages_left = lcfg.stages - stage;
      const std::size_t per_iter = seeds.size() * lcfg.rollouts_per_expansion;
      const auto rem = static_cast<std::size_t>(remaining);
      // the last stage rounds up so no evaluation is left over
      iters = stages_left == 1 ? (rem + per_iter - 1) / per_iter : rem / (stages_left * per_iter);
      iters = std::max<std::size_t>(iters, 1);
    }
    RandomStream stage_rng = master.split(kLocalTreeBase + stage);
    seeds = run_local_stage(std::move(seeds), lcfg, target, iters, eval, cfg.sampler, stage_rng, cfg.parallel);
    result.census.push_back(seeds.size());
    seeds = prune(std::move(seeds));
  }

  RunResult base = make_result(eval);
  base.census = std::move(result.census);
  return base;
}

}  // namespace ctsopt
