#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ctsopt/core.hpp"
#include "ctsopt/random.hpp"
#include "ctsopt/surrogate.hpp"
#include "ctsopt/tree.hpp"

namespace ctsopt {

enum class SamplerKind { Logistic, Hypersphere };

struct SamplerSpec {
  SamplerKind kind = SamplerKind::Logistic;
  surrogate::SurrogateConfig surrogate;

  std::unique_ptr<ProposalSampler> make() const;
};

/// Exploration phase: a batch of LHS-rooted trees with capped depth.
struct GlobalConfig {
  std::size_t tree_count = 20;
  double a_min = 0.05;
  double a_max = 0.1;
  double b = 0.5;
  double C_base = 1.4142135623730951;
  double C_large = 1.4142135623730951e3;
  int max_depth = 10;
  std::size_t stagnation_threshold = 25;
  std::size_t iterations_per_tree = 0;  // 0 -> derived from budget_fraction
  double budget_fraction = 0.3;
  std::size_t rollouts_per_expansion = 4;
};

/// Exploitation phase: staged trees seeded from the best global candidates.
struct LocalConfig {
  std::size_t seed_count = 5;  // m
  std::size_t stages = 5;
  std::size_t iterations_per_stage = 0;  // 0 -> split the remaining budget evenly
  double C_local = 1e-8;
  std::size_t descend_patience = 4;  // see TreeConfig
  double alpha = 1.0;
  double epsilon = 1e-9;
  double delta = 0.7;
  std::optional<double> f_target;  // defaults to the objective's known minimum
  double target_tolerance = 1e-12;
  std::size_t rollouts_per_expansion = 4;
};

struct Candidate {
  Vec point;  // unit cube
  double value = 0.0;
  double a = 0.0;
  double window = 0.0;  // b_ref for the local phase
  std::size_t origin = 0;  // index of the global tree it came from
  bool improved = false;  // set by the last local stage
};

/// Runs trees concurrently on up to `workers` threads. Output is identical
/// for any worker count.
struct Parallelism {
  std::size_t workers = 1;
};

std::vector<Candidate> run_global_batch(Evaluator& eval, const GlobalConfig& cfg, const SamplerSpec& sampler,
                                        RandomStream& rng, Parallelism par = {});

/// The m lowest-valued candidates, ordered by (value, origin).
std::vector<Candidate> select_top(std::vector<Candidate> candidates, std::size_t m);

/// Window update between local stages: shrink-by-improvement-ratio when the
/// stage improved (strictly), geometric decay by delta otherwise.
double adapt_window(double b_prev, double f_prev, double f_curr, double f_target, double alpha, double epsilon,
                    double delta);

std::vector<Candidate> run_local_stage(std::vector<Candidate> seeds, const LocalConfig& cfg, double f_target,
                                       std::size_t iterations, Evaluator& eval, const SamplerSpec& sampler,
                                       RandomStream& rng, Parallelism par = {});

/// Keeps seeds that improved in the last stage, plus the best seed always.
std::vector<Candidate> prune(std::vector<Candidate> seeds);

struct MctsConfig {
  GlobalConfig global;
  LocalConfig local;
  SamplerSpec sampler;
  Parallelism parallel;
};

RunResult optimize(const Objective& obj, std::int64_t budget, const MctsConfig& cfg, std::uint64_t seed,
                   bool log_points = false);

}  // namespace ctsopt
