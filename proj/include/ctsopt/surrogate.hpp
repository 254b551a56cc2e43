#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ctsopt/core.hpp"
#include "ctsopt/random.hpp"

namespace ctsopt::surrogate {

/// One rollout taken around a node: displacement from the node, its length,
/// the objective outcome and whether it beat the node's own value.
struct TrialEntry {
  Vec delta;
  double r = 0.0;
  double outcome = 0.0;
  bool success = false;
};

class TrialHistory {
 public:
  void add(std::span<const double> trial, std::span<const double> node, double outcome, double node_value);
  const std::vector<TrialEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t successes() const { return successes_; }
  bool has_both_labels() const { return successes_ > 0 && successes_ < entries_.size(); }

 private:
  std::vector<TrialEntry> entries_;
  std::size_t successes_ = 0;
};

struct TrainConfig {
  double step = 0.1;
  int iterations = 200;
  double l2 = 1e-3;
};

/// sigma(w . x + b)
struct LogisticModel {
  Vec weights;
  double bias = 0.0;

  double logit(std::span<const double> x) const;
  double predict(std::span<const double> x) const;
};

struct TrainResult {
  LogisticModel model;
  bool informative = false;  // false when the labels are single-class
  std::vector<double> loss_history;
};

/// Mean negative log-likelihood plus (l2/2)|w|^2 (bias unregularized).
double logistic_loss(const LogisticModel& m, const std::vector<Vec>& x, const std::vector<int>& y, double l2);
/// Gradient of logistic_loss; weights first, bias last.
Vec logistic_gradient(const LogisticModel& m, const std::vector<Vec>& x, const std::vector<int>& y, double l2);

/// Full-batch gradient descent from the zero model. The step is capped at
/// 1/L for the loss's gradient Lipschitz bound so the loss never increases.
TrainResult train_logistic(const std::vector<Vec>& x, const std::vector<int>& y, const TrainConfig& cfg);

double sigmoid(double z);

/// Componentwise sign in {-1, 0, 1}.
Vec direction_features(std::span<const double> delta);

/// exp(-((r - c_k) / width)^2) for every center.
Vec rbf_features(double r, std::span<const double> centers, double width = 1.0);

/// K centers evenly spaced on (0, r_max].
Vec rbf_centers(std::size_t count, double r_max);

struct DistanceModel {
  LogisticModel model;
  Vec centers;
  double width = 1.0;

  double probability(double r) const;
};

/// Stochastic hill climb over {-1,+1}^d starting from sign(weights), zeros
/// broken to +1. A flip is kept only if the predicted success probability
/// strictly increases.
Vec optimize_direction(const LogisticModel& dir, RandomStream& rng, std::size_t iters);

/// Tabulated CDF(r) = integral_0^r P(success | rho) d rho (trapezoid rule).
struct StepCdf {
  Vec r;
  Vec cdf;
  double total() const { return cdf.back(); }
  double at(double radius) const;  // linear interpolation
};

StepCdf distance_cdf(const DistanceModel& m, double r_max, std::size_t points = 256);

/// Inverse-transform draw from the tabulated CDF; uniform on (0, r_max] when
/// the CDF carries no mass.
double sample_step_size(const StepCdf& cdf, RandomStream& rng);

struct SurrogateConfig {
  std::size_t bootstrap_count = 8;  // k
  std::size_t retrain_period = 5;  // p
  std::size_t rbf_count = 8;  // K
  std::size_t hill_climb_iters = 0;  // 0 -> 10 * dim
  std::size_t cdf_points = 256;
  std::size_t history_window = 64;  // most recent records used in training; 0 -> all
  TrainConfig train;
};

/// Where a node sits and how far it may reach.
struct NodeContext {
  std::span<const double> point;
  double value = 0.0;
  std::optional<std::span<const double>> parent;
  double r_max = 0.5;
};

/// Proposal number `index` of the bootstrap schedule: 0 parent momentum,
/// 1 window center, 2 a diagonal corner of the window, then isotropic draws.
/// Everything lands inside the window box clamped to the unit cube.
Vec bootstrap_proposal(std::size_t index, const NodeContext& ctx, RandomStream& rng);
std::vector<Vec> bootstrap_proposals(const NodeContext& ctx, std::size_t k, RandomStream& rng);

/// Per-node logistic sampler state: the trial history plus the two models.
class NodeSurrogate {
 public:
  Vec propose(const NodeContext& ctx, const SurrogateConfig& cfg, RandomStream& rng);
  void record(const NodeContext& ctx, std::span<const double> trial, double outcome);

  const TrialHistory& history() const { return history_; }
  bool models_ready() const { return trained_ && informative_; }
  std::size_t train_count() const { return train_count_; }
  const LogisticModel& direction_model() const { return direction_; }
  const DistanceModel& distance_model() const { return distance_; }

 private:
  void retrain(const NodeContext& ctx, const SurrogateConfig& cfg);

  TrialHistory history_;
  LogisticModel direction_;
  DistanceModel distance_;
  std::optional<StepCdf> cdf_;
  bool trained_ = false;
  bool informative_ = false;
  std::size_t trained_at_ = 0;
  std::size_t train_count_ = 0;
};

}  // namespace ctsopt::surrogate
