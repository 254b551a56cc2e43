#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "ctsopt/core.hpp"
#include "ctsopt/random.hpp"
#include "ctsopt/surrogate.hpp"

namespace ctsopt {

using NodeId = std::size_t;

struct TreeConfig {
  double C = 1.4142135623730951;  // exploration constant
  double a = 0.075;  // window decay rate
  double b = 0.5;  // window at depth 0
  std::optional<int> max_depth;
  std::size_t rollouts_per_expansion = 4;
  /// A child whose subtree has not beaten its parent's own value is entered
  /// only once the parent has at least this many children; until then the
  /// parent is expanded again and gains a sibling. 0 always descends.
  std::size_t descend_patience = std::numeric_limits<std::size_t>::max();
};

struct TreeNode {
  Vec point;  // unit cube
  double value = 0.0;
  double reward_best = 0.0;
  std::int64_t visits = 0;
  int depth = 0;
  std::vector<NodeId> children;
  std::optional<NodeId> parent;
  double window_radius = 0.0;
  surrogate::NodeSurrogate sampler_state;
};

/// Minimization recast as reward maximization.
inline double reward_of(double value) { return -value; }

/// max-reward UCB; unvisited nodes score +infinity.
double ucb(const TreeNode& node, std::int64_t parent_visits, double C);

/// Depth-scaled sampling radius b * exp(-a * depth^2).
double window_scale(int depth, double a, double b);

/// Generates rollout candidates around a node.
class ProposalSampler {
 public:
  virtual ~ProposalSampler() = default;
  virtual Vec propose(const surrogate::NodeContext& ctx, surrogate::NodeSurrogate& state, RandomStream& rng) = 0;
  virtual const char* name() const = 0;
};

/// Plain volume-uniform hypersphere proposals of radius r_max.
class HypersphereSampler final : public ProposalSampler {
 public:
  Vec propose(const surrogate::NodeContext& ctx, surrogate::NodeSurrogate& state, RandomStream& rng) override;
  const char* name() const override { return "hypersphere"; }
};

/// Logistic directional sampler with its bootstrap schedule.
class LogisticSampler final : public ProposalSampler {
 public:
  explicit LogisticSampler(surrogate::SurrogateConfig cfg = {}) : cfg_(cfg) {}
  Vec propose(const surrogate::NodeContext& ctx, surrogate::NodeSurrogate& state, RandomStream& rng) override;
  const char* name() const override { return "logistic"; }
  const surrogate::SurrogateConfig& config() const { return cfg_; }

 private:
  surrogate::SurrogateConfig cfg_;
};

struct ExpandOutcome {
  NodeId child = 0;
  bool budget_exhausted = false;  // rollouts were cut short; the child is built from those that ran
};

class Tree {
 public:
  /// Root at an already evaluated point.
  Tree(Vec root_point, double root_value, TreeConfig cfg);

  const TreeConfig& config() const { return cfg_; }
  TreeConfig& config() { return cfg_; }
  const TreeNode& node(NodeId id) const { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }
  NodeId root() const { return 0; }
  NodeId best() const { return best_; }
  const TreeNode& best_node() const { return nodes_[best_]; }
  std::int64_t backpropagations() const { return backprops_; }

  /// Root-to-leaf path picked by UCB with exploration constant C.
  std::vector<NodeId> select(double C) const;
  std::vector<NodeId> select() const { return select(cfg_.C); }

  bool can_expand(NodeId id) const;

  /// Runs the rollouts around `id`, records them in its history and attaches
  /// the best one as a new child. Throws BudgetExhausted if not even one
  /// rollout could be evaluated.
  ExpandOutcome expand(NodeId id, ProposalSampler& sampler, Evaluator& eval, RandomStream& rng);

  void backpropagate(const std::vector<NodeId>& path, double reward);

  /// select, expand, backpropagate. Returns the new child, or nullopt when the
  /// selected node may not be expanded. Rethrows BudgetExhausted after the
  /// partial expansion has been backpropagated.
  std::optional<NodeId> iterate(double C, ProposalSampler& sampler, Evaluator& eval, RandomStream& rng);

  /// Test hook: attach a pre-evaluated child without running rollouts.
  NodeId add_child(NodeId parent, Vec point, double value);

  /// One line per node: id parent depth value visits.
  void dump(std::ostream& os) const;

 private:
  surrogate::NodeContext context_of(NodeId id) const;

  TreeConfig cfg_;
  std::vector<TreeNode> nodes_;
  NodeId best_ = 0;
  std::int64_t backprops_ = 0;
};

}  // namespace ctsopt
