#include "ctsopt/tree.hpp"

#include <cmath>
#include <limits>

#include "ctsopt/sampling.hpp"

namespace ctsopt {

double ucb(const TreeNode& node, std::int64_t parent_visits, double C) {
  if (node.visits == 0) return std::numeric_limits<double>::infinity();
  const double pv = static_cast<double>(std::max<std::int64_t>(parent_visits, 1));
  return node.reward_best + C * std::sqrt(std::log(pv) / static_cast<double>(node.visits));
}

double window_scale(int depth, double a, double b) {
  if (depth < 0) throw ContractViolation("window_scale: negative depth");
  const double dd = static_cast<double>(depth);
  return b * std::exp(-a * dd * dd);
}

Vec HypersphereSampler::propose(const surrogate::NodeContext& ctx, surrogate::NodeSurrogate&, RandomStream& rng) {
  return hypersphere_sample(ctx.point, HypersphereConfig{ctx.r_max, SphereMode::Volume}, rng);
}

Vec LogisticSampler::propose(const surrogate::NodeContext& ctx, surrogate::NodeSurrogate& state, RandomStream& rng) {
  return state.propose(ctx, cfg_, rng);
}

Tree::Tree(Vec root_point, double root_value, TreeConfig cfg) : cfg_(cfg) {
  if (!(cfg_.b > 0.0 && cfg_.b <= 0.5)) throw ContractViolation("tree: b must lie in (0, 0.5]");
  if (!(cfg_.a > 0.0)) throw ContractViolation("tree: a must be positive");
  if (cfg_.rollouts_per_expansion == 0) throw ContractViolation("tree: need at least one rollout per expansion");
  TreeNode root;
  root.point = std::move(root_point);
  root.value = root_value;
  root.reward_best = reward_of(root_value);
  root.window_radius = window_scale(0, cfg_.a, cfg_.b);
  nodes_.push_back(std::move(root));
}

bool Tree::can_expand(NodeId id) const {
  const TreeNode& n = nodes_.at(id);
  // below this radius proposals no longer move in double precision
  return (!cfg_.max_depth || n.depth < *cfg_.max_depth) && n.window_radius >= 1e-12;
}

std::vector<NodeId> Tree::select(double C) const {
  std::vector<NodeId> path{root()};
  for (;;) {
    const TreeNode& cur = nodes_[path.back()];
    if (cur.children.empty()) break;
    NodeId chosen = cur.children.front();
    double best_score = -std::numeric_limits<double>::infinity();
    for (NodeId c : cur.children) {
      const double s = ucb(nodes_[c], cur.visits, C);
      if (s > best_score) {  // strict: earliest child wins ties
        best_score = s;
        chosen = c;
      }
    }
    const TreeNode& next = nodes_[chosen];
    if (!can_expand(chosen)) break;
    const bool improving = next.visits == 0 || next.reward_best > reward_of(cur.value);
    if (!improving && cur.children.size() < cfg_.descend_patience) break;
    path.push_back(chosen);
  }
  return path;
}

surrogate::NodeContext Tree::context_of(NodeId id) const {
  const TreeNode& n = nodes_[id];
  surrogate::NodeContext ctx;
  ctx.point = n.point;
  ctx.value = n.value;
  if (n.parent) ctx.parent = std::span<const double>(nodes_[*n.parent].point);
  ctx.r_max = n.window_radius;
  return ctx;
}

NodeId Tree::add_child(NodeId parent, Vec point, double value) {
  TreeNode child;
  child.point = std::move(point);
  child.value = value;
  child.reward_best = reward_of(value);
  child.depth = nodes_.at(parent).depth + 1;
  child.parent = parent;
  child.window_radius = window_scale(child.depth, cfg_.a, cfg_.b);
  const NodeId id = nodes_.size();
  nodes_.push_back(std::move(child));
  nodes_[parent].children.push_back(id);
  if (value < nodes_[best_].value) best_ = id;
  return id;
}

ExpandOutcome Tree::expand(NodeId id, ProposalSampler& sampler, Evaluator& eval, RandomStream& rng) {
  if (!can_expand(id)) throw ContractViolation("expand: node is at the maximum depth");
  ExpandOutcome out;
  Vec best_point;
  double best_value = std::numeric_limits<double>::infinity();
  // nodes_ may reallocate in add_child only, so the context stays valid here
  const surrogate::NodeContext ctx = context_of(id);
  for (std::size_t j = 0; j < cfg_.rollouts_per_expansion; ++j) {
    Vec x = sampler.propose(ctx, nodes_[id].sampler_state, rng);
    double v;
    try {
      v = eval.evaluate_unit(x);
    } catch (const BudgetExhausted&) {
      if (best_point.empty()) throw;
      out.budget_exhausted = true;
      break;
    }
    nodes_[id].sampler_state.record(ctx, x, v);
    if (v < best_value || best_point.empty()) {
      best_value = v;
      best_point = std::move(x);
    }
  }
  out.child = add_child(id, std::move(best_point), best_value);
  return out;
}

void Tree::backpropagate(const std::vector<NodeId>& path, double reward) {
  for (NodeId id : path) {
    TreeNode& n = nodes_.at(id);
    ++n.visits;
    n.reward_best = std::max(n.reward_best, reward);
  }
  ++backprops_;
}

std::optional<NodeId> Tree::iterate(double C, ProposalSampler& sampler, Evaluator& eval, RandomStream& rng) {
  std::vector<NodeId> path = select(C);
  if (!can_expand(path.back())) return std::nullopt;
  const ExpandOutcome out = expand(path.back(), sampler, eval, rng);
  path.push_back(out.child);
  backpropagate(path, reward_of(nodes_[out.child].value));
  if (out.budget_exhausted) throw BudgetExhausted();
  return out.child;
}

void Tree::dump(std::ostream& os) const {
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    const TreeNode& n = nodes_[id];
    os << id << ' ' << (n.parent ? static_cast<long long>(*n.parent) : -1LL) << ' ' << n.depth << ' ' << n.value
       << ' ' << n.visits << '\n';
  }
}

}  // namespace ctsopt
