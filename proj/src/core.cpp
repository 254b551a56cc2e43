#include "ctsopt/core.hpp"

#include <algorithm>
#include <limits>

#include "ctsopt/random.hpp"

namespace ctsopt {

SearchSpace::SearchSpace(Vec lower, Vec upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw ContractViolation("search space needs dim >= 1");
  if (lower_.size() != upper_.size()) throw ContractViolation("bound vectors differ in length");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) throw ContractViolation("lower bound must be < upper bound");
  }
}

SearchSpace SearchSpace::uniform(std::size_t dim, double lo, double hi) {
  return SearchSpace(Vec(dim, lo), Vec(dim, hi));
}

Vec normalize(std::span<const double> p, const SearchSpace& s) {
  if (p.size() != s.dim()) throw ContractViolation("normalize: dimension mismatch");
  Vec v(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    v[i] = (p[i] - s.lower()[i]) / (s.upper()[i] - s.lower()[i]);
  }
  return v;
}

Vec denormalize(std::span<const double> v, const SearchSpace& s) {
  if (v.size() != s.dim()) throw ContractViolation("denormalize: dimension mismatch");
  Vec p(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0 && v[i] <= 1.0)) throw ContractViolation("denormalize: component outside [0,1]");
    const double lo = s.lower()[i], hi = s.upper()[i];
    // endpoints map exactly onto the bounds
    p[i] = v[i] == 1.0 ? hi : lo + v[i] * (hi - lo);
  }
  return p;
}

Vec clamp_unit(std::span<const double> v) {
  Vec out(v.begin(), v.end());
  clamp_unit_inplace(out);
  return out;
}

void clamp_unit_inplace(std::span<double> v) {
  for (double& x : v) x = std::clamp(x, 0.0, 1.0);
}

double Objective::evaluate(std::span<const double> p, RandomStream* noise) const {
  if (p.size() != space.dim()) throw ContractViolation(name + ": dimension mismatch");
  if (stochastic && noise == nullptr) throw ContractViolation(name + ": stochastic objective needs a noise stream");
  return fn(p, noise);
}

double evaluate_counted(const Objective& obj, std::span<const double> p, Budget& budget,
                        RandomStream* noise) {
  if (budget.exhausted()) throw BudgetExhausted();
  const double v = obj.evaluate(p, noise);
  ++budget.used;
  return v;
}

void EvalLog::append(const EvalLog& other) {
  values.insert(values.end(), other.values.begin(), other.values.end());
  if (log_points) points.insert(points.end(), other.points.begin(), other.points.end());
}

Evaluator::Evaluator(const Objective& obj, std::int64_t max_evals, RandomStream* noise, bool log_points)
    : obj_(&obj),
      budget_(max_evals),
      noise_(noise),
      best_value_(std::numeric_limits<double>::infinity()) {
  log_.log_points = log_points;
}

double Evaluator::evaluate_unit(std::span<const double> v) {
  if (remaining() <= 0) throw BudgetExhausted();
  const Vec p = denormalize(v, obj_->space);
  const double value = evaluate_counted(*obj_, p, budget_, noise_);
  log_.values.push_back(value);
  if (log_.log_points) log_.points.emplace_back(v.begin(), v.end());
  if (value < best_value_ || best_unit_.empty()) {
    best_value_ = value;
    best_unit_.assign(v.begin(), v.end());
  }
  return value;
}

std::int64_t Evaluator::reserve(std::int64_t count) {
  const std::int64_t granted = std::clamp<std::int64_t>(count, 0, remaining());
  reserved_ += granted;
  return granted;
}

void Evaluator::absorb(const Evaluator& child) {
  reserved_ -= child.budget_.max_evals;
  if (reserved_ < 0) throw ContractViolation("absorb: child quota was not reserved here");
  budget_.used += child.budget_.used;
  log_.append(child.log_);
  if (child.best_value_ < best_value_ || (best_unit_.empty() && !child.best_unit_.empty())) {
    best_value_ = child.best_value_;
    best_unit_ = child.best_unit_;
  }
}

RunResult make_result(const Evaluator& ev) {
  RunResult r;
  r.evals_used = ev.budget().used;
  r.best_value = ev.best_value();
  if (!ev.best_unit().empty()) r.best_point = denormalize(ev.best_unit(), ev.objective().space);
  r.trace.reserve(ev.log().values.size());
  double best = std::numeric_limits<double>::infinity();
  for (double v : ev.log().values) {
    best = std::min(best, v);
    r.trace.push_back(best);
  }
  if (ev.log().log_points) {
    r.sampled_points = ev.log().points;
    r.sampled_values = ev.log().values;
  }
  return r;
}

}  // namespace ctsopt
