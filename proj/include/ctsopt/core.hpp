#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctsopt {

class RandomStream;

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised by counted evaluation once the evaluation budget is spent.
/// Optimizers treat it as normal termination.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted() : std::runtime_error("evaluation budget exhausted") {}
};

using Vec = std::vector<double>;

/// Box-bounded continuous domain. Optimizer internals work in the unit cube
/// and map back through normalize/denormalize at the objective boundary.
class SearchSpace {
 public:
  SearchSpace(Vec lower, Vec upper);
  /// Same [lo, hi] interval on every coordinate.
  static SearchSpace uniform(std::size_t dim, double lo, double hi);

  std::size_t dim() const { return lower_.size(); }
  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }

 private:
  Vec lower_;
  Vec upper_;
};

Vec normalize(std::span<const double> p, const SearchSpace& s);
Vec denormalize(std::span<const double> v, const SearchSpace& s);
Vec clamp_unit(std::span<const double> v);
void clamp_unit_inplace(std::span<double> v);

/// Pure objective. Stochastic objectives draw their noise from the stream
/// passed to evaluate(); deterministic ones ignore it.
struct Objective {
  using Fn = std::function<double(std::span<const double>, RandomStream*)>;

  std::string name;
  SearchSpace space;
  std::optional<double> known_min;
  bool stochastic = false;
  Fn fn;

  double evaluate(std::span<const double> p, RandomStream* noise = nullptr) const;
};

struct Budget {
  std::int64_t max_evals = 0;
  std::int64_t used = 0;

  explicit Budget(std::int64_t max) : max_evals(max) {
    if (max <= 0) throw ContractViolation("budget must be positive");
  }
  std::int64_t remaining() const { return max_evals - used; }
  bool exhausted() const { return used >= max_evals; }
};

/// Evaluates obj at raw point p and charges one unit to budget.
double evaluate_counted(const Objective& obj, std::span<const double> p, Budget& budget,
                        RandomStream* noise = nullptr);

/// Sequence of evaluations issued by one search process, in issue order.
struct EvalLog {
  std::vector<double> values;
  std::vector<Vec> points;  // unit-cube coordinates, filled only when logging points
  bool log_points = false;

  std::size_t size() const { return values.size(); }
  void append(const EvalLog& other);
};

/// Counted evaluation in unit-cube coordinates with best-so-far tracking.
/// One Evaluator is owned by exactly one search thread.
class Evaluator {
 public:
  Evaluator(const Objective& obj, std::int64_t max_evals, RandomStream* noise = nullptr,
            bool log_points = false);

  /// Denormalizes v, evaluates, records. Throws BudgetExhausted when spent.
  double evaluate_unit(std::span<const double> v);

  const Objective& objective() const { return *obj_; }
  const Budget& budget() const { return budget_; }
  std::int64_t remaining() const { return budget_.remaining() - reserved_; }
  const EvalLog& log() const { return log_; }
  RandomStream* noise() const { return noise_; }
  double best_value() const { return best_value_; }
  const Vec& best_unit() const { return best_unit_; }

  /// Appends another evaluator's log as if its calls had been issued here.
  /// Budgets must have been carved out of this one beforehand (see reserve).
  void absorb(const Evaluator& child);
  /// Moves `count` evaluations from this budget into a child quota.
  std::int64_t reserve(std::int64_t count);

 private:
  const Objective* obj_;
  Budget budget_;
  RandomStream* noise_;
  std::int64_t reserved_ = 0;
  EvalLog log_;
  double best_value_;
  Vec best_unit_;
};

/// Outcome of one optimizer run. trace[i] is the best value after i+1 evaluations.
struct RunResult {
  Vec best_point;  // raw problem units
  double best_value = 0.0;
  std::int64_t evals_used = 0;
  std::vector<double> trace;
  std::vector<Vec> sampled_points;  // unit cube; empty unless point logging was on
  std::vector<double> sampled_values;
  std::vector<std::size_t> census;  // live trees per stage (tree-based optimizers)
};

RunResult make_result(const Evaluator& ev);

}  // namespace ctsopt
