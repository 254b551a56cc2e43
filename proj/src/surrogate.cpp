#include "ctsopt/surrogate.hpp"

#include <algorithm>
#include <cmath>

#include "ctsopt/sampling.hpp"

namespace ctsopt::surrogate {

void TrialHistory::add(std::span<const double> trial, std::span<const double> node, double outcome,
                       double node_value) {
  if (trial.size() != node.size()) throw ContractViolation("history: dimension mismatch");
  TrialEntry e;
  e.delta.resize(trial.size());
  double r2 = 0.0;
  for (std::size_t i = 0; i < trial.size(); ++i) {
    e.delta[i] = trial[i] - node[i];
    r2 += e.delta[i] * e.delta[i];
  }
  e.r = std::sqrt(r2);
  e.outcome = outcome;
  e.success = outcome < node_value;
  successes_ += e.success ? 1 : 0;
  entries_.push_back(std::move(e));
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {
// log(1 + exp(z)) without overflow
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }
}  // namespace

double LogisticModel::logit(std::span<const double> x) const {
  double z = bias;
  for (std::size_t i = 0; i < weights.size(); ++i) z += weights[i] * x[i];
  return z;
}

double LogisticModel::predict(std::span<const double> x) const { return sigmoid(logit(x)); }

double logistic_loss(const LogisticModel& m, const std::vector<Vec>& x, const std::vector<int>& y, double l2) {
  double loss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = m.logit(x[i]);
    loss += softplus(z) - (y[i] ? z : 0.0);
  }
  loss /= static_cast<double>(x.size());
  double reg = 0.0;
  for (double w : m.weights) reg += w * w;
  return loss + 0.5 * l2 * reg;
}

Vec logistic_gradient(const LogisticModel& m, const std::vector<Vec>& x, const std::vector<int>& y, double l2) {
  const std::size_t d = m.weights.size();
  Vec g(d + 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double err = sigmoid(m.logit(x[i])) - static_cast<double>(y[i]);
    for (std::size_t j = 0; j < d; ++j) g[j] += err * x[i][j];
    g[d] += err;
  }
  const double inv_n = 1.0 / static_cast<double>(x.size());
  for (double& gj : g) gj *= inv_n;
  for (std::size_t j = 0; j < d; ++j) g[j] += l2 * m.weights[j];
  return g;
}

namespace {
// Loss and gradient in one pass; both terms share exp(-|z|).
double loss_and_gradient(const LogisticModel& m, const std::vector<Vec>& x, const std::vector<int>& y, double l2,
                         Vec& g) {
  const std::size_t d = m.weights.size();
  g.assign(d + 1, 0.0);
  double loss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = m.logit(x[i]);
    const double e = std::exp(-std::abs(z));
    const double p = z >= 0.0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
    loss += std::max(z, 0.0) + std::log1p(e) - (y[i] ? z : 0.0);
    const double err = p - static_cast<double>(y[i]);
    for (std::size_t j = 0; j < d; ++j) g[j] += err * x[i][j];
    g[d] += err;
  }
  const double inv_n = 1.0 / static_cast<double>(x.size());
  for (double& gj : g) gj *= inv_n;
  double reg = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    g[j] += l2 * m.weights[j];
    reg += m.weights[j] * m.weights[j];
  }
  return loss * inv_n + 0.5 * l2 * reg;
}
}  // namespace

TrainResult train_logistic(const std::vector<Vec>& x, const std::vector<int>& y, const TrainConfig& cfg) {
  if (x.empty() || x.size() != y.size()) throw ContractViolation("train_logistic: need matching non-empty data");
  const std::size_t d = x.front().size();
  TrainResult out;
  out.model.weights.assign(d, 0.0);
  const auto positives = std::count(y.begin(), y.end(), 1);
  out.informative = positives > 0 && static_cast<std::size_t>(positives) < y.size();
  if (!out.informative) return out;

  double max_norm2 = 0.0;
  for (const Vec& xi : x) {
    double n2 = 1.0;
    for (double v : xi) n2 += v * v;
    max_norm2 = std::max(max_norm2, n2);
  }
  const double lipschitz = 0.25 * max_norm2 + cfg.l2;
  const double step = std::min(cfg.step, 1.0 / lipschitz);

  out.loss_history.reserve(static_cast<std::size_t>(cfg.iterations) + 1);
  Vec g;
  for (int it = 0; it < cfg.iterations; ++it) {
    out.loss_history.push_back(loss_and_gradient(out.model, x, y, cfg.l2, g));
    for (std::size_t j = 0; j < d; ++j) out.model.weights[j] -= step * g[j];
    out.model.bias -= step * g[d];
  }
  out.loss_history.push_back(logistic_loss(out.model, x, y, cfg.l2));
  return out;
}

Vec direction_features(std::span<const double> delta) {
  Vec u(delta.size());
  for (std::size_t i = 0; i < delta.size(); ++i) u[i] = delta[i] > 0.0 ? 1.0 : (delta[i] < 0.0 ? -1.0 : 0.0);
  return u;
}

Vec rbf_features(double r, std::span<const double> centers, double width) {
  if (r < 0.0) throw ContractViolation("rbf_features: negative radius");
  Vec phi(centers.size());
  for (std::size_t k = 0; k < centers.size(); ++k) {
    const double t = (r - centers[k]) / width;
    phi[k] = std::exp(-t * t);
  }
  return phi;
}

Vec rbf_centers(std::size_t count, double r_max) {
  if (count < 3) throw ContractViolation("rbf_centers: need at least 3 centers");
  Vec c(count);
  for (std::size_t k = 0; k < count; ++k) c[k] = r_max * static_cast<double>(k + 1) / static_cast<double>(count);
  return c;
}

double DistanceModel::probability(double r) const { return model.predict(rbf_features(r, centers, width)); }

Vec optimize_direction(const LogisticModel& dir, RandomStream& rng, std::size_t iters) {
  const std::size_t d = dir.weights.size();
  Vec u(d);
  double z = dir.bias;
  for (std::size_t i = 0; i < d; ++i) {
    u[i] = dir.weights[i] < 0.0 ? -1.0 : 1.0;
    z += dir.weights[i] * u[i];
  }
  if (d == 0) return u;
  for (std::size_t it = 0; it < iters; ++it) {
    const std::size_t i = static_cast<std::size_t>(rng.below(d));
    // sigma is monotone, so comparing logits is comparing probabilities
    const double z_flip = z - 2.0 * dir.weights[i] * u[i];
    if (sigmoid(z_flip) > sigmoid(z)) {
      u[i] = -u[i];
      z = z_flip;
    }
  }
  return u;
}

double StepCdf::at(double radius) const {
  if (radius <= r.front()) return 0.0;
  if (radius >= r.back()) return cdf.back();
  const auto it = std::upper_bound(r.begin(), r.end(), radius);
  const std::size_t j = static_cast<std::size_t>(it - r.begin()) - 1;
  const double t = (radius - r[j]) / (r[j + 1] - r[j]);
  return cdf[j] + t * (cdf[j + 1] - cdf[j]);
}

StepCdf distance_cdf(const DistanceModel& m, double r_max, std::size_t points) {
  if (points < 2) throw ContractViolation("distance_cdf: need at least 2 grid points");
  if (!(r_max > 0.0)) throw ContractViolation("distance_cdf: r_max must be positive");
  StepCdf out;
  out.r.resize(points);
  out.cdf.resize(points);
  const double h = r_max / static_cast<double>(points - 1);
  double prev = m.probability(0.0);
  out.r[0] = 0.0;
  out.cdf[0] = 0.0;
  for (std::size_t j = 1; j < points; ++j) {
    out.r[j] = j + 1 == points ? r_max : h * static_cast<double>(j);
    const double cur = m.probability(out.r[j]);
    out.cdf[j] = out.cdf[j - 1] + 0.5 * (prev + cur) * (out.r[j] - out.r[j - 1]);
    prev = cur;
  }
  return out;
}

double sample_step_size(const StepCdf& cdf, RandomStream& rng) {
  const double r_max = cdf.r.back();
  const double total = cdf.total();
  if (!(total > 1e-300 * r_max) || !std::isfinite(total)) return r_max * rng.uniform_open();
  const double tau = total * rng.uniform_open();
  const auto it = std::lower_bound(cdf.cdf.begin(), cdf.cdf.end(), tau);
  std::size_t j = static_cast<std::size_t>(it - cdf.cdf.begin());
  if (j == 0) j = 1;
  if (j >= cdf.cdf.size()) return r_max;
  const double lo = cdf.cdf[j - 1], hi = cdf.cdf[j];
  const double t = hi > lo ? (tau - lo) / (hi - lo) : 1.0;
  const double r = cdf.r[j - 1] + t * (cdf.r[j] - cdf.r[j - 1]);
  return std::clamp(r, std::nextafter(0.0, 1.0), r_max);
}

namespace {

struct Window {
  Vec lo, hi;
};

Window window_of(const NodeContext& ctx) {
  Window w{Vec(ctx.point.size()), Vec(ctx.point.size())};
  for (std::size_t i = 0; i < ctx.point.size(); ++i) {
    w.lo[i] = std::max(0.0, ctx.point[i] - ctx.r_max);
    w.hi[i] = std::min(1.0, ctx.point[i] + ctx.r_max);
  }
  return w;
}

void clamp_to(Vec& x, const Window& w) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], w.lo[i], w.hi[i]);
}

bool coincides(std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-12) return false;
  }
  return true;
}

Vec isotropic(const NodeContext& ctx, RandomStream& rng) {
  Vec x = hypersphere_sample(ctx.point, HypersphereConfig{ctx.r_max, SphereMode::Volume}, rng);
  return x;
}

}  // namespace

Vec bootstrap_proposal(std::size_t index, const NodeContext& ctx, RandomStream& rng) {
  const Window w = window_of(ctx);
  const std::size_t d = ctx.point.size();
  Vec x(d);
  switch (index) {
    case 0:
      if (!ctx.parent) return isotropic(ctx, rng);
      for (std::size_t i = 0; i < d; ++i) x[i] = 2.0 * ctx.point[i] - (*ctx.parent)[i];
      break;
    case 1:
      for (std::size_t i = 0; i < d; ++i) x[i] = 0.5 * (w.lo[i] + w.hi[i]);
      break;
    case 2:
      for (std::size_t i = 0; i < d; ++i) x[i] = (rng.next_u64() >> 63) ? w.hi[i] : w.lo[i];
      break;
    default:
      return isotropic(ctx, rng);
  }
  clamp_to(x, w);
  if (coincides(x, ctx.point)) return isotropic(ctx, rng);
  return x;
}

std::vector<Vec> bootstrap_proposals(const NodeContext& ctx, std::size_t k, RandomStream& rng) {
  if (k < 3) throw ContractViolation("bootstrap schedule needs k >= 3");
  std::vector<Vec> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(bootstrap_proposal(i, ctx, rng));
  return out;
}

void NodeSurrogate::record(const NodeContext& ctx, std::span<const double> trial, double outcome) {
  history_.add(trial, ctx.point, outcome, ctx.value);
}

void NodeSurrogate::retrain(const NodeContext& ctx, const SurrogateConfig& cfg) {
  const auto& entries = history_.entries();
  const std::size_t n = entries.size();
  const std::size_t first = (cfg.history_window > 0 && n > cfg.history_window) ? n - cfg.history_window : 0;

  std::vector<Vec> dir_x, dist_x;
  std::vector<int> y;
  dir_x.reserve(n - first);
  dist_x.reserve(n - first);
  y.reserve(n - first);
  distance_.centers = rbf_centers(cfg.rbf_count, ctx.r_max);
  distance_.width = ctx.r_max;
  for (std::size_t i = first; i < n; ++i) {
    dir_x.push_back(direction_features(entries[i].delta));
    dist_x.push_back(rbf_features(entries[i].r, distance_.centers, distance_.width));
    y.push_back(entries[i].success ? 1 : 0);
  }
  TrainResult dir = train_logistic(dir_x, y, cfg.train);
  TrainResult dist = train_logistic(dist_x, y, cfg.train);
  direction_ = std::move(dir.model);
  distance_.model = std::move(dist.model);
  informative_ = dir.informative && dist.informative;
  cdf_.reset();
  if (informative_) cdf_ = distance_cdf(distance_, ctx.r_max, cfg.cdf_points);
  trained_ = true;
  trained_at_ = n;
  ++train_count_;
}

Vec NodeSurrogate::propose(const NodeContext& ctx, const SurrogateConfig& cfg, RandomStream& rng) {
  const std::size_t n = history_.size();
  const std::size_t k = std::max<std::size_t>(cfg.bootstrap_count, 3);
  if (n < k) return bootstrap_proposal(n, ctx, rng);

  const std::size_t p = std::max<std::size_t>(cfg.retrain_period, 1);
  if (n % p == 0 && n != trained_at_) {
    if (history_.has_both_labels()) {
      retrain(ctx, cfg);
    } else {
      informative_ = false;
      trained_at_ = n;
    }
  }
  if (!trained_ || !informative_) return isotropic(ctx, rng);

  const std::size_t d = ctx.point.size();
  const std::size_t iters = cfg.hill_climb_iters > 0 ? cfg.hill_climb_iters : 10 * d;
  const Vec u = optimize_direction(direction_, rng, iters);
  const double r = sample_step_size(*cdf_, rng);
  const double scale = r / std::sqrt(static_cast<double>(d));
  Vec x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = ctx.point[i] + scale * u[i];
  clamp_unit_inplace(x);
  if (coincides(x, ctx.point)) return isotropic(ctx, rng);
  return x;
}

}  // namespace ctsopt::surrogate
