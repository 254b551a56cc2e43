#include "ctsopt/sampling.hpp"

#include <cmath>
#include <numeric>

namespace ctsopt {

std::vector<Vec> lhs_sample(std::size_t count, std::size_t dim, RandomStream& rng) {
  if (count == 0) throw ContractViolation("lhs_sample: count must be >= 1");
  if (dim == 0) throw ContractViolation("lhs_sample: dim must be >= 1");
  std::vector<Vec> pts(count, Vec(dim));
  std::vector<std::size_t> perm(count);
  const double width = 1.0 / static_cast<double>(count);
  for (std::size_t j = 0; j < dim; ++j) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    // Fisher-Yates with the stream's own integer draw
    for (std::size_t i = count; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    for (std::size_t i = 0; i < count; ++i) {
      double x = (static_cast<double>(perm[i]) + rng.uniform()) * width;
      // guard against rounding up into the next stratum
      const double hi = static_cast<double>(perm[i] + 1) * width;
      if (x >= hi) x = std::nextafter(hi, 0.0);
      pts[i][j] = x;
    }
  }
  return pts;
}

Vec random_direction(std::size_t dim, RandomStream& rng) {
  Vec u(dim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& c : u) {
      c = rng.normal();
      norm2 += c * c;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& c : u) c *= inv;
  return u;
}

Vec hypersphere_offset(std::size_t dim, const HypersphereConfig& cfg, RandomStream& rng,
                       std::optional<double> forced_xi) {
  if (!(cfg.r_max > 0.0)) throw ContractViolation("hypersphere: r_max must be positive");
  Vec u = random_direction(dim, rng);
  double r = cfg.r_max;
  if (cfg.mode == SphereMode::Volume) {
    const double xi = forced_xi ? *forced_xi : rng.uniform_open();
    r *= std::pow(xi, 1.0 / static_cast<double>(dim));
  }
  for (double& c : u) c *= r;
  return u;
}

Vec hypersphere_sample(std::span<const double> center, const HypersphereConfig& cfg, RandomStream& rng) {
  Vec out = hypersphere_offset(center.size(), cfg, rng);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += center[i];
  clamp_unit_inplace(out);
  return out;
}

}  // namespace ctsopt
