#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ctsopt/core.hpp"
#include "ctsopt/random.hpp"

namespace ctsopt {

/// Latin hypercube design in [0,1)^dim: every coordinate has exactly one
/// point in each of the `count` equal-width strata.
std::vector<Vec> lhs_sample(std::size_t count, std::size_t dim, RandomStream& rng);

enum class SphereMode { Volume, Surface };

struct HypersphereConfig {
  double r_max = 0.5;  // unit-cube units
  SphereMode mode = SphereMode::Volume;
};

/// Isotropic unit direction u/|u| with u ~ N(0, I); zero-norm draws are redrawn.
Vec random_direction(std::size_t dim, RandomStream& rng);

/// Unclamped offset of an isotropic proposal: r_max * xi^(1/d) * u/|u| in
/// volume mode, r_max * u/|u| in surface mode. `forced_xi` pins the radial
/// draw for testing.
Vec hypersphere_offset(std::size_t dim, const HypersphereConfig& cfg, RandomStream& rng,
                       std::optional<double> forced_xi = std::nullopt);

/// center + hypersphere_offset, clamped into the unit cube.
Vec hypersphere_sample(std::span<const double> center, const HypersphereConfig& cfg, RandomStream& rng);

}  // namespace ctsopt
