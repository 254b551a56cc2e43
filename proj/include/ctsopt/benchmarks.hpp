#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ctsopt/core.hpp"

namespace ctsopt::bench {

enum class Category { Unimodal, Multimodal, FixedDimensional };

/// F1..F23 are represented by their index 1..23.
struct BenchmarkId {
  int index;

  static std::optional<BenchmarkId> parse(std::string_view id);  // "F7" -> 7
  std::string name() const;
  Category category() const;
};

struct BenchmarkSpec {
  BenchmarkId id;
  std::size_t dim;
  double lower;
  double upper;
  double fmin;
};

BenchmarkSpec spec_of(BenchmarkId id);

/// Dead-zone penalty used by F12/F13.
double penalty_u(double x, double a, double k, double m);

/// Formula value at raw point p. `noise` must be supplied for F7 only and is
/// the unit-uniform draw added to the deterministic sum.
double benchmark_value(BenchmarkId id, std::span<const double> p, std::optional<double> noise = std::nullopt);

/// Objective wrapper; dim_override applies to the scalable F1-F13 only.
Objective make_benchmark(BenchmarkId id, std::optional<std::size_t> dim_override = std::nullopt);

/// Literature global minimizer in raw units (Dixon-Szego / De Jong tables).
/// For F14, F15 and F16 the tabulated points are rounded approximations.
std::optional<Vec> known_minimizer(BenchmarkId id, std::size_t dim);

}  // namespace ctsopt::bench
