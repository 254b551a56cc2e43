#include <doctest.h>

#include <algorithm>

#include "ctsopt/baselines.hpp"
#include "ctsopt/benchmarks.hpp"

using namespace ctsopt;

TEST_SUITE("baselines") {
  TEST_CASE("random search") {
    const auto f = bench::make_benchmark(bench::BenchmarkId{1});
    const auto one = random_search(f, 1, 3, true);
    CHECK(one.evals_used == 1);
    CHECK(one.trace.size() == 1);
    CHECK(one.best_value == one.sampled_values[0]);

    const auto r = random_search(f, 50000, 4);
    CHECK(r.evals_used == 50000);
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] <= r.trace[i - 1]);
    // order of magnitude 1e4
    CHECK(r.best_value > 1e3);
    CHECK(r.best_value < 1e5);
    CHECK(random_search(f, 100, 4).trace == random_search(f, 100, 4).trace);
  }

  TEST_CASE("pso contract") {
    const auto f = bench::make_benchmark(bench::BenchmarkId{16});
    PsoConfig c;
    c.swarm_size = 1;
    CHECK_THROWS_AS(pso_optimize(f, 100, c, 1), ContractViolation);
    CHECK_THROWS_AS(pso_optimize(f, 10, PsoConfig{}, 1), ContractViolation);
  }

  TEST_CASE("pso on F16") {
    const auto f = bench::make_benchmark(bench::BenchmarkId{16});
    int ok = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto r = pso_optimize(f, 10000, PsoConfig{}, 500 + s, true);
      CHECK(r.evals_used == 10000);
      for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] <= r.trace[i - 1]);
      for (const auto& p : r.sampled_points) {
        CHECK(std::all_of(p.begin(), p.end(), [](double x) { return x >= 0.0 && x <= 1.0; }));
      }
      ok += r.best_value <= -1.03;
    }
    CHECK(ok >= 9);
  }

  TEST_CASE("pso determinism") {
    const auto f = bench::make_benchmark(bench::BenchmarkId{7});
    CHECK(pso_optimize(f, 600, PsoConfig{}, 8).trace == pso_optimize(f, 600, PsoConfig{}, 8).trace);
  }
}
