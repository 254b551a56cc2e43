#include <doctest.h>

#include <cmath>

#include "ctsopt/benchmarks.hpp"

using namespace ctsopt;
using namespace ctsopt::bench;

namespace {
BenchmarkId F(int i) { return BenchmarkId{i}; }
}  // namespace

TEST_SUITE("benchmarks") {
  TEST_CASE("id parsing") {
    CHECK(BenchmarkId::parse("F7")->index == 7);
    CHECK(BenchmarkId::parse("F23")->index == 23);
    CHECK_FALSE(BenchmarkId::parse("F0"));
    CHECK_FALSE(BenchmarkId::parse("F24"));
    CHECK_FALSE(BenchmarkId::parse("f1"));
    CHECK_FALSE(BenchmarkId::parse("F1x"));
    CHECK(F(13).name() == "F13");
    CHECK(F(4).category() == Category::Unimodal);
    CHECK(F(9).category() == Category::Multimodal);
    CHECK(F(14).category() == Category::FixedDimensional);
  }

  TEST_CASE("spec table rows") {
    const auto f1 = spec_of(F(1));
    CHECK(f1.dim == 30);
    CHECK(f1.lower == -100.0);
    CHECK(f1.upper == 100.0);
    CHECK(f1.fmin == 0.0);
    CHECK(spec_of(F(16)).dim == 2);
    CHECK(spec_of(F(16)).fmin == -1.0316);
    CHECK(spec_of(F(8)).fmin == -418.9829 * 30);
  }

  TEST_CASE("analytic minima of the scalable functions") {
    for (int i = 1; i <= 13; ++i) {
      if (i == 7) continue;
      const auto x = known_minimizer(F(i), 30);
      REQUIRE(x);
      const double v = benchmark_value(F(i), *x);
      if (i == 8) {
        CHECK(v == doctest::Approx(-12569.486618164875).epsilon(1e-12));
        CHECK(std::abs(v - spec_of(F(8)).fmin) <= 1e-1);
      } else {
        CAPTURE(i);
        CHECK(std::abs(v - spec_of(F(i)).fmin) <= 1e-6);
      }
    }
    CHECK(benchmark_value(F(7), Vec(30, 0.0), 0.0) == 0.0);
  }

  TEST_CASE("named trivial points") {
    CHECK(benchmark_value(F(1), Vec(30, 0.0)) == 0.0);
    CHECK(benchmark_value(F(5), Vec(30, 1.0)) == 0.0);
    CHECK(std::abs(benchmark_value(F(10), Vec(30, 0.0))) < 1e-14);
    CHECK(benchmark_value(F(9), Vec(30, 0.0)) == 0.0);
  }

  TEST_CASE("penalty_u") {
    CHECK(penalty_u(0, 10, 100, 4) == 0.0);
    CHECK(penalty_u(11, 10, 100, 4) == 100.0);
    CHECK(penalty_u(-12, 10, 100, 4) == 1600.0);
  }

  TEST_CASE("fixed-dimensional values at tabulated minimizers") {
    // high-precision values of the standard formulas at the same points
    struct Row {
      int id;
      double value;
    };
    const Row rows[] = {
        {14, 0.99800383779445041},  {15, 0.00030748598865587288}, {16, -1.0316284534898772},
        {17, 0.39788735772973834},  {18, 3.0},                    {19, -3.8627821478197453},
        {20, -3.3223680113913387},  {21, -10.153199675289772},    {22, -10.402940564445017},
        {23, -10.536409813468187},
    };
    for (const auto& r : rows) {
      CAPTURE(r.id);
      const auto x = known_minimizer(F(r.id), 0);
      REQUIRE(x);
      CHECK(benchmark_value(F(r.id), *x) == doctest::Approx(r.value).epsilon(1e-9));
    }
  }

  TEST_CASE("noise contract") {
    CHECK_THROWS_AS(benchmark_value(F(7), Vec(30, 0.0)), ContractViolation);
    CHECK_THROWS_AS(benchmark_value(F(1), Vec(30, 0.0), 0.5), ContractViolation);
    CHECK(benchmark_value(F(7), Vec(30, 0.0), 0.25) == 0.25);
  }

  TEST_CASE("dimension handling") {
    const auto f1 = make_benchmark(F(1), 5);
    CHECK(f1.space.dim() == 5);
    CHECK(make_benchmark(F(8), 10).known_min == doctest::Approx(-4189.829));
    CHECK_THROWS_AS(benchmark_value(F(16), Vec(3, 0.0)), ContractViolation);
    CHECK_THROWS_AS(make_benchmark(F(16), 5), ContractViolation);
  }
}
