#include <doctest.h>

#include <cmath>
#include <set>

#include "ctsopt/benchmarks.hpp"
#include "ctsopt/core.hpp"
#include "ctsopt/random.hpp"

using namespace ctsopt;

TEST_SUITE("core") {
  TEST_CASE("search space validation") {
    CHECK_THROWS_AS(SearchSpace({1.0}, {1.0}), ContractViolation);
    CHECK_THROWS_AS(SearchSpace({}, {}), ContractViolation);
    CHECK_THROWS_AS(SearchSpace({0.0, 0.0}, {1.0}), ContractViolation);
    CHECK(SearchSpace::uniform(3, -1, 1).dim() == 3);
  }

  TEST_CASE("normalize boundaries and midpoint") {
    const auto s = SearchSpace::uniform(2, -100, 100);
    CHECK(normalize(Vec{-100, -100}, s) == Vec{0, 0});
    CHECK(normalize(Vec{100, 100}, s) == Vec{1, 1});
    CHECK(normalize(Vec{0, 0}, s) == Vec{0.5, 0.5});
    CHECK_THROWS_AS(normalize(Vec{0, 0, 0}, s), ContractViolation);
  }

  TEST_CASE("denormalize") {
    CHECK(denormalize(Vec(3, 0.5), SearchSpace::uniform(3, -10, 10)) == Vec(3, 0.0));
    CHECK(denormalize(Vec(2, 1.0), SearchSpace::uniform(2, 2.67, 4.96)) == Vec(2, 4.96));
    CHECK_THROWS_AS(denormalize(Vec{1.1}, SearchSpace::uniform(1, 0, 1)), ContractViolation);
    CHECK_THROWS_AS(denormalize(Vec{-0.1}, SearchSpace::uniform(1, 0, 1)), ContractViolation);
  }

  TEST_CASE("normalization round trip") {
    RandomStream rng(7);
    const SearchSpace s({-500, 0, 2.67, -1e-3}, {500, 10, 4.96, 1e-3});
    for (int i = 0; i < 1000; ++i) {
      Vec v(4);
      for (double& c : v) c = rng.uniform();
      const Vec back = normalize(denormalize(v, s), s);
      for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(back[j] - v[j]) <= 1e-12);
      Vec p(4);
      for (std::size_t j = 0; j < 4; ++j) p[j] = rng.uniform(s.lower()[j], s.upper()[j]);
      const Vec pp = denormalize(normalize(p, s), s);
      for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(pp[j] - p[j]) <= 1e-12 * std::max(1.0, std::abs(p[j])));
    }
  }

  TEST_CASE("clamp") {
    CHECK(clamp_unit(Vec{1.2, -0.1}) == Vec{1.0, 0.0});
    CHECK(clamp_unit(Vec{0.3, 0.7}) == Vec{0.3, 0.7});
  }

  TEST_CASE("evaluate_counted and budget") {
    const auto f1 = bench::make_benchmark(*bench::BenchmarkId::parse("F1"));
    Budget b{3};
    CHECK(evaluate_counted(f1, Vec(30, 0.0), b) == 0.0);
    CHECK(b.used == 1);
    evaluate_counted(f1, Vec(30, 1.0), b);
    evaluate_counted(f1, Vec(30, 1.0), b);
    CHECK(b.exhausted());
    CHECK_THROWS_AS(evaluate_counted(f1, Vec(30, 1.0), b), BudgetExhausted);
    CHECK(b.used == 3);
    CHECK_THROWS_AS(Budget{0}, ContractViolation);
  }

  TEST_CASE("evaluator accounting and best tracking") {
    const auto f1 = bench::make_benchmark(*bench::BenchmarkId::parse("F1"), 2);
    Evaluator ev(f1, 4, nullptr, true);
    CHECK(ev.evaluate_unit(Vec{1.0, 1.0}) == doctest::Approx(20000.0));
    CHECK(ev.evaluate_unit(Vec{0.5, 0.5}) == 0.0);
    ev.evaluate_unit(Vec{0.25, 0.5});
    CHECK(ev.best_value() == 0.0);
    CHECK(ev.best_unit() == Vec{0.5, 0.5});
    CHECK(ev.remaining() == 1);
    const auto r = make_result(ev);
    CHECK(r.evals_used == 3);
    CHECK(r.trace.size() == 3);
    CHECK(r.trace == std::vector<double>{20000.0, 0.0, 0.0});
    CHECK(r.best_point == Vec{0.0, 0.0});
    CHECK(r.sampled_points.size() == 3);
  }

  TEST_CASE("reserve and absorb move quota between evaluators") {
    const auto f1 = bench::make_benchmark(*bench::BenchmarkId::parse("F1"), 2);
    Evaluator parent(f1, 10);
    parent.evaluate_unit(Vec{0.9, 0.9});
    CHECK(parent.reserve(6) == 6);
    CHECK(parent.remaining() == 3);
    CHECK(parent.reserve(100) == 3);
    CHECK(parent.remaining() == 0);
    Evaluator child(f1, 6);
    child.evaluate_unit(Vec{0.5, 0.5});
    child.evaluate_unit(Vec{0.6, 0.5});
    parent.absorb(child);
    CHECK(parent.best_value() == 0.0);
    CHECK(make_result(parent).evals_used == 3);
  }

  TEST_CASE("stochastic objective needs a noise stream and is pure given it") {
    const auto f7 = bench::make_benchmark(*bench::BenchmarkId::parse("F7"));
    CHECK(f7.stochastic);
    CHECK_THROWS_AS(f7.evaluate(Vec(30, 0.0)), ContractViolation);
    RandomStream n1(5), n2(5);
    CHECK(f7.evaluate(Vec(30, 0.1), &n1) == f7.evaluate(Vec(30, 0.1), &n2));
  }
}

TEST_SUITE("random") {
  TEST_CASE("streams are reproducible and splits independent of draw order") {
    RandomStream a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    const RandomStream c(42);
    RandomStream s1 = c.split(9);
    RandomStream s2 = a.split(9);  // a has advanced; split depends only on (seed, id)
    CHECK(s1.next_u64() == s2.next_u64());
    CHECK(c.split(1).seed() != c.split(2).seed());
  }

  TEST_CASE("uniform ranges and moments") {
    RandomStream r(3);
    double sum = 0.0, sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const double u = r.uniform();
      CHECK_UNARY(u >= 0.0);
      CHECK_UNARY(u < 1.0);
      const double z = r.normal();
      sum += z;
      sq += z * z;
      const double o = r.uniform_open();
      CHECK_UNARY(o > 0.0);
      CHECK_UNARY(o < 1.0);
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sq / n - 1.0) < 0.02);
  }

  TEST_CASE("below covers its range") {
    RandomStream r(11);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
      const auto k = r.below(7);
      CHECK(k < 7);
      seen.insert(k);
    }
    CHECK(seen.size() == 7);
  }
}
