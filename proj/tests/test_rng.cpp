#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "seqdfo/rng.hpp"
#include "seqdfo/stats.hpp"

using namespace seqdfo;

TEST_CASE("equal seeds replay the same stream") {
  RngStream a(42), b(42);
  for (int i = 0; i < 1000000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("derived streams differ across keys") {
  RngStream a = RngStream::derive(7, 1);
  RngStream b = RngStream::derive(7, 2);
  bool any_diff = false;
  for (int i = 0; i < 64; ++i) any_diff |= (a.next_u64() != b.next_u64());
  CHECK(any_diff);

  RngStream c = RngStream::derive(7, 1);
  RngStream d = RngStream::derive(7, 1);
  for (int i = 0; i < 64; ++i) CHECK(c.next_u64() == d.next_u64());
}

TEST_CASE("gaussian basics") {
  RngStream s(1);
  SECTION("sd zero returns the mean exactly and burns no randomness") {
    RngStream before(1);
    const auto u0 = before.next_u64();
    CHECK(gaussian(s, 3.5, 0.0) == 3.5);
    CHECK(s.next_u64() == u0);
  }
  SECTION("negative sd rejected") {
    CHECK_THROWS_AS(gaussian(s, 0.0, -1.0), std::invalid_argument);
  }
  SECTION("law of large numbers, mean and variance") {
    RngStream g(2024);
    RunningStat stat;
    for (int i = 0; i < 100000; ++i) stat.add(gaussian(g, 0.0, 1.0));
    CHECK(std::abs(stat.mean()) < 0.01);              // 3 sigma band at 1e5 draws
    CHECK(std::abs(stat.variance() - 1.0) < 0.02);    // chi-square band
  }
}

TEST_CASE("uniform sphere directions") {
  SECTION("n = 0 rejected") {
    RngStream s(1);
    CHECK_THROWS_AS(uniform_sphere_direction(s, 0), std::invalid_argument);
  }
  SECTION("unit norm within 1e-12") {
    RngStream s(5);
    for (std::size_t n : {1, 2, 3, 17, 100}) {
      const Direction d = uniform_sphere_direction(s, n);
      REQUIRE(d.components.size() == n);
      CHECK(std::abs(d.norm() - 1.0) < 1e-12);
    }
  }
  SECTION("n = 1 gives +-1 with equal frequency") {
    RngStream s(6);
    int plus = 0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) {
      const Direction d = uniform_sphere_direction(s, 1);
      CHECK(std::abs(std::abs(d.components[0]) - 1.0) < 1e-12);
      plus += d.components[0] > 0;
    }
    CHECK(std::abs(plus / static_cast<double>(trials) - 0.5) < 0.01);
  }
  SECTION("componentwise mean vanishes for n = 3") {
    RngStream s(7);
    double m[3] = {0, 0, 0};
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) {
      const Direction d = uniform_sphere_direction(s, 3);
      for (int j = 0; j < 3; ++j) m[j] += d.components[j];
    }
    for (int j = 0; j < 3; ++j) CHECK(std::abs(m[j] / trials) < 0.01);
  }
}

TEST_CASE("first-coordinate law on the circle (Kolmogorov-Smirnov)") {
  // For n = 2 the first coordinate is cos(phi) with phi uniform, so
  // P(X <= t) = 1 - acos(t)/pi.
  RngStream s(99);
  const int trials = 100000;
  std::vector<double> xs(trials);
  for (auto& x : xs) x = uniform_sphere_direction(s, 2).components[0];
  std::sort(xs.begin(), xs.end());
  double ks = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double cdf = 1.0 - std::acos(std::clamp(xs[i], -1.0, 1.0)) / std::numbers::pi;
    ks = std::max(ks, std::abs((i + 1) / static_cast<double>(trials) - cdf));
    ks = std::max(ks, std::abs(i / static_cast<double>(trials) - cdf));
  }
  CHECK(ks < 0.01);
}

TEST_CASE("descent quality") {
  const Direction minus_e1{{-1.0, 0.0}};
  const Direction e2{{0.0, 1.0}};
  const std::vector<double> g1 = {1.0, 0.0};
  CHECK(descent_quality(g1, minus_e1) == Catch::Approx(1.0));
  CHECK(descent_quality(g1, e2) == Catch::Approx(0.0).margin(1e-15));
  const std::vector<double> g2 = {1.0, 1.0};
  CHECK(descent_quality(g2, minus_e1) == Catch::Approx(1.0 / std::sqrt(2.0)));
  const std::vector<double> zero = {0.0, 0.0};
  CHECK_THROWS_AS(descent_quality(zero, minus_e1), std::invalid_argument);
}

TEST_CASE("descent probability against a fixed gradient") {
  // With g = e1 the quality is -d_1; the chance of a 1/(7 sqrt(n))-descent
  // direction stays above 3/7 minus Monte Carlo slack in every dimension.
  const double slack = 3.0 * std::sqrt(0.25 / 100000.0);
  for (std::size_t n : {2, 10, 100}) {
    RngStream s = RngStream::derive(123, n);
    std::vector<double> g(n, 0.0);
    g[0] = 1.0;
    const double tau = 1.0 / (7.0 * std::sqrt(static_cast<double>(n)));
    int hits = 0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) {
      hits += descent_quality(g, uniform_sphere_direction(s, n)) >= tau;
    }
    CHECK(hits / static_cast<double>(trials) >= 3.0 / 7.0 - slack);
  }
}
