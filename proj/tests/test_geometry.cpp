#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ehaoi/geometry.hpp"

using namespace ehaoi::geometry;

namespace {

// Hit-count estimate of |C(0,R) ∩ C((0,d),r)| / (pi R^2).
double mc_guard_fraction(const Region& reg, std::size_t n, Rng& rng) {
  const Point2 pr = reg.pr_position();
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (squared_distance(uniform_in_disk(reg.coverage_radius, rng), pr) <= reg.gz_radius * reg.gz_radius)
      ++hits;
  return static_cast<double>(hits) / static_cast<double>(n);
}

Region region(double R, double d, double r_gz) {
  Region reg;
  reg.coverage_radius = R;
  reg.pr_offset = d;
  reg.gz_radius = r_gz;
  return reg;
}

}  // namespace

TEST_CASE("eh zone probability is the area ratio") {
  Region reg;
  CHECK(eh_zone_probability(reg) == doctest::Approx(0.0256).epsilon(1e-15));
  reg.eh_radius = reg.coverage_radius;
  CHECK(eh_zone_probability(reg) == 1.0);
  reg.eh_radius = 0.0;
  CHECK(eh_zone_probability(reg) == 0.0);
}

TEST_CASE("guard zone: nested, containing and disjoint cases") {
  CHECK(gz_zone_probability(region(500, 200, 120)) == doctest::Approx(0.0576).epsilon(1e-15));
  CHECK(gz_zone_probability(region(500, 200, 700)) == 1.0);
  CHECK(gz_zone_probability(region(500, 200, 900)) == 1.0);
  CHECK(gz_zone_probability(region(500, 0, 250)) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(gz_zone_probability(region(500, 0, 600)) == 1.0);
  CHECK(gz_zone_probability(region(500, 200, 0)) == 0.0);
}

TEST_CASE("guard zone lens branch matches a Monte Carlo area estimate") {
  Rng rng(7);
  const Region reg = region(500, 450, 120);
  const double p = gz_zone_probability(reg);
  const double mc = mc_guard_fraction(reg, 2'000'000, rng);
  // Binomial standard error is below 2e-4 here.
  CHECK(std::abs(p - mc) < 1e-3);
  CHECK(p < 120.0 * 120.0 / (500.0 * 500.0));
}

TEST_CASE("guard zone on random triples across both branches") {
  Rng rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 8; ++i) {
    const double R = 100.0 + 900.0 * u(rng);
    const double d = R * u(rng);
    const double r = (R + d) * (0.05 + 0.9 * u(rng));
    const Region reg = region(R, d, r);
    const double p = gz_zone_probability(reg);
    const double mc = mc_guard_fraction(reg, 500'000, rng);
    const double se = std::sqrt(std::max(p * (1 - p), 1e-6) / 500'000.0);
    INFO("R=" << R << " d=" << d << " r=" << r);
    CHECK(std::abs(p - mc) < 5.0 * se + 1e-9);
  }
}

TEST_CASE("guard zone branches agree at r_gz = R - d_p") {
  for (double d : {10.0, 100.0, 200.0, 350.0, 499.0}) {
    const Region reg = region(500, d, 500 - d);
    CHECK(std::abs(gz_inner_branch(reg) - gz_lens_branch(reg)) < 1e-9);
    // Just either side of the boundary.
    const double below = gz_zone_probability(region(500, d, 500 - d - 1e-9));
    const double above = gz_zone_probability(region(500, d, 500 - d + 1e-9));
    CHECK(std::abs(below - above) < 1e-9);
  }
  // Outer boundary: the guard disk just contains the coverage disk.
  CHECK(gz_lens_branch(region(500, 200, 700)) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(gz_zone_probability(region(500, 200, 700 - 1e-9)) - 1.0) < 1e-9);
}

TEST_CASE("guard zone probability is non-decreasing in r_gz") {
  double prev = 0.0;
  for (double r = 0.0; r <= 800.0; r += 2.5) {
    const double p = gz_zone_probability(region(500, 300, r));
    CHECK(p >= prev - 1e-15);
    CHECK(p <= 1.0);
    prev = p;
  }
  CHECK(prev == 1.0);
}

TEST_CASE("PPP sampling") {
  Region reg;
  Rng rng(3);
  CHECK(sample_ppp(0.0, reg, rng).empty());

  double total = 0.0;
  const int draws = 2000;
  for (int i = 0; i < draws; ++i) {
    const auto pts = sample_ppp(1e-3, reg, rng);
    total += static_cast<double>(pts.size());
    for (const auto& p : pts) REQUIRE(p.x * p.x + p.y * p.y <= 500.0 * 500.0);
  }
  const double expected = std::numbers::pi * 500.0 * 500.0 * 1e-3;
  CHECK(std::abs(total / draws - expected) / expected < 0.01);
  CHECK_THROWS_AS(sample_ppp(-1.0, reg, rng), std::invalid_argument);
}

TEST_CASE("mean distance to a uniform point is 2R/3") {
  Region reg;
  CHECK(expected_pt_sr_distance(reg) == doctest::Approx(1000.0 / 3.0));
  reg.coverage_radius = 3.0;
  CHECK(expected_pt_sr_distance(reg) == doctest::Approx(2.0));

  Rng rng(5);
  double sum = 0.0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    const auto p = uniform_in_disk(500.0, rng);
    sum += std::hypot(p.x, p.y);
  }
  CHECK(std::abs(sum / n - 1000.0 / 3.0) / (1000.0 / 3.0) < 0.005);
}

TEST_CASE("random directions are unit vectors") {
  Rng rng(9);
  double cx = 0.0, cy = 0.0;
  for (int i = 0; i < 100'000; ++i) {
    const auto v = random_direction(rng);
    REQUIRE(std::abs(std::hypot(v.x, v.y) - 1.0) < 1e-12);
    cx += v.x;
    cy += v.y;
  }
  CHECK(std::abs(cx / 1e5) < 0.01);
  CHECK(std::abs(cy / 1e5) < 0.01);
}

TEST_CASE("region validation names the constraint") {
  Region reg;
  reg.coverage_radius = -1.0;
  CHECK_THROWS_AS(reg.validate(), std::invalid_argument);
  reg = Region{};
  reg.eh_radius = -5.0;
  CHECK_THROWS_WITH_AS(reg.validate(), doctest::Contains("r_eh"), std::invalid_argument);
}
