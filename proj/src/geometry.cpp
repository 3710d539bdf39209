#include "ehaoi/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ehaoi::geometry {

double distance(Point2 a, Point2 b) { return std::sqrt(squared_distance(a, b)); }

void Region::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("region: ") + what);
  };
  require(std::isfinite(coverage_radius) && coverage_radius > 0.0, "coverage_radius must be > 0");
  require(std::isfinite(pr_offset) && pr_offset >= 0.0 && pr_offset < coverage_radius,
          "pr_distance must satisfy 0 <= d_p < R");
  require(std::isfinite(eh_radius) && eh_radius >= 0.0 && eh_radius <= coverage_radius,
          "eh_radius must satisfy 0 <= r_eh <= R");
  require(std::isfinite(gz_radius) && gz_radius >= 0.0, "gz_radius must be >= 0");
}

// Rejection from the bounding square; cheaper than sqrt + sincos.
Point2 uniform_in_disk(double radius, Rng& rng) {
  for (;;) {
    const double x = 2.0 * unit_uniform(rng) - 1.0, y = 2.0 * unit_uniform(rng) - 1.0;
    if (x * x + y * y <= 1.0) return {radius * x, radius * y};
  }
}

Point2 random_direction(Rng& rng) {
  for (;;) {
    const double x = 2.0 * unit_uniform(rng) - 1.0, y = 2.0 * unit_uniform(rng) - 1.0;
    const double r2 = x * x + y * y;
    if (r2 <= 1.0 && r2 > 1e-12) {
      const double inv = 1.0 / std::sqrt(r2);
      return {x * inv, y * inv};
    }
  }
}

std::vector<Point2> sample_ppp(double intensity, const Region& region, Rng& rng) {
  if (!(intensity >= 0.0)) throw std::invalid_argument("sample_ppp: intensity must be >= 0");
  std::vector<Point2> points;
  if (intensity == 0.0) return points;
  const double R = region.coverage_radius;
  std::poisson_distribution<std::size_t> count(intensity * std::numbers::pi * R * R);
  const std::size_t n = count(rng);
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) points.push_back(uniform_in_disk(R, rng));
  return points;
}

double eh_zone_probability(const Region& region) {
  const double ratio = region.eh_radius / region.coverage_radius;
  return std::clamp(ratio * ratio, 0.0, 1.0);
}

double gz_inner_branch(const Region& region) {
  const double ratio = region.gz_radius / region.coverage_radius;
  return ratio * ratio;
}

double gz_lens_branch(const Region& region) {
  const double R = region.coverage_radius;
  const double d = region.pr_offset;
  const double r = region.gz_radius;
  // Angles at the PR (guard-disk side) and at the PT (coverage side).
  const double phi_gz = std::acos(std::clamp((d * d + r * r - R * R) / (2.0 * d * r), -1.0, 1.0));
  const double phi_cov = std::acos(std::clamp((R * R + d * d - r * r) / (2.0 * d * R), -1.0, 1.0));
  const double pi = std::numbers::pi;
  return phi_gz * r * r / (pi * R * R) + phi_cov / pi - d / (pi * R) * std::sin(phi_cov);
}

double gz_zone_probability(const Region& region) {
  const double R = region.coverage_radius;
  const double d = region.pr_offset;
  const double r = region.gz_radius;
  if (r <= 0.0) return 0.0;
  if (r >= R + d) return 1.0;
  if (r + d <= R) return std::clamp(gz_inner_branch(region), 0.0, 1.0);
  if (R + r <= d) return 0.0;
  return std::clamp(gz_lens_branch(region), 0.0, 1.0);
}

double expected_pt_sr_distance(const Region& region) {
  if (!(region.coverage_radius > 0.0))
    throw std::invalid_argument("expected_pt_sr_distance: R must be > 0");
  return 2.0 * region.coverage_radius / 3.0;
}

}  // namespace ehaoi::geometry
