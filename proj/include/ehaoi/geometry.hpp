#pragma once

#include <random>
#include <vector>

namespace ehaoi::geometry {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

double distance(Point2 a, Point2 b);
inline double squared_distance(Point2 a, Point2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Coverage disk centred at the PT (origin), PR at (0, pr_offset). The
// EH zone is centred at the PT, the guard zone at the PR.
struct Region {
  double coverage_radius = 500.0;
  double pr_offset = 200.0;
  double eh_radius = 80.0;
  double gz_radius = 120.0;

  Point2 pr_position() const { return {0.0, pr_offset}; }

  // Throws std::invalid_argument naming the violated constraint.
  void validate() const;

  friend bool operator==(const Region&, const Region&) = default;
};

using Rng = std::mt19937_64;

// Uniform point on the disk of the given radius centred at the origin.
// Uniform on [0, 1) from the top 53 bits of one draw.
inline double unit_uniform(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Point2 uniform_in_disk(double radius, Rng& rng);
// Uniformly distributed unit vector.
Point2 random_direction(Rng& rng);

// Homogeneous PPP restricted to the coverage disk: Poisson count, then
// i.i.d. uniform placement.
std::vector<Point2> sample_ppp(double intensity, const Region& region, Rng& rng);

// r_eh^2 / R^2.
double eh_zone_probability(const Region& region);

// Fraction of the coverage disk covered by the guard disk. Handles the
// nested and disjoint configurations explicitly; the lens formula only
// applies when the boundaries cross.
double gz_zone_probability(const Region& region);

// The two closed-form branches, exposed for continuity checks at
// r_gz = R - d_p. Neither validates its domain.
double gz_inner_branch(const Region& region);
double gz_lens_branch(const Region& region);

// 2R/3: mean distance from the centre of a disk to a uniform point in it.
double expected_pt_sr_distance(const Region& region);

}  // namespace ehaoi::geometry
