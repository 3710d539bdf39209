#pragma once

#include <optional>

#include "ehaoi/geometry.hpp"

namespace ehaoi::channel {

struct RadioParams {
  double primary_power = 1.0;     // P_p [W]
  double secondary_power = 1e-3;  // P_s [W]
  double pathloss_exponent = 4.0; // alpha
  double noise_power = 1e-10;     // sigma^2 [W]
  double sinr_threshold = 1.0;    // theta, linear

  // Throws std::invalid_argument. P_s > P_p is allowed; see
  // secondary_power_dominates().
  void validate() const;
  bool secondary_power_dominates() const { return secondary_power > primary_power; }

  friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

double db_to_linear(double db);
double linear_to_db(double linear);

// Unit-mean exponential power gain with the distance it is applied over.
struct LinkSample {
  double fading_gain = 1.0;
  double distance = 1.0;

  double received(double power, double alpha) const;
};

// signal / (noise + interference). +inf when only the denominator
// vanishes; std::nullopt for the degenerate 0/0 case.
std::optional<double> sinr(double signal_power, double interference_sum, double noise);

// L_I*(t, lambda_a, r): Laplace functional of Rayleigh-faded PPP
// interference of density lambda_a outside a disk of radius r.
// Throws std::invalid_argument for alpha <= 2 or negative inputs and
// std::runtime_error if the quadrature fails to converge.
double laplace_interference(double t, double active_density, double exclusion_radius, double alpha,
                            double rel_tol = 1e-9);

// The integral inside L_I*: int_r^inf t v^-a / (1 + t v^-a) v dv.
double interference_integral(double t, double exclusion_radius, double alpha,
                             double rel_tol = 1e-9);

// Per-slot PT -> PR success probability for interferer density lambda_a
// (= lambda_s p_tr) outside the guard zone.
double primary_success_probability(const RadioParams& radio, const geometry::Region& region,
                                   double active_density);

// Approximate ST -> SR success probability; interferer density is
// lambda_s p_ch p_s and the PT interference uses E[d_p,i] = 2R/3.
double secondary_success_probability(const RadioParams& radio, const geometry::Region& region,
                                     double sr_distance, double st_density, double p_ch,
                                     double p_s);

}  // namespace ehaoi::channel
