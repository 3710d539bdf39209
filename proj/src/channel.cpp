#include "ehaoi/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ehaoi/quadrature.hpp"

namespace ehaoi::channel {

void RadioParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("radio: ") + what);
  };
  require(std::isfinite(primary_power) && primary_power > 0.0, "primary_power must be > 0");
  require(std::isfinite(secondary_power) && secondary_power > 0.0, "secondary_power must be > 0");
  require(std::isfinite(pathloss_exponent) && pathloss_exponent > 2.0,
          "pathloss_exponent must be > 2");
  require(std::isfinite(noise_power) && noise_power >= 0.0, "noise_power must be >= 0");
  require(std::isfinite(sinr_threshold) && sinr_threshold > 0.0, "sinr_threshold must be > 0");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double LinkSample::received(double power, double alpha) const {
  return power * fading_gain * std::pow(distance, -alpha);
}

std::optional<double> sinr(double signal_power, double interference_sum, double noise) {
  const double denom = noise + interference_sum;
  if (denom == 0.0) {
    if (signal_power == 0.0) return std::nullopt;
    return std::numeric_limits<double>::infinity();
  }
  return signal_power / denom;
}

double interference_integral(double t, double exclusion_radius, double alpha, double rel_tol) {
  if (!(alpha > 2.0)) throw std::invalid_argument("interference integral diverges for alpha <= 2");
  if (!(t >= 0.0) || !(exclusion_radius >= 0.0))
    throw std::invalid_argument("interference integral: t and r must be >= 0");
  if (t == 0.0) return 0.0;

  // v^2 = w t^(2/alpha) turns the integrand into 1 / (1 + w^a), a = alpha/2.
  const double a = 0.5 * alpha;
  const double log_t = std::log(t);
  const double log_w0 = exclusion_radius > 0.0
                            ? 2.0 * std::log(exclusion_radius) - (2.0 / alpha) * log_t
                            : -std::numeric_limits<double>::infinity();
  const double log_prefactor = (2.0 / alpha) * log_t - std::numbers::ln2;

  double head = 0.0;
  double log_c = 0.0;  // split point c = max(w0, 1)
  if (log_w0 < 0.0) {
    const double w0 = std::exp(log_w0);
    auto f = [a](double w) { return 1.0 / (1.0 + std::pow(w, a)); };
    const auto res = quadrature::adaptive_simpson(f, w0, 1.0, rel_tol);
    if (!res.converged) throw std::runtime_error("interference integral: head did not converge");
    head = res.value;
  } else {
    log_c = log_w0;
  }

  // Tail [c, inf) with w = c s^(-1/(a-1)); the integrand becomes
  // c^(1-a) g / (1 + s^(a g) c^-a) with g = 1/(a-1), bounded on [0, 1].
  const double g = 1.0 / (a - 1.0);
  const double c_neg_a = std::exp(-a * log_c);
  auto tail_f = [&](double s) { return 1.0 / (1.0 + std::pow(s, a * g) * c_neg_a); };
  const auto tail = quadrature::adaptive_simpson(tail_f, 0.0, 1.0, rel_tol);
  if (!tail.converged) throw std::runtime_error("interference integral: tail did not converge");
  const double log_tail_scale = (1.0 - a) * log_c + std::log(g);

  return std::exp(log_prefactor) * head + std::exp(log_prefactor + log_tail_scale) * tail.value;
}

double laplace_interference(double t, double active_density, double exclusion_radius, double alpha,
                            double rel_tol) {
  if (!(active_density >= 0.0))
    throw std::invalid_argument("laplace_interference: active density must be >= 0");
  const double integral = interference_integral(t, exclusion_radius, alpha, rel_tol);
  if (active_density == 0.0 || integral == 0.0) return 1.0;
  return std::exp(-2.0 * std::numbers::pi * active_density * integral);
}

double primary_success_probability(const RadioParams& radio, const geometry::Region& region,
                                   double active_density) {
  const double alpha = radio.pathloss_exponent;
  const double path = std::pow(region.pr_offset, alpha);
  const double t = radio.sinr_threshold * path * radio.secondary_power / radio.primary_power;
  const double interference =
      laplace_interference(t, active_density, region.gz_radius, alpha);
  const double noise = std::exp(-radio.sinr_threshold * radio.noise_power * path / radio.primary_power);
  return interference * noise;
}

double secondary_success_probability(const RadioParams& radio, const geometry::Region& region,
                                     double sr_distance, double st_density, double p_ch,
                                     double p_s) {
  auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!in_unit(p_ch) || !in_unit(p_s))
    throw std::invalid_argument("secondary_success_probability: probabilities must be in [0,1]");
  if (!(st_density >= 0.0) || !(sr_distance > 0.0))
    throw std::invalid_argument("secondary_success_probability: need lambda_s >= 0, d_s > 0");

  const double alpha = radio.pathloss_exponent;
  const double theta = radio.sinr_threshold;
  const double ds2 = sr_distance * sr_distance;
  const double theta_root = std::pow(theta, 2.0 / alpha);

  const double st_interference = std::exp(-std::numbers::pi * st_density * p_ch * p_s * ds2 * theta_root);
  const double noise =
      std::exp(-theta * radio.noise_power * std::pow(sr_distance, alpha) / radio.secondary_power);
  const double mean_pt_distance = geometry::expected_pt_sr_distance(region);
  const double pt_interference =
      1.0 / (1.0 + ds2 / (mean_pt_distance * mean_pt_distance) *
                       std::pow(theta * radio.primary_power / radio.secondary_power, 2.0 / alpha));
  return st_interference * noise * pt_interference;
}

}  // namespace ehaoi::channel
