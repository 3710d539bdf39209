#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ehaoi/aoi.hpp"
#include "ehaoi/config.hpp"
#include "ehaoi/markov.hpp"

namespace ehaoi {

// Closed-form quantities for one scenario, in pipeline order
// p_eh -> p_gz -> p_ch -> p_tr -> mu_p -> p_sx -> T_s -> mean AoI.
struct AnalyticReport {
  double p_eh = 0.0;
  double p_gz = 0.0;
  std::optional<double> p_ch;  // empty when the battery chain is degenerate
  double p_tr = 0.0;
  double active_density = 0.0;  // lambda_s p_tr
  double laplace = 1.0;         // L_I*(t, lambda_a, r_gz)
  double noise_factor = 1.0;    // exp(-theta sigma^2 d_p^alpha / P_p)
  double mu_p = 0.0;
  double mean_pt_sr_distance = 0.0;
  double p_sx = 0.0;
  double throughput = 0.0;

  double arrival_rate = 0.0;
  double sampling_rate = 0.0;
  markov::QueueSteadyState fcfs;
  std::optional<markov::QueueSteadyState> qr;
  std::optional<double> p_d_closed;
  std::optional<double> p_d_definitional;
  std::optional<double> lambda_e;
  bool fcfs_stable = false;

  std::vector<aoi::AoiResult> aoi;  // one per requested policy

  const aoi::AoiResult* find(PolicyKind policy) const;
};

// Throws std::invalid_argument on invalid configuration.
AnalyticReport analyze(const NetworkConfig& network, double arrival_rate,
                       std::optional<double> sampling_rate, std::span<const PolicyKind> policies);

// Mean AoI for `policy` at a given service probability (used to compare a
// simulated age with the formula fed the empirical mu_p).
std::optional<double> analytic_age(PolicyKind policy, const TrafficConfig& traffic, double mu_p);

}  // namespace ehaoi
