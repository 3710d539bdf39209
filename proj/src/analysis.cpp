#include "ehaoi/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "ehaoi/channel.hpp"
#include "ehaoi/geometry.hpp"

namespace ehaoi {

const aoi::AoiResult* AnalyticReport::find(PolicyKind policy) const {
  for (const auto& r : aoi)
    if (r.policy == policy) return &r;
  return nullptr;
}

AnalyticReport analyze(const NetworkConfig& network, double arrival_rate,
                       std::optional<double> sampling_rate, std::span<const PolicyKind> policies) {
  network.validate();
  TrafficConfig traffic{PolicyKind::FCFS, arrival_rate, sampling_rate};
  traffic.validate();

  AnalyticReport rep;
  const auto& region = network.region;
  const auto& radio = network.radio;
  rep.p_eh = geometry::eh_zone_probability(region);
  rep.p_gz = geometry::gz_zone_probability(region);
  const double p_s = network.access_probability;
  try {
    rep.p_ch = markov::battery_charge_probability(rep.p_eh, rep.p_gz, p_s);
    rep.p_tr = markov::transmit_probability({rep.p_eh, rep.p_gz, p_s, *rep.p_ch, 0.0});
  } catch (const std::domain_error&) {
    rep.p_ch.reset();
    rep.p_tr = 0.0;  // p_s = 0 or nothing ever charges: no ST transmits
  }

  rep.active_density = network.st_density * rep.p_tr;
  const double path = std::pow(region.pr_offset, radio.pathloss_exponent);
  const double t = radio.sinr_threshold * path * radio.secondary_power / radio.primary_power;
  rep.laplace = channel::laplace_interference(t, rep.active_density, region.gz_radius,
                                              radio.pathloss_exponent);
  rep.noise_factor = std::exp(-radio.sinr_threshold * radio.noise_power * path / radio.primary_power);
  rep.mu_p = channel::primary_success_probability(radio, region, rep.active_density);

  rep.mean_pt_sr_distance = geometry::expected_pt_sr_distance(region);
  rep.p_sx = channel::secondary_success_probability(radio, region, network.sr_distance,
                                                    network.st_density, rep.p_ch.value_or(0.0), p_s);
  rep.throughput = aoi::secondary_throughput(network.st_density, rep.p_tr, rep.p_sx);

  rep.arrival_rate = arrival_rate;
  rep.sampling_rate = traffic.q();
  if (rep.mu_p > 0.0) {
    rep.fcfs = markov::fcfs_steady_state(arrival_rate, rep.mu_p);
    rep.fcfs_stable = rep.fcfs.stable;
    rep.qr = markov::qr_steady_state(arrival_rate, rep.mu_p);
    rep.p_d_closed = markov::drop_probability(arrival_rate, rep.mu_p, markov::DropForm::closed_form);
    rep.p_d_definitional =
        markov::drop_probability(arrival_rate, rep.mu_p, markov::DropForm::definitional);
    rep.lambda_e = markov::effective_arrival(arrival_rate, rep.mu_p);
  }

  for (PolicyKind p : policies) {
    if (rep.mu_p > 0.0) {
      traffic.policy = p;
      rep.aoi.push_back(aoi::mean_age(p, traffic.rate(), rep.mu_p));
    } else {
      aoi::AoiResult r;
      r.policy = p;
      rep.aoi.push_back(r);
    }
  }
  return rep;
}

std::optional<double> analytic_age(PolicyKind policy, const TrafficConfig& traffic, double mu_p) {
  if (!(mu_p > 0.0 && mu_p <= 1.0)) return std::nullopt;
  TrafficConfig t = traffic;
  t.policy = policy;
  return aoi::mean_age(policy, t.rate(), mu_p).mean_age;
}

}  // namespace ehaoi
