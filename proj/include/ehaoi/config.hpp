#pragma once

#include <cstdint>
#include <optional>

#include "ehaoi/aoi.hpp"
#include "ehaoi/channel.hpp"
#include "ehaoi/geometry.hpp"

namespace ehaoi {

using aoi::PolicyKind;

// One network scenario. Defaults are the repository's reference scenario:
// r_eh = 80 m and r_gz = 120 m with the remaining physical values chosen to
// sit in a stable, interference-relevant regime.
struct NetworkConfig {
  geometry::Region region;
  double sr_distance = 20.0;       // d_s [m]
  double st_density = 1e-3;        // lambda_s [1/m^2]
  double access_probability = 0.5; // p_s
  channel::RadioParams radio;

  // Throws std::invalid_argument naming the field.
  void validate() const;

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

struct TrafficConfig {
  PolicyKind policy = PolicyKind::FCFS;
  double arrival_rate = 0.2;               // lambda
  std::optional<double> sampling_rate;     // q; tracks lambda when unset

  double q() const { return sampling_rate.value_or(arrival_rate); }
  // lambda for FCFS/QR, q for GW.
  double rate() const { return policy == PolicyKind::GW ? q() : arrival_rate; }
  void validate() const;

  friend bool operator==(const TrafficConfig&, const TrafficConfig&) = default;
};

// When STs can harvest from the PT.
enum class HarvestMode {
  always,     // PT radiates every slot
  busy_only,  // only in slots where the PT transmits a packet
};

}  // namespace ehaoi
