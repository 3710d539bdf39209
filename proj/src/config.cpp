#include "ehaoi/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ehaoi {

void NetworkConfig::validate() const {
  region.validate();
  radio.validate();
  if (!(std::isfinite(sr_distance) && sr_distance > 0.0))
    throw std::invalid_argument("network: sr_distance must be > 0");
  if (!(std::isfinite(st_density) && st_density >= 0.0))
    throw std::invalid_argument("network: st_density must be >= 0");
  if (!(access_probability >= 0.0 && access_probability <= 1.0))
    throw std::invalid_argument("network: access_probability must lie in [0,1]");
}

void TrafficConfig::validate() const {
  if (!(arrival_rate > 0.0 && arrival_rate < 1.0))
    throw std::invalid_argument("traffic: arrival_rate must satisfy 0 < lambda < 1");
  if (sampling_rate && !(*sampling_rate > 0.0 && *sampling_rate <= 1.0))
    throw std::invalid_argument("traffic: sampling_rate must satisfy 0 < q <= 1");
}

}  // namespace ehaoi
