#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace ehaoi::aoi {

enum class PolicyKind { FCFS, QR, GW };

std::string_view to_string(PolicyKind policy);
// Accepts fcfs / qr / gw in any case; throws std::invalid_argument.
PolicyKind parse_policy(std::string_view name);

struct AoiResult {
  PolicyKind policy = PolicyKind::FCFS;
  std::optional<double> mean_age;  // slots; empty when unstable
  bool stable = false;
  // Set when a closed form returns a non-finite or sub-one mean age.
  bool suspect = false;
  std::map<std::string, double> aux;
};

// Geo/Geo/1 FCFS: 1/lambda + (1-lambda)/(mu_p-lambda) - lambda/mu_p^2 + lambda/mu_p.
AoiResult aoi_fcfs(double lambda, double mu_p);

// Single-buffer queue with replacement. aux carries delta, epsilon, rho,
// p_d (closed form) and lambda_e.
AoiResult aoi_qr(double lambda, double mu_p);

// Generate-at-will: 1 / (mu_p q).
AoiResult aoi_gw(double q, double mu_p);

AoiResult mean_age(PolicyKind policy, double rate, double mu_p);

// lambda_s p_tr p_sx, packets / slot / m^2.
double secondary_throughput(double st_density, double p_tr, double p_sx);

}  // namespace ehaoi::aoi
