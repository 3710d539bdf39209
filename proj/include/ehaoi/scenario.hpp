#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ehaoi/config.hpp"

namespace ehaoi {

inline constexpr int kScenarioSchemaVersion = 1;

struct SimSettings {
  std::uint64_t slots = 1'000'000;
  std::uint64_t replications = 5;
  std::uint64_t seed = 1;
  HarvestMode harvest = HarvestMode::always;

  friend bool operator==(const SimSettings&, const SimSettings&) = default;
};

// A scenario file: network, primary traffic and simulation settings.
struct Scenario {
  int schema_version = kScenarioSchemaVersion;
  NetworkConfig network;
  std::vector<PolicyKind> policies{PolicyKind::FCFS, PolicyKind::QR, PolicyKind::GW};
  double arrival_rate = 0.2;
  std::optional<double> sampling_rate;
  SimSettings sim;

  std::vector<TrafficConfig> traffic() const;
  void validate() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Thrown for malformed files; the message names the offending key.
class ScenarioError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Scenario default_scenario();

// JSON text. Unknown keys are rejected; every key except schema_version is
// optional and falls back to default_scenario(). The SINR threshold may be
// given as "sinr_threshold" (linear) or "sinr_threshold_db", not both.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

// Canonical JSON; thresholds are written in linear units.
std::string serialize_scenario(const Scenario& scenario);

std::vector<PolicyKind> parse_policy_set(std::string_view text);

}  // namespace ehaoi
