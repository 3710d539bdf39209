#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ehaoi/scenario.hpp"

namespace ehaoi {

enum class SweepParam { p_s, r_eh, r_gz, lambda, lambda_s, theta, q };
enum class SweepMode { analytic, simulate, both };

std::string_view to_string(SweepParam p);
std::string_view to_string(SweepMode m);
SweepParam parse_sweep_param(std::string_view name);
SweepMode parse_sweep_mode(std::string_view name);

struct SweepAxis {
  SweepParam param = SweepParam::p_s;
  std::vector<double> values;
};

inline constexpr std::size_t kMaxSweepPoints = 10'000;

struct SweepSpec {
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;
  std::vector<PolicyKind> policies{PolicyKind::FCFS, PolicyKind::QR, PolicyKind::GW};
  SweepMode mode = SweepMode::analytic;

  std::size_t points() const;
  // Range checks against `base`; throws std::invalid_argument.
  void validate(const Scenario& base) const;
};

// "name=v1,v2,..." or "name=start:stop:step" (inclusive of stop).
SweepAxis parse_axis(std::string_view text);

// Applies one swept value to a copy of the scenario.
void apply_param(Scenario& scenario, SweepParam param, double value);

struct ResultRow {
  std::size_t axis1_index = 0;
  std::size_t axis2_index = 0;
  double axis1_value = 0.0;
  std::optional<double> axis2_value;
  PolicyKind policy = PolicyKind::FCFS;
  std::string status = "ok";  // or the failure message for this point

  bool stable = false;
  std::optional<double> aoi_analytic;
  std::optional<double> aoi_sim;
  std::optional<double> aoi_sim_ci;
  std::optional<double> mu_p_analytic;
  std::optional<double> mu_p_sim;
  std::optional<double> throughput_analytic;
  std::optional<double> throughput_sim;
};

// Evaluates every grid point (in parallel with `jobs` workers; each point
// simulates with seed derive_seed(master, point index)) and returns rows
// ordered axis2-major, then axis1, then policy order of the spec.
std::vector<ResultRow> run_sweep(const Scenario& base, const SweepSpec& spec, unsigned jobs = 1);

// Presets: "fig10" (p_s x lambda_s), "reh-surface" (p_s x r_eh),
// "rgz-surface" (p_s x r_gz).
SweepSpec sweep_preset(std::string_view name);

}  // namespace ehaoi
