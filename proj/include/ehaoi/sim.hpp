#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ehaoi/config.hpp"
#include "ehaoi/geometry.hpp"
#include "ehaoi/stats.hpp"

namespace ehaoi::sim {

using geometry::Rng;
using stats::Estimate;

enum class Battery : std::uint8_t { Empty, Full };

struct StNode {
  geometry::Point2 position;
  // Distance to the PT. Position and distance are redrawn each slot only
  // for STs that start the slot Full; an Empty ST's location matters only
  // through the EH-zone test, which is drawn directly.
  double pt_distance = 0.0;
  Battery battery = Battery::Empty;
  geometry::Point2 sr_offset{1.0, 0.0};  // unit vector; SR at position + d_s * sr_offset
};

struct QueueEvents {
  bool transmitting = false;  // PT sends a packet this slot
  bool delivered = false;
  bool dropped = false;
  bool arrived = false;
};

// Age after one slot: reset to current_slot - birth + 1 on delivery (the
// +1 is the one-slot transmission), otherwise incremented.
std::int64_t age_update(std::int64_t age, std::optional<std::int64_t> delivered_birth_slot,
                        std::int64_t current_slot);

// PT packet buffer for one management policy. Arrivals (FCFS, QR) land at
// the end of a slot and are first served in the next one; a GW sample is
// generated and sent in the same slot and discarded on failure.
class PrimaryQueue {
 public:
  PrimaryQueue(const TrafficConfig& traffic, std::uint64_t seed);

  PolicyKind policy() const { return traffic_.policy; }
  const TrafficConfig& traffic() const { return traffic_; }
  std::size_t size() const;
  std::int64_t age() const { return age_; }

  // Decides whether the PT transmits this slot (GW draws its sample here).
  bool begin_slot(std::int64_t slot);
  // Service attempt with the slot's channel outcome, then the arrival.
  QueueEvents finish_slot(bool channel_success, std::int64_t slot);

  std::uint64_t arrivals() const { return arrivals_; }
  std::uint64_t delivered() const { return delivered_; }
  std::uint64_t dropped() const { return dropped_; }

 private:
  TrafficConfig traffic_;
  Rng rng_;
  std::deque<std::int64_t> fifo_;           // FCFS birth slots
  std::optional<std::int64_t> in_service_;  // QR
  std::optional<std::int64_t> waiting_;     // QR
  std::optional<std::int64_t> sample_;      // GW in-flight sample
  std::int64_t age_ = 1;
  std::uint64_t arrivals_ = 0;
  std::uint64_t delivered_ = 0;
  std::uint64_t dropped_ = 0;
};

struct SlotOutcome {
  std::size_t full_count = 0;    // STs Full at slot start
  std::size_t active_st_count = 0;
  bool pt_radiating = false;
  bool channel_success = false;  // SINR at PR above threshold
  double primary_sinr = 0.0;
  std::size_t secondary_attempts = 0;
  std::size_t secondary_successes = 0;
  // First traffic probe.
  bool primary_attempted = false;
  bool primary_success = false;
  bool dropped_packet = false;
};

struct SimState {
  NetworkConfig network;
  HarvestMode harvest = HarvestMode::always;
  std::vector<StNode> nodes;
  std::vector<PrimaryQueue> queues;
  std::vector<QueueEvents> last_events;
  std::int64_t slot = 0;

  // Test hooks.
  bool unit_fading = false;
  bool freeze_positions = false;

  std::vector<std::size_t> active;  // scratch
};

// Draws the ST population (Poisson count, uniform positions) and one
// queue per traffic probe. All probes see the same channel realisation.
SimState make_state(const NetworkConfig& network, std::span<const TrafficConfig> traffic,
                    HarvestMode harvest, std::uint64_t seed, Rng& rng);

// Mobility, charging, access, SINR evaluation and queue updates for one
// slot. Access is decided on the battery state at slot start; energy
// harvested during the slot is usable from the next slot on.
SlotOutcome step_slot(SimState& state, Rng& rng);

struct SimOptions {
  std::uint64_t slots = 1'000'000;
  std::uint64_t replications = 1;
  std::uint64_t seed = 1;
  HarvestMode harvest = HarvestMode::always;
  double warmup_fraction = 0.1;
  std::size_t batches = 20;
  std::ostream* trace = nullptr;  // per-slot CSV of the first replication
};

struct PolicyMetrics {
  TrafficConfig traffic;
  Estimate mean_age;
  Estimate drop;          // per generated / arrived packet
  Estimate arrival_rate;  // per slot
  std::uint64_t arrivals = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t in_system = 0;
  bool diverged = false;  // FCFS: empirical lambda >= empirical mu_p
  std::vector<std::size_t> queue_trace;  // queue length at each batch end

  bool conserved() const { return delivered + dropped + in_system == arrivals; }
};

struct SimMetrics {
  Estimate mu_p;
  Estimate p_sx;
  Estimate p_tr;
  Estimate p_ch;
  Estimate throughput;  // packets / slot / m^2
  std::uint64_t slots_run = 0;
  std::uint64_t replications = 0;
  std::uint64_t st_count = 0;  // ST population of the first replication
  std::vector<PolicyMetrics> policies;

  // Throws std::out_of_range if the policy was not simulated.
  const PolicyMetrics& policy(PolicyKind kind) const;
};

// Runs `replications` independent runs and pools their batch means.
// Throws std::invalid_argument for slots < 10^4 or invalid configs.
SimMetrics simulate(const NetworkConfig& network, std::span<const TrafficConfig> traffic,
                    const SimOptions& options);

SimMetrics run_simulation(const NetworkConfig& network, const TrafficConfig& traffic,
                          std::uint64_t slots, std::uint64_t seed);

}  // namespace ehaoi::sim
