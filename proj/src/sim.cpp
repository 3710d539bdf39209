#include "ehaoi/sim.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "ehaoi/channel.hpp"

namespace ehaoi::sim {

std::int64_t age_update(std::int64_t age, std::optional<std::int64_t> delivered_birth_slot,
                        std::int64_t current_slot) {
  if (delivered_birth_slot) return current_slot - *delivered_birth_slot + 1;
  return age + 1;
}

PrimaryQueue::PrimaryQueue(const TrafficConfig& traffic, std::uint64_t seed)
    : traffic_(traffic), rng_(seed) {}

std::size_t PrimaryQueue::size() const {
  switch (traffic_.policy) {
    case PolicyKind::FCFS: return fifo_.size();
    case PolicyKind::QR: return (in_service_ ? 1u : 0u) + (waiting_ ? 1u : 0u);
    case PolicyKind::GW: return sample_ ? 1u : 0u;
  }
  return 0;
}

bool PrimaryQueue::begin_slot(std::int64_t slot) {
  switch (traffic_.policy) {
    case PolicyKind::FCFS: return !fifo_.empty();
    case PolicyKind::QR: return in_service_.has_value();
    case PolicyKind::GW: {
      std::bernoulli_distribution sample(traffic_.q());
      if (sample(rng_)) {
        sample_ = slot;
        ++arrivals_;
      }
      return sample_.has_value();
    }
  }
  return false;
}

QueueEvents PrimaryQueue::finish_slot(bool channel_success, std::int64_t slot) {
  QueueEvents ev;
  std::optional<std::int64_t> delivered_birth;

  switch (traffic_.policy) {
    case PolicyKind::FCFS: {
      if (!fifo_.empty()) {
        ev.transmitting = true;
        if (channel_success) {
          delivered_birth = fifo_.front();
          fifo_.pop_front();
        }
      }
      std::bernoulli_distribution arrival(traffic_.arrival_rate);
      if (arrival(rng_)) {
        fifo_.push_back(slot);
        ev.arrived = true;
      }
      break;
    }
    case PolicyKind::QR: {
      if (in_service_) {
        ev.transmitting = true;
        if (channel_success) {
          delivered_birth = in_service_;
          in_service_ = waiting_;
          waiting_.reset();
        }
      }
      std::bernoulli_distribution arrival(traffic_.arrival_rate);
      if (arrival(rng_)) {
        ev.arrived = true;
        if (!in_service_) {
          in_service_ = slot;
        } else {
          if (waiting_) ev.dropped = true;
          waiting_ = slot;
        }
      }
      break;
    }
    case PolicyKind::GW: {
      if (sample_) {
        ev.transmitting = true;
        ev.arrived = true;
        if (channel_success)
          delivered_birth = sample_;
        else
          ev.dropped = true;
        sample_.reset();
      }
      break;
    }
  }

  if (ev.arrived && traffic_.policy != PolicyKind::GW) ++arrivals_;
  if (delivered_birth) {
    ev.delivered = true;
    ++delivered_;
  }
  if (ev.dropped) ++dropped_;
  age_ = age_update(age_, delivered_birth, slot);
  return ev;
}

SimState make_state(const NetworkConfig& network, std::span<const TrafficConfig> traffic,
                    HarvestMode harvest, std::uint64_t seed, Rng& rng) {
  SimState st;
  st.network = network;
  st.harvest = harvest;
  for (const auto& p : geometry::sample_ppp(network.st_density, network.region, rng)) {
    StNode node;
    node.position = p;
    node.pt_distance = std::hypot(p.x, p.y);
    st.nodes.push_back(node);
  }
  for (std::size_t k = 0; k < traffic.size(); ++k)
    st.queues.emplace_back(traffic[k], stats::derive_seed(seed, k + 1));
  st.last_events.resize(traffic.size());
  return st;
}

namespace {

// d^-alpha from the squared distance; exact integer powers for the usual
// even exponents.
class PathLoss {
 public:
  explicit PathLoss(double alpha) : half_alpha_(0.5 * alpha) {
    const double rounded = std::round(half_alpha_);
    if (rounded == half_alpha_ && rounded >= 1.0 && rounded <= 8.0)
      integer_power_ = static_cast<int>(rounded);
  }

  double from_squared(double d2) const {
    if (integer_power_ > 0) {
      double v = d2;
      for (int i = 1; i < integer_power_; ++i) v *= d2;
      return 1.0 / v;
    }
    return std::pow(d2, -half_alpha_);
  }

 private:
  double half_alpha_;
  int integer_power_ = 0;
};

}  // namespace

SlotOutcome step_slot(SimState& st, Rng& rng) {
  const auto& net = st.network;
  const auto& region = net.region;
  const auto& radio = net.radio;
  const double R = region.coverage_radius;
  const geometry::Point2 pr = region.pr_position();
  const double gz2 = region.gz_radius * region.gz_radius;
  const PathLoss loss(radio.pathloss_exponent);

  auto unit = [&rng]() { return geometry::unit_uniform(rng); };
  std::exponential_distribution<double> fading(1.0);
  auto gain = [&]() { return st.unit_fading ? 1.0 : fading(rng); };

  SlotOutcome out;

  bool radiating = true;
  for (std::size_t k = 0; k < st.queues.size(); ++k) {
    const bool tx = st.queues[k].begin_slot(st.slot);
    if (k == 0 && st.harvest == HarvestMode::busy_only) radiating = tx;
  }
  out.pt_radiating = radiating;

  st.active.clear();
  // An Empty ST's new position matters only through the EH-zone test, which
  // is Bernoulli(p_eh) per ST; the charging STs are picked by geometric
  // skipping over the Empty ones instead of one draw each.
  const double p_eh = geometry::eh_zone_probability(region);
  const bool skipping = radiating && !st.freeze_positions && p_eh > 0.0 && p_eh < 1.0;
  std::geometric_distribution<std::uint64_t> skip(skipping ? p_eh : 0.5);
  std::uint64_t until_charge = skipping ? skip(rng) : 0;

  for (auto& node : st.nodes) {
    if (node.battery == Battery::Full) {
      if (!st.freeze_positions) {
        node.position = geometry::uniform_in_disk(R, rng);
        node.pt_distance = std::hypot(node.position.x, node.position.y);
      }
      ++out.full_count;
      if (geometry::squared_distance(node.position, pr) > gz2 && unit() < net.access_probability) {
        st.active.push_back(static_cast<std::size_t>(&node - st.nodes.data()));
        node.battery = Battery::Empty;
      }
    } else if (radiating) {
      bool charge = false;
      if (st.freeze_positions) {
        charge = node.pt_distance <= region.eh_radius;
      } else if (p_eh >= 1.0) {
        charge = true;
      } else if (skipping) {
        charge = until_charge == 0;
        until_charge = charge ? skip(rng) : until_charge - 1;
      }
      if (charge) node.battery = Battery::Full;
    }
  }
  out.active_st_count = st.active.size();

  // PT -> PR.
  {
    const double signal = radio.primary_power * gain() *
                          loss.from_squared(region.pr_offset * region.pr_offset);
    double interference = 0.0;
    for (std::size_t i : st.active)
      interference += radio.secondary_power * gain() *
                      loss.from_squared(geometry::squared_distance(st.nodes[i].position, pr));
    const auto s = channel::sinr(signal, interference, radio.noise_power);
    out.primary_sinr = s.value_or(std::numeric_limits<double>::quiet_NaN());
    out.channel_success = s && *s > radio.sinr_threshold;
  }

  // ST -> SR for every active pair.
  if (!st.active.empty()) {
    const double ds = net.sr_distance;
    const double own_loss = loss.from_squared(ds * ds);
    for (std::size_t i : st.active) {
      auto& node = st.nodes[i];
      node.sr_offset = geometry::random_direction(rng);
      const geometry::Point2 sr{node.position.x + ds * node.sr_offset.x,
                                node.position.y + ds * node.sr_offset.y};
      bool success = false;
      if (st.unit_fading) {
        const double signal = radio.secondary_power * own_loss;
        double interference = 0.0;
        for (std::size_t j : st.active)
          if (j != i)
            interference +=
                radio.secondary_power * loss.from_squared(geometry::squared_distance(st.nodes[j].position, sr));
        if (radiating) interference += radio.primary_power * loss.from_squared(sr.x * sr.x + sr.y * sr.y);
        const auto s = channel::sinr(signal, interference, radio.noise_power);
        success = s && *s > radio.sinr_threshold;
      } else {
        // Rayleigh gains on every link: given the positions, the success event
        // has probability exp(-k sigma^2) prod_j 1 / (1 + k P_j l_j) with
        // k = theta / (P_s l_own), so one uniform replaces all the gain draws.
        const double k = radio.sinr_threshold / (radio.secondary_power * own_loss);
        double denom = 1.0;
        for (std::size_t j : st.active)
          if (j != i)
            denom *= 1.0 + k * radio.secondary_power *
                               loss.from_squared(geometry::squared_distance(st.nodes[j].position, sr));
        if (radiating) denom *= 1.0 + k * radio.primary_power * loss.from_squared(sr.x * sr.x + sr.y * sr.y);
        success = unit() < std::exp(-k * radio.noise_power) / denom;
      }
      ++out.secondary_attempts;
      if (success) ++out.secondary_successes;
    }
  }

  for (std::size_t k = 0; k < st.queues.size(); ++k) {
    st.last_events[k] = st.queues[k].finish_slot(out.channel_success, st.slot);
    if (k == 0) {
      out.primary_attempted = st.last_events[k].transmitting;
      out.primary_success = st.last_events[k].delivered;
      out.dropped_packet = st.last_events[k].dropped;
    }
  }
  ++st.slot;
  return out;
}

namespace {

struct PolicySeries {
  stats::BatchSeries age;
  stats::BatchSeries drop;
  stats::BatchSeries arrivals;
};

struct RunSeries {
  stats::BatchSeries mu_p, p_sx, p_tr, p_ch, throughput;
  std::vector<PolicySeries> policies;
};

void resize_all(RunSeries& rs, std::size_t batches, std::size_t probes) {
  for (auto* s : {&rs.mu_p, &rs.p_sx, &rs.p_tr, &rs.p_ch, &rs.throughput}) s->resize(batches);
  rs.policies.resize(probes);
  for (auto& p : rs.policies) {
    p.age.resize(batches);
    p.drop.resize(batches);
    p.arrivals.resize(batches);
  }
}

void append_all(RunSeries& into, const RunSeries& from) {
  into.mu_p.append(from.mu_p);
  into.p_sx.append(from.p_sx);
  into.p_tr.append(from.p_tr);
  into.p_ch.append(from.p_ch);
  into.throughput.append(from.throughput);
  if (into.policies.size() < from.policies.size()) into.policies.resize(from.policies.size());
  for (std::size_t k = 0; k < from.policies.size(); ++k) {
    into.policies[k].age.append(from.policies[k].age);
    into.policies[k].drop.append(from.policies[k].drop);
    into.policies[k].arrivals.append(from.policies[k].arrivals);
  }
}

}  // namespace

SimMetrics simulate(const NetworkConfig& network, std::span<const TrafficConfig> traffic,
                    const SimOptions& options) {
  network.validate();
  for (const auto& t : traffic) t.validate();
  if (options.slots < 10'000) throw std::invalid_argument("simulation needs at least 10^4 slots");
  if (options.replications < 1) throw std::invalid_argument("replications must be >= 1");
  if (options.batches < 20) throw std::invalid_argument("at least 20 batches are required");
  if (!(options.warmup_fraction >= 0.0 && options.warmup_fraction < 1.0))
    throw std::invalid_argument("warmup fraction must lie in [0,1)");

  const auto warmup = static_cast<std::uint64_t>(options.warmup_fraction * options.slots);
  const std::uint64_t measured = options.slots - warmup;
  const std::size_t B = options.batches;
  const double area = std::numbers::pi * network.region.coverage_radius *
                      network.region.coverage_radius;

  SimMetrics metrics;
  metrics.slots_run = options.slots;
  metrics.replications = options.replications;
  metrics.policies.resize(traffic.size());
  for (std::size_t k = 0; k < traffic.size(); ++k) metrics.policies[k].traffic = traffic[k];

  RunSeries pooled;
  for (std::uint64_t rep = 0; rep < options.replications; ++rep) {
    const std::uint64_t rep_seed = stats::derive_seed(options.seed, rep);
    Rng rng(stats::derive_seed(rep_seed, 0));
    SimState st = make_state(network, traffic, options.harvest, rep_seed, rng);
    if (rep == 0) metrics.st_count = st.nodes.size();
    const double n_st = static_cast<double>(st.nodes.size());

    std::ostream* trace = rep == 0 ? options.trace : nullptr;
    if (trace) *trace << "slot,queue_len,age,active_count,primary_success\n";

    RunSeries rs;
    resize_all(rs, B, traffic.size());
    for (std::uint64_t t = 0; t < options.slots; ++t) {
      const SlotOutcome out = step_slot(st, rng);
      if (trace) {
        *trace << t << ',' << (st.queues.empty() ? 0 : st.queues[0].size()) << ','
               << (st.queues.empty() ? 0 : st.queues[0].age()) << ',' << out.active_st_count << ','
               << (out.primary_success ? 1 : 0) << '\n';
      }
      if (t < warmup) continue;
      const auto b = static_cast<std::size_t>((t - warmup) * B / measured);
      rs.mu_p.add(b, out.channel_success ? 1.0 : 0.0);
      if (n_st > 0.0) {
        rs.p_ch.add(b, static_cast<double>(out.full_count), n_st);
        rs.p_tr.add(b, static_cast<double>(out.active_st_count), n_st);
      }
      rs.p_sx.add(b, static_cast<double>(out.secondary_successes),
                  static_cast<double>(out.secondary_attempts));
      rs.throughput.add(b, static_cast<double>(out.secondary_successes) / area);
      for (std::size_t k = 0; k < st.queues.size(); ++k) {
        const auto& ev = st.last_events[k];
        auto& ps = rs.policies[k];
        ps.age.add(b, static_cast<double>(st.queues[k].age()));
        if (ev.arrived) ps.drop.add(b, ev.dropped ? 1.0 : 0.0, 1.0);
        ps.arrivals.add(b, ev.arrived ? 1.0 : 0.0);
      }
      const bool batch_end =
          t + 1 == options.slots ||
          static_cast<std::size_t>((t + 1 - warmup) * B / measured) != b;
      if (rep == 0 && batch_end)
        for (std::size_t k = 0; k < st.queues.size(); ++k)
          metrics.policies[k].queue_trace.push_back(st.queues[k].size());
    }

    for (std::size_t k = 0; k < st.queues.size(); ++k) {
      auto& pm = metrics.policies[k];
      pm.arrivals += st.queues[k].arrivals();
      pm.delivered += st.queues[k].delivered();
      pm.dropped += st.queues[k].dropped();
      pm.in_system += st.queues[k].size();
    }
    append_all(pooled, rs);
  }

  metrics.mu_p = pooled.mu_p.estimate();
  metrics.p_sx = pooled.p_sx.estimate();
  metrics.p_tr = pooled.p_tr.estimate();
  metrics.p_ch = pooled.p_ch.estimate();
  metrics.throughput = pooled.throughput.estimate();
  for (std::size_t k = 0; k < traffic.size(); ++k) {
    auto& pm = metrics.policies[k];
    pm.mean_age = pooled.policies[k].age.estimate();
    pm.drop = pooled.policies[k].drop.estimate();
    pm.arrival_rate = pooled.policies[k].arrivals.estimate();
    pm.diverged = pm.traffic.policy == PolicyKind::FCFS && pm.arrival_rate.mean >= metrics.mu_p.mean;
  }
  return metrics;
}

SimMetrics run_simulation(const NetworkConfig& network, const TrafficConfig& traffic,
                          std::uint64_t slots, std::uint64_t seed) {
  SimOptions opt;
  opt.slots = slots;
  opt.seed = seed;
  return simulate(network, std::span<const TrafficConfig>(&traffic, 1), opt);
}

const PolicyMetrics& SimMetrics::policy(PolicyKind kind) const {
  for (const auto& p : policies)
    if (p.traffic.policy == kind) return p;
  throw std::out_of_range("policy not simulated");
}

}  // namespace ehaoi::sim
