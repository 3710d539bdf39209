#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "ehaoi/analysis.hpp"
#include "ehaoi/markov.hpp"
#include "ehaoi/sim.hpp"

using namespace ehaoi;
using namespace ehaoi::sim;

namespace {

// No secondary users; noise alone sets mu_p.
NetworkConfig pure_noise(double mu_p) {
  NetworkConfig net;
  net.st_density = 0.0;
  const auto& r = net.radio;
  net.radio.noise_power = -std::log(mu_p) * r.primary_power /
                          (r.sinr_threshold * std::pow(net.region.pr_offset, r.pathloss_exponent));
  return net;
}

TrafficConfig traffic(PolicyKind p, double rate) {
  TrafficConfig t;
  t.policy = p;
  t.arrival_rate = rate;
  return t;
}

SimOptions options(std::uint64_t slots, std::uint64_t seed = 1) {
  SimOptions o;
  o.slots = slots;
  o.seed = seed;
  return o;
}

bool within_sigmas(const stats::Estimate& e, double target, double k = 3.0) {
  return std::abs(e.mean - target) <= k * e.std_error;
}

}  // namespace

TEST_CASE("age update") {
  CHECK(age_update(7, std::nullopt, 20) == 8);
  CHECK(age_update(7, 14, 14) == 1);
  CHECK(age_update(3, 10, 14) == 5);
}

TEST_CASE("runs are deterministic for a fixed seed") {
  NetworkConfig net;
  const std::vector<TrafficConfig> t{traffic(PolicyKind::FCFS, 0.2), traffic(PolicyKind::QR, 0.2),
                                     traffic(PolicyKind::GW, 0.2)};
  const auto a = simulate(net, t, options(20'000, 42));
  const auto b = simulate(net, t, options(20'000, 42));
  const auto c = simulate(net, t, options(20'000, 43));
  CHECK(a.mu_p.mean == b.mu_p.mean);
  CHECK(a.p_sx.mean == b.p_sx.mean);
  CHECK(a.p_sx.std_error == b.p_sx.std_error);
  CHECK(a.st_count == b.st_count);
  for (std::size_t k = 0; k < t.size(); ++k) {
    CHECK(a.policies[k].mean_age.mean == b.policies[k].mean_age.mean);
    CHECK(a.policies[k].delivered == b.policies[k].delivered);
  }
  CHECK(a.mu_p.mean != c.mu_p.mean);
}

TEST_CASE("packets are conserved under every policy") {
  NetworkConfig net;
  for (double rate : {0.1, 0.5, 0.95}) {
    const std::vector<TrafficConfig> t{traffic(PolicyKind::FCFS, rate), traffic(PolicyKind::QR, rate),
                                       traffic(PolicyKind::GW, rate)};
    const auto m = simulate(net, t, options(20'000, 5));
    for (const auto& pm : m.policies) {
      INFO(aoi::to_string(pm.traffic.policy) << " rate=" << rate);
      CHECK(pm.conserved());
      CHECK(pm.arrivals > 0);
    }
  }
}

TEST_CASE("queues respect their capacities") {
  NetworkConfig net = pure_noise(0.5);
  const std::vector<TrafficConfig> t{traffic(PolicyKind::FCFS, 0.45), traffic(PolicyKind::QR, 0.8),
                                     traffic(PolicyKind::GW, 0.5)};
  Rng rng(1);
  auto st = make_state(net, t, HarvestMode::always, 1, rng);
  std::size_t prev = 0;
  for (int n = 0; n < 100'000; ++n) {
    step_slot(st, rng);
    const std::size_t len = st.queues[0].size();
    REQUIRE(len + 1 >= prev);
    REQUIRE(len <= prev + 1);
    prev = len;
    REQUIRE(st.queues[1].size() <= 2);
    REQUIRE(st.queues[2].size() == 0);  // a GW sample never outlives its slot
  }
}

TEST_CASE("idle slot: nothing to send, nobody charged") {
  NetworkConfig net = pure_noise(0.9);
  const std::vector<TrafficConfig> t{traffic(PolicyKind::FCFS, 0.2)};
  Rng rng(3);
  auto st = make_state(net, t, HarvestMode::always, 3, rng);
  const auto out = step_slot(st, rng);
  CHECK(out.full_count == 0);
  CHECK(out.active_st_count == 0);
  CHECK_FALSE(out.primary_attempted);
  CHECK_FALSE(out.primary_success);
  CHECK(out.secondary_attempts == 0);
  CHECK(out.secondary_successes == 0);
  CHECK_FALSE(out.dropped_packet);
}

TEST_CASE("unit-gain hook reproduces the hand-computed primary SINR") {
  NetworkConfig net;
  net.st_density = 0.0;
  net.access_probability = 1.0;
  const std::vector<TrafficConfig> t{traffic(PolicyKind::FCFS, 0.2)};
  Rng rng(4);
  auto st = make_state(net, t, HarvestMode::always, 4, rng);
  StNode node;
  node.position = {0.0, 50.0};  // 150 m from the PR, outside the guard zone
  node.pt_distance = 50.0;
  node.battery = Battery::Full;
  st.nodes.push_back(node);
  st.unit_fading = true;
  st.freeze_positions = true;

  const auto out = step_slot(st, rng);
  REQUIRE(out.active_st_count == 1);
  const auto& r = net.radio;
  const double expected = r.primary_power * std::pow(200.0, -4.0) /
                          (r.noise_power + r.secondary_power * std::pow(150.0, -4.0));
  CHECK(out.primary_sinr == doctest::Approx(expected).epsilon(1e-12));
  CHECK(st.nodes[0].battery == Battery::Empty);

  // Next slot: it sits inside the EH zone and recharges, but is not active.
  const auto out2 = step_slot(st, rng);
  CHECK(out2.active_st_count == 0);
  CHECK(st.nodes[0].battery == Battery::Full);
}

TEST_CASE("noise-free channel without secondary users") {
  NetworkConfig net;
  net.st_density = 0.0;
  net.radio.noise_power = 0.0;
  TrafficConfig gw = traffic(PolicyKind::GW, 0.2);
  gw.sampling_rate = 1.0;
  const auto m = run_simulation(net, gw, 20'000, 9);
  CHECK(m.mu_p.mean == 1.0);
  CHECK(m.policies[0].mean_age.mean == 1.0);
  CHECK(m.throughput.mean == 0.0);
}

TEST_CASE("pure-noise channel matches its closed form") {
  NetworkConfig net = pure_noise(0.8);
  const auto m = run_simulation(net, traffic(PolicyKind::GW, 0.3), 400'000, 10);
  CHECK(within_sigmas(m.mu_p, 0.8));
}

TEST_CASE("battery and access fractions match the two-state chain") {
  NetworkConfig net;
  const auto m = run_simulation(net, traffic(PolicyKind::FCFS, 0.2), 200'000, 11);
  const auto access = markov::make_access(0.0256, 0.0576, 0.5);
  INFO("p_ch " << m.p_ch.mean << " +- " << m.p_ch.std_error << " vs " << access.p_ch);
  INFO("p_tr " << m.p_tr.mean << " +- " << m.p_tr.std_error << " vs " << access.p_tr);
  CHECK(within_sigmas(m.p_ch, access.p_ch));
  CHECK(within_sigmas(m.p_tr, access.p_tr));
  CHECK(std::abs(m.p_tr.mean / access.p_tr - 1.0) < 0.02);
}

TEST_CASE("QR drop rate is the per-arrival loss pi_2 (1 - mu_p)") {
  NetworkConfig net = pure_noise(0.5);
  const auto m = run_simulation(net, traffic(PolicyKind::QR, 0.2), 1'000'000, 12);
  const auto& drop = m.policies[0].drop;
  const double mu = m.mu_p.mean;
  CHECK(within_sigmas(drop, markov::drop_probability(0.2, mu, markov::DropForm::per_arrival)));
  CHECK_FALSE(within_sigmas(drop, markov::drop_probability(0.2, mu, markov::DropForm::closed_form)));
  CHECK_FALSE(within_sigmas(drop, markov::drop_probability(0.2, mu, markov::DropForm::definitional)));
}

TEST_CASE("GW renewal identity") {
  NetworkConfig net = pure_noise(0.85);
  const auto m = run_simulation(net, traffic(PolicyKind::GW, 0.2), 1'000'000, 13);
  CHECK(std::abs(m.policies[0].mean_age.mean * m.mu_p.mean * 0.2 - 1.0) < 0.01);
}

TEST_CASE("FCFS queue formula with the empirical mu_p") {
  NetworkConfig net = pure_noise(0.6);
  const auto m = run_simulation(net, traffic(PolicyKind::FCFS, 0.2), 1'000'000, 14);
  const auto age = analytic_age(PolicyKind::FCFS, traffic(PolicyKind::FCFS, 0.2), m.mu_p.mean);
  REQUIRE(age);
  CHECK(std::abs(m.policies[0].mean_age.mean / *age - 1.0) < 0.02);
}

TEST_CASE("overloaded FCFS is flagged, not thrown") {
  NetworkConfig net = pure_noise(0.5);
  const auto m = run_simulation(net, traffic(PolicyKind::FCFS, 0.7), 20'000, 15);
  CHECK(m.policies[0].diverged);
  CHECK(m.policies[0].queue_trace.size() == 20);
  CHECK(m.policies[0].queue_trace.back() > m.policies[0].queue_trace.front());
}

TEST_CASE("confidence half-widths shrink with replications") {
  NetworkConfig net = pure_noise(0.7);
  const std::vector<TrafficConfig> t{traffic(PolicyKind::GW, 0.3)};
  auto one = options(100'000, 16);
  auto ten = one;
  ten.replications = 10;
  const auto a = simulate(net, t, one);
  const auto b = simulate(net, t, ten);
  CHECK(b.mu_p.batches == 10 * a.mu_p.batches);
  const double ratio = b.mu_p.ci_halfwidth / a.mu_p.ci_halfwidth;
  INFO("ratio " << ratio << " vs " << 1 / std::sqrt(10.0));
  CHECK(ratio > 0.5 / std::sqrt(10.0));
  CHECK(ratio < 1.6 / std::sqrt(10.0));
}

TEST_CASE("busy-only harvesting charges fewer STs") {
  NetworkConfig net;
  auto opt = options(50'000, 17);
  const std::vector<TrafficConfig> t{traffic(PolicyKind::FCFS, 0.2)};
  const auto always = simulate(net, t, opt);
  opt.harvest = HarvestMode::busy_only;
  const auto busy = simulate(net, t, opt);
  CHECK(busy.p_ch.mean < 0.5 * always.p_ch.mean);
}

TEST_CASE("trace output") {
  NetworkConfig net = pure_noise(0.9);
  std::ostringstream trace;
  auto opt = options(10'000, 18);
  opt.trace = &trace;
  const std::vector<TrafficConfig> t{traffic(PolicyKind::FCFS, 0.2)};
  simulate(net, t, opt);
  std::istringstream in(trace.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "slot,queue_len,age,active_count,primary_success");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 10'000);
}

TEST_CASE("input checks") {
  NetworkConfig net;
  CHECK_THROWS_AS(run_simulation(net, traffic(PolicyKind::FCFS, 0.2), 9'999, 1), std::invalid_argument);
  net.access_probability = 1.5;
  CHECK_THROWS_AS(run_simulation(net, traffic(PolicyKind::FCFS, 0.2), 10'000, 1), std::invalid_argument);
}
