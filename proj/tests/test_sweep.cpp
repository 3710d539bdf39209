#include <doctest.h>

#include <map>
#include <stdexcept>
#include <utility>

#include "ehaoi/sweep.hpp"

using namespace ehaoi;

TEST_CASE("axis parsing") {
  const auto list = parse_axis("lambda_s=1e-3,2e-3");
  CHECK(list.param == SweepParam::lambda_s);
  CHECK(list.values == std::vector<double>{1e-3, 2e-3});

  const auto range = parse_axis("p_s=0.05:0.95:0.05");
  CHECK(range.values.size() == 19);
  CHECK(range.values.front() == 0.05);
  CHECK(range.values.back() == 0.95);

  CHECK(parse_axis("r_eh=0:100:30").values == std::vector<double>{0, 30, 60, 90});
  CHECK_THROWS_AS(parse_axis("p_s"), std::invalid_argument);
  CHECK_THROWS_AS(parse_axis("bogus=1,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_axis("p_s=0.1,x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_axis("p_s=0.5:0.1:0.1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_axis("p_s=0:1:0"), std::invalid_argument);
}

TEST_CASE("grid limits and ranges are enforced before any work") {
  const Scenario base = default_scenario();
  SweepSpec spec;
  spec.axis1 = parse_axis("p_s=0.0001:1:0.0001");
  spec.axis2 = parse_axis("lambda_s=1e-3,2e-3");
  CHECK_THROWS_WITH_AS(spec.validate(base), doctest::Contains("limit"), std::invalid_argument);

  SweepSpec bad;
  bad.axis1 = parse_axis("p_s=0.5,1.5");
  CHECK_THROWS_WITH_AS(run_sweep(base, bad), doctest::Contains("p_s=1.5"), std::invalid_argument);

  SweepSpec same;
  same.axis1 = parse_axis("p_s=0.5");
  same.axis2 = parse_axis("p_s=0.6");
  CHECK_THROWS_AS(same.validate(base), std::invalid_argument);
  CHECK_THROWS_AS(sweep_preset("fig11"), std::invalid_argument);
}

TEST_CASE("rows come out axis2-major, then axis1, then policy") {
  SweepSpec spec;
  spec.axis1 = parse_axis("p_s=0.2,0.4,0.6");
  spec.axis2 = parse_axis("lambda_s=1e-3,2e-3");
  spec.policies = {PolicyKind::GW, PolicyKind::FCFS};
  const auto rows = run_sweep(default_scenario(), spec);
  REQUIRE(rows.size() == 12);
  std::size_t i = 0;
  for (double ls : {1e-3, 2e-3})
    for (double ps : {0.2, 0.4, 0.6})
      for (PolicyKind p : {PolicyKind::GW, PolicyKind::FCFS}) {
        CHECK(*rows[i].axis2_value == ls);
        CHECK(rows[i].axis1_value == ps);
        CHECK(rows[i].policy == p);
        CHECK(rows[i].status == "ok");
        ++i;
      }
}

TEST_CASE("fig10 grid: GW lowest, QR below FCFS") {
  const auto rows = run_sweep(default_scenario(), sweep_preset("fig10"));
  std::map<std::pair<double, double>, std::map<PolicyKind, double>> grid;
  for (const auto& r : rows) {
    REQUIRE(r.aoi_analytic);
    grid[{*r.axis2_value, r.axis1_value}][r.policy] = *r.aoi_analytic;
  }
  CHECK(grid.size() == 38);
  for (const auto& [key, age] : grid) {
    INFO("lambda_s=" << key.first << " p_s=" << key.second);
    CHECK(age.at(PolicyKind::GW) <= age.at(PolicyKind::QR));
    CHECK(age.at(PolicyKind::GW) <= age.at(PolicyKind::FCFS));
    CHECK(age.at(PolicyKind::QR) <= age.at(PolicyKind::FCFS));
  }
}

TEST_CASE("FCFS age surfaces: rising in r_eh, falling in r_gz") {
  for (auto [preset, rising] : {std::pair{"reh-surface", true}, std::pair{"rgz-surface", false}}) {
    SweepSpec spec = sweep_preset(preset);
    spec.policies = {PolicyKind::FCFS};
    const auto rows = run_sweep(default_scenario(), spec);
    // Along axis2 the stride is the axis1 length.
    const std::size_t n1 = spec.axis1.values.size();
    for (std::size_t i = n1; i < rows.size(); ++i) {
      INFO(preset << " p_s=" << rows[i].axis1_value << " at " << *rows[i].axis2_value);
      REQUIRE(rows[i].aoi_analytic);
      const double d = *rows[i].aoi_analytic - *rows[i - n1].aoi_analytic;
      CHECK((rising ? d : -d) >= -1e-12);
    }
  }
}

TEST_CASE("simulated sweeps do not depend on the worker count") {
  Scenario base = default_scenario();
  base.sim.slots = 10'000;
  base.sim.replications = 1;
  SweepSpec spec;
  spec.axis1 = parse_axis("p_s=0.3,0.6,0.9");
  spec.axis2 = parse_axis("lambda=0.1,0.2");
  spec.mode = SweepMode::both;
  const auto a = run_sweep(base, spec, 1);
  const auto b = run_sweep(base, spec, 3);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].aoi_sim == b[i].aoi_sim);
    CHECK(a[i].mu_p_sim == b[i].mu_p_sim);
    CHECK(a[i].aoi_analytic == b[i].aoi_analytic);
  }
  CHECK(a[0].mu_p_sim != a[3].mu_p_sim);  // points get their own streams
}

TEST_CASE("unstable cells are reported, not dropped") {
  SweepSpec spec;
  spec.axis1 = parse_axis("lambda=0.5,0.95");
  spec.policies = {PolicyKind::FCFS};
  const auto rows = run_sweep(default_scenario(), spec);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].stable);
  CHECK_FALSE(rows[1].stable);
  CHECK_FALSE(rows[1].aoi_analytic);
}
