#include "ehaoi/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ehaoi/analysis.hpp"
#include "ehaoi/sim.hpp"
#include "ehaoi/stats.hpp"

namespace ehaoi {

std::string_view to_string(SweepParam p) {
  switch (p) {
    case SweepParam::p_s: return "p_s";
    case SweepParam::r_eh: return "r_eh";
    case SweepParam::r_gz: return "r_gz";
    case SweepParam::lambda: return "lambda";
    case SweepParam::lambda_s: return "lambda_s";
    case SweepParam::theta: return "theta";
    case SweepParam::q: return "q";
  }
  return "?";
}

std::string_view to_string(SweepMode m) {
  switch (m) {
    case SweepMode::analytic: return "analytic";
    case SweepMode::simulate: return "simulate";
    case SweepMode::both: return "both";
  }
  return "?";
}

SweepParam parse_sweep_param(std::string_view name) {
  for (SweepParam p : {SweepParam::p_s, SweepParam::r_eh, SweepParam::r_gz, SweepParam::lambda,
                       SweepParam::lambda_s, SweepParam::theta, SweepParam::q})
    if (to_string(p) == name) return p;
  throw std::invalid_argument("unknown sweep parameter '" + std::string(name) +
                              "' (expected p_s, r_eh, r_gz, lambda, lambda_s, theta or q)");
}

SweepMode parse_sweep_mode(std::string_view name) {
  for (SweepMode m : {SweepMode::analytic, SweepMode::simulate, SweepMode::both})
    if (to_string(m) == name) return m;
  throw std::invalid_argument("unknown sweep mode '" + std::string(name) + "'");
}

std::size_t SweepSpec::points() const {
  return axis1.values.size() * (axis2 ? axis2->values.size() : 1);
}

namespace {

void check_axis(const SweepAxis& axis, const Scenario& base) {
  if (axis.values.empty())
    throw std::invalid_argument("sweep axis " + std::string(to_string(axis.param)) + " has no values");
  for (double v : axis.values) {
    Scenario probe = base;
    apply_param(probe, axis.param, v);
    try {
      probe.validate();
    } catch (const std::invalid_argument& e) {
      std::ostringstream msg;
      msg << "sweep value " << to_string(axis.param) << "=" << v << " is out of range: " << e.what();
      throw std::invalid_argument(msg.str());
    }
  }
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

}  // namespace

void SweepSpec::validate(const Scenario& base) const {
  check_axis(axis1, base);
  if (axis2) {
    check_axis(*axis2, base);
    if (axis2->param == axis1.param) throw std::invalid_argument("sweep axes must differ");
  }
  if (points() > kMaxSweepPoints)
    throw std::invalid_argument("sweep grid has " + std::to_string(points()) +
                                " points (limit " + std::to_string(kMaxSweepPoints) + ")");
  if (policies.empty()) throw std::invalid_argument("sweep needs at least one policy");
}

SweepAxis parse_axis(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos)
    throw std::invalid_argument("axis must look like name=v1,v2 or name=start:stop:step");
  SweepAxis axis;
  axis.param = parse_sweep_param(text.substr(0, eq));
  const std::string body(text.substr(eq + 1));
  if (body.find(':') != std::string::npos) {
    std::stringstream ss(body);
    std::string a, b, c;
    std::getline(ss, a, ':');
    std::getline(ss, b, ':');
    std::getline(ss, c, ':');
    const double start = parse_number(a), stop = parse_number(b), step = parse_number(c);
    if (!(step > 0.0) || stop < start) throw std::invalid_argument("range needs step > 0 and stop >= start");
    const double span = (stop - start) / step;
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9));
    if (n + 1 > kMaxSweepPoints) throw std::invalid_argument("axis range has too many values");
    for (std::size_t i = 0; i <= n; ++i) axis.values.push_back(start + static_cast<double>(i) * step);
    // Snap the last value when the range divides evenly.
    if (std::abs(span - std::round(span)) < 1e-9) axis.values.back() = stop;
  } else {
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) axis.values.push_back(parse_number(item));
  }
  if (axis.values.empty()) throw std::invalid_argument("axis has no values");
  return axis;
}

void apply_param(Scenario& sc, SweepParam param, double value) {
  switch (param) {
    case SweepParam::p_s: sc.network.access_probability = value; break;
    case SweepParam::r_eh: sc.network.region.eh_radius = value; break;
    case SweepParam::r_gz: sc.network.region.gz_radius = value; break;
    case SweepParam::lambda: sc.arrival_rate = value; break;
    case SweepParam::lambda_s: sc.network.st_density = value; break;
    case SweepParam::theta: sc.network.radio.sinr_threshold = value; break;
    case SweepParam::q: sc.sampling_rate = value; break;
  }
}

namespace {

std::vector<ResultRow> evaluate_point(const Scenario& base, const SweepSpec& spec,
                                      std::size_t i1, std::size_t i2, std::uint64_t point_seed) {
  Scenario sc = base;
  sc.policies = spec.policies;
  apply_param(sc, spec.axis1.param, spec.axis1.values[i1]);
  if (spec.axis2) apply_param(sc, spec.axis2->param, spec.axis2->values[i2]);

  std::vector<ResultRow> rows(spec.policies.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rows[k].axis1_index = i1;
    rows[k].axis2_index = i2;
    rows[k].axis1_value = spec.axis1.values[i1];
    if (spec.axis2) rows[k].axis2_value = spec.axis2->values[i2];
    rows[k].policy = spec.policies[k];
  }

  try {
    const AnalyticReport rep = analyze(sc.network, sc.arrival_rate, sc.sampling_rate, sc.policies);
    for (auto& row : rows) {
      const auto* r = rep.find(row.policy);
      row.stable = r && r->stable;
      row.mu_p_analytic = rep.mu_p;
      row.throughput_analytic = rep.throughput;
      if (spec.mode != SweepMode::simulate && r) row.aoi_analytic = r->mean_age;
    }
    if (spec.mode != SweepMode::analytic) {
      sim::SimOptions opt;
      opt.slots = sc.sim.slots;
      opt.replications = sc.sim.replications;
      opt.seed = point_seed;
      opt.harvest = sc.sim.harvest;
      const auto traffic = sc.traffic();
      const auto m = sim::simulate(sc.network, traffic, opt);
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& pm = m.policies[k];
        rows[k].mu_p_sim = m.mu_p.mean;
        rows[k].throughput_sim = m.throughput.mean;
        if (pm.mean_age.observed()) {
          rows[k].aoi_sim = pm.mean_age.mean;
          rows[k].aoi_sim_ci = pm.mean_age.ci_halfwidth;
        }
        if (pm.diverged) rows[k].status = "diverged";
      }
    }
  } catch (const std::exception& e) {
    for (auto& row : rows) row.status = std::string("error: ") + e.what();
  }
  return rows;
}

}  // namespace

std::vector<ResultRow> run_sweep(const Scenario& base, const SweepSpec& spec, unsigned jobs) {
  spec.validate(base);
  const std::size_t n1 = spec.axis1.values.size();
  const std::size_t n = spec.points();
  std::vector<std::vector<ResultRow>> per_point(n);

  // Point index is axis2-major, so per_point is already in output order.
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t idx = next++; idx < n; idx = next++) {
      per_point[idx] = evaluate_point(base, spec, idx % n1, idx / n1,
                                      stats::derive_seed(base.sim.seed, idx));
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<ResultRow> rows;
  rows.reserve(n * spec.policies.size());
  for (auto& point : per_point)
    for (auto& r : point) rows.push_back(std::move(r));
  return rows;
}

SweepSpec sweep_preset(std::string_view name) {
  SweepSpec spec;
  spec.axis1 = parse_axis("p_s=0.05:0.95:0.05");
  if (name == "fig10") {
    spec.axis2 = SweepAxis{SweepParam::lambda_s, {1e-3, 2e-3}};
  } else if (name == "reh-surface") {
    spec.axis2 = parse_axis("r_eh=0:500:25");
  } else if (name == "rgz-surface") {
    spec.axis2 = parse_axis("r_gz=0:480:20");
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) +
                                "' (expected fig10, reh-surface or rgz-surface)");
  }
  return spec;
}

}  // namespace ehaoi
