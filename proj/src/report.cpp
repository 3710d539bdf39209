#include "ehaoi/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace ehaoi::report {

std::string number(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", *v);
  return buf;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_manifest(std::ostream& os, const Manifest& m) {
  os << "# ehaoi " << m.command << "\n"
     << "# schema_version=" << kScenarioSchemaVersion << "\n"
     << "# tool_version=" << EHAOI_VERSION << "\n"
     << "# seed=" << m.seed << "\n";
  if (!m.extra.empty()) os << m.extra;
}

namespace {

struct KeyValue {
  std::ostream& os;

  void operator()(std::string_view key, const std::string& value, std::string_view label = {}) {
    os << key << '=' << value;
    if (!label.empty()) os << "  # " << label;
    os << '\n';
  }
  void operator()(std::string_view key, std::optional<double> value, std::string_view label = {}) {
    (*this)(key, number(value), label);
  }
};

void write_inputs(KeyValue& kv, const Scenario& sc) {
  const auto& n = sc.network;
  kv("R", n.region.coverage_radius, "coverage radius [m]");
  kv("d_p", n.region.pr_offset, "PT-PR distance [m]");
  kv("d_s", n.sr_distance, "ST-SR distance [m]");
  kv("lambda_s", n.st_density, "ST density [1/m^2]");
  kv("r_eh", n.region.eh_radius, "EH zone radius [m]");
  kv("r_gz", n.region.gz_radius, "guard zone radius [m]");
  kv("P_p", n.radio.primary_power, "[W]");
  kv("P_s", n.radio.secondary_power, "[W]");
  kv("alpha", n.radio.pathloss_exponent);
  kv("sigma2", n.radio.noise_power, "[W]");
  kv("theta_linear", n.radio.sinr_threshold);
  kv("theta_db", channel::linear_to_db(n.radio.sinr_threshold));
  kv("p_s", n.access_probability, "ST access probability");
  kv("lambda", sc.arrival_rate, "PT arrival rate");
  kv("q", sc.sampling_rate.value_or(sc.arrival_rate), "GW sampling rate");
  if (n.radio.secondary_power_dominates()) kv("warning", std::string("P_s exceeds P_p"));
}

std::string policy_key(std::string_view prefix, PolicyKind p) {
  return std::string(prefix) + std::string(aoi::to_string(p));
}

}  // namespace

void write_analytic_report(std::ostream& os, const Scenario& sc, const AnalyticReport& r) {
  KeyValue kv{os};
  write_manifest(os, {"analyze", sc.sim.seed, {}});
  write_inputs(kv, sc);
  kv("p_eh", r.p_eh, "r_eh^2 / R^2");
  kv("p_gz", r.p_gz, "guard-disk area / coverage area");
  kv("p_ch", r.p_ch, "p_eh / (p_eh + p_s - p_gz p_s)");
  kv("p_tr", r.p_tr, "p_ch (1 - p_gz) p_s");
  kv("lambda_a", r.active_density, "lambda_s p_tr");
  kv("laplace_interference", r.laplace, "L_I*(theta d_p^alpha P_s / P_p, lambda_a, r_gz)");
  kv("noise_factor", r.noise_factor, "exp(-theta sigma^2 d_p^alpha / P_p)");
  kv("mu_p", r.mu_p, "L_I* x noise factor");
  kv("E_d_pi", r.mean_pt_sr_distance, "2R/3");
  kv("p_sx", r.p_sx, "PGFL approximation with E[d_p,i]");
  kv("throughput", r.throughput, "lambda_s p_tr p_sx [packets/slot/m^2]");
  kv("fcfs_stable", std::string(r.fcfs_stable ? "yes" : "no"), "lambda < mu_p");
  if (r.fcfs_stable) {
    kv("fcfs_pi0", r.fcfs.probability(0), "Geo/Geo/1 steady state");
    kv("fcfs_pi1", r.fcfs.probability(1));
    kv("fcfs_rho", r.fcfs.rho, "pi_n = rho^(n-1) pi_1");
  } else {
    kv("fcfs_pi0", std::string("unstable"));
  }
  if (r.qr) {
    kv("qr_pi0", r.qr->pi[0], "replacement-queue steady state");
    kv("qr_pi1", r.qr->pi[1]);
    kv("qr_pi2", r.qr->pi[2]);
  }
  kv("p_d_closed", r.p_d_closed, "drop probability, closed form");
  kv("p_d_definitional", r.p_d_definitional, "pi_1 lambda (1 - mu_p) + pi_2 (1 - s)");
  kv("lambda_e", r.lambda_e, "lambda (1 - p_d)");
  for (const auto& a : r.aoi) {
    const auto key = policy_key("aoi_", a.policy);
    std::string_view label = a.policy == PolicyKind::FCFS ? "Geo/Geo/1 FCFS mean age [slots]"
                             : a.policy == PolicyKind::QR ? "queue-with-replacement mean age [slots]"
                                                          : "1 / (mu_p q) [slots]";
    if (!a.stable)
      kv(key, std::string("unstable"), label);
    else
      kv(key, a.mean_age, label);
    if (a.suspect) kv(key + "_warning", std::string("formula returned a non-finite or sub-one age"));
  }
}

void write_sim_report(std::ostream& os, const Scenario& sc, const sim::SimMetrics& m) {
  KeyValue kv{os};
  std::ostringstream extra;
  extra << "# slots=" << m.slots_run << " replications=" << m.replications << "\n";
  write_manifest(os, {"simulate", sc.sim.seed, extra.str()});
  write_inputs(kv, sc);
  kv("st_count", std::to_string(m.st_count), "ST population of replication 0");
  auto est = [&](std::string_view key, const stats::Estimate& e) {
    kv(key, e.observed() ? std::optional<double>(e.mean) : std::nullopt);
    kv(std::string(key) + "_ci", e.observed() ? std::optional<double>(e.ci_halfwidth) : std::nullopt,
       "95% half-width");
  };
  est("emp_p_ch", m.p_ch);
  est("emp_p_tr", m.p_tr);
  est("emp_mu_p", m.mu_p);
  est("emp_p_sx", m.p_sx);
  est("emp_throughput", m.throughput);
  for (const auto& pm : m.policies) {
    const auto p = pm.traffic.policy;
    est(policy_key("aoi_", p), pm.mean_age);
    est(policy_key("drop_", p), pm.drop);
    kv(policy_key("arrivals_", p), std::to_string(pm.arrivals));
    kv(policy_key("delivered_", p), std::to_string(pm.delivered));
    kv(policy_key("dropped_", p), std::to_string(pm.dropped));
    kv(policy_key("conserved_", p), std::string(pm.conserved() ? "yes" : "no"));
    if (p == PolicyKind::FCFS) {
      kv("fcfs_diverged", std::string(pm.diverged ? "YES" : "no"),
         pm.diverged ? "queue unstable: arrival rate >= empirical mu_p" : "");
      if (pm.diverged) {
        std::string trace;
        for (std::size_t i = 0; i < pm.queue_trace.size(); ++i)
          trace += (i ? " " : "") + std::to_string(pm.queue_trace[i]);
        kv("fcfs_queue_trace", trace, "queue length at each batch end");
      }
    }
  }
}

void write_sim_csv(std::ostream& os, const sim::SimMetrics& m) {
  os << "quantity,policy,estimate,std_error,ci_halfwidth\n";
  auto row = [&](std::string_view q, std::string_view p, const stats::Estimate& e) {
    os << q << ',' << p << ',' << number(e.observed() ? std::optional(e.mean) : std::nullopt) << ','
       << number(e.observed() ? std::optional(e.std_error) : std::nullopt) << ','
       << number(e.observed() ? std::optional(e.ci_halfwidth) : std::nullopt) << '\n';
  };
  row("p_ch", "", m.p_ch);
  row("p_tr", "", m.p_tr);
  row("mu_p", "", m.mu_p);
  row("p_sx", "", m.p_sx);
  row("throughput", "", m.throughput);
  for (const auto& pm : m.policies) {
    row("aoi", aoi::to_string(pm.traffic.policy), pm.mean_age);
    row("drop", aoi::to_string(pm.traffic.policy), pm.drop);
  }
}

void write_validation_table(std::ostream& os, const ValidationReport& rep) {
  // Six significant digits keep the columns apart; the CSV has full precision.
  auto cell = [](std::optional<double> v) {
    if (!v || !std::isfinite(*v)) return std::string("n/a");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", *v);
    return std::string(buf);
  };
  os << std::left << std::setw(18) << "quantity" << std::setw(7) << "policy" << std::setw(13)
     << "analytic" << std::setw(13) << "empirical" << std::setw(13) << "std_err" << std::setw(13)
     << "rel_err" << std::setw(14) << "criterion" << "status  note\n";
  for (const auto& r : rep.rows) {
    std::string crit(to_string(r.criterion));
    if (r.criterion == Criterion::relative) crit += " " + number(r.tolerance * 100.0) + "%";
    if (r.criterion == Criterion::three_sigma) crit = number(r.tolerance) + " SE";
    const auto emp = r.empirical.observed() ? std::optional(r.empirical.mean) : std::nullopt;
    const auto se = r.empirical.observed() ? std::optional(r.empirical.std_error) : std::nullopt;
    os << std::setw(18) << r.quantity << std::setw(7) << r.policy << std::setw(13) << cell(r.analytic)
       << std::setw(13) << cell(emp) << std::setw(13) << cell(se) << std::setw(13) << cell(r.rel_error)
       << std::setw(14) << crit << std::setw(8) << to_string(r.status) << r.note << '\n';
  }
  os << "overall: " << (rep.passed() ? "PASS" : "FAIL") << '\n';
}

void write_validation_csv(std::ostream& os, const ValidationReport& rep) {
  os << "quantity,policy,analytic,empirical,std_error,rel_error,criterion,tolerance,status,note\n";
  for (const auto& r : rep.rows) {
    const auto emp = r.empirical.observed() ? std::optional(r.empirical.mean) : std::nullopt;
    const auto se = r.empirical.observed() ? std::optional(r.empirical.std_error) : std::nullopt;
    os << r.quantity << ',' << r.policy << ',' << number(r.analytic) << ',' << number(emp) << ','
       << number(se) << ',' << number(r.rel_error) << ',' << to_string(r.criterion) << ','
       << number(r.tolerance) << ',' << to_string(r.status) << ',' << csv_escape(r.note) << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<ResultRow>& rows) {
  os << to_string(spec.axis1.param);
  if (spec.axis2) os << ',' << to_string(spec.axis2->param);
  os << ",policy,status,stable,aoi_analytic,aoi_sim,aoi_sim_ci,mu_p_analytic,mu_p_sim,"
        "throughput_analytic,throughput_sim\n";
  const bool with_analytic = spec.mode != SweepMode::simulate;
  const bool with_sim = spec.mode != SweepMode::analytic;
  for (const auto& r : rows) {
    os << number(r.axis1_value);
    if (spec.axis2) os << ',' << number(r.axis2_value);
    os << ',' << aoi::to_string(r.policy) << ',' << csv_escape(r.status) << ','
       << (r.stable ? "yes" : "no") << ',';
    if (with_analytic && !r.stable && r.status == "ok")
      os << "unstable";
    else
      os << number(r.aoi_analytic);
    os << ',' << number(with_sim ? r.aoi_sim : std::nullopt) << ','
       << number(with_sim ? r.aoi_sim_ci : std::nullopt) << ',' << number(r.mu_p_analytic) << ','
       << number(with_sim ? r.mu_p_sim : std::nullopt) << ',' << number(r.throughput_analytic) << ','
       << number(with_sim ? r.throughput_sim : std::nullopt) << '\n';
  }
}

}  // namespace ehaoi::report
