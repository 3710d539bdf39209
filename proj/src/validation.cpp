#include "ehaoi/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ehaoi {

std::string_view to_string(RowStatus s) {
  switch (s) {
    case RowStatus::pass: return "pass";
    case RowStatus::fail: return "FAIL";
    case RowStatus::info: return "info";
    case RowStatus::na: return "n/a";
  }
  return "?";
}

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::relative: return "relative";
    case Criterion::three_sigma: return "sigma";
    case Criterion::info: return "report";
  }
  return "?";
}

bool ValidationReport::passed() const {
  return std::none_of(rows.begin(), rows.end(),
                      [](const ValidationRow& r) { return r.status == RowStatus::fail; });
}

const ValidationRow* ValidationReport::find(std::string_view quantity, std::string_view policy) const {
  for (const auto& r : rows)
    if (r.quantity == quantity && r.policy == policy) return &r;
  return nullptr;
}

namespace {

ValidationRow compare(std::string quantity, std::optional<double> analytic, stats::Estimate emp,
                      Criterion criterion, double tolerance) {
  ValidationRow row;
  row.quantity = std::move(quantity);
  row.analytic = analytic;
  row.empirical = emp;
  row.criterion = criterion;
  row.tolerance = tolerance;
  if (!analytic || !emp.observed() || !std::isfinite(*analytic)) {
    row.status = RowStatus::na;
    return row;
  }
  if (*analytic != 0.0) row.rel_error = std::abs(emp.mean - *analytic) / std::abs(*analytic);
  const double gap = std::abs(emp.mean - *analytic);
  bool ok = false;
  switch (criterion) {
    case Criterion::relative:
      ok = row.rel_error ? *row.rel_error <= tolerance : gap == 0.0;
      break;
    case Criterion::three_sigma:
      ok = gap <= tolerance * emp.std_error;
      break;
    case Criterion::info:
      row.status = RowStatus::info;
      return row;
  }
  row.status = ok ? RowStatus::pass : RowStatus::fail;
  return row;
}

std::string sigma_note(const ValidationRow& r, double sigmas) {
  if (!r.analytic || !r.empirical.observed() || r.empirical.std_error <= 0.0) return {};
  const double z = std::abs(r.empirical.mean - *r.analytic) / r.empirical.std_error;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f SE from simulation (%s %.0f SE)", z,
                z <= sigmas ? "within" : "outside", sigmas);
  return buf;
}

}  // namespace

ValidationReport validate(const Scenario& scenario, const sim::SimOptions& options,
                          const ValidationTolerances& tol) {
  scenario.validate();
  ValidationReport rep;
  rep.analytic = analyze(scenario.network, scenario.arrival_rate, scenario.sampling_rate,
                         scenario.policies);
  const auto traffic = scenario.traffic();
  rep.metrics = sim::simulate(scenario.network, traffic, options);
  const auto& a = rep.analytic;
  const auto& m = rep.metrics;

  const bool degenerate = scenario.network.st_density == 0.0;
  auto rel = [&](double t) { return degenerate ? std::min(t, tol.degenerate) : t; };

  rep.rows.push_back(compare("p_ch", a.p_ch, m.p_ch, Criterion::three_sigma, tol.sigmas));
  rep.rows.push_back(compare("p_tr", a.p_tr, m.p_tr, Criterion::three_sigma, tol.sigmas));
  rep.rows.push_back(compare("mu_p", a.mu_p, m.mu_p, Criterion::relative, rel(tol.mu_p)));
  rep.rows.push_back(compare("p_sx", a.p_sx, m.p_sx, Criterion::relative, rel(tol.p_sx)));
  {
    auto row = compare("throughput", a.throughput, m.throughput, Criterion::relative,
                       rel(tol.throughput));
    if (degenerate && m.throughput.observed() && m.throughput.mean == 0.0 && a.throughput == 0.0) {
      row.status = RowStatus::pass;
      row.note = "no secondary users";
    }
    rep.rows.push_back(row);
  }

  const double emp_mu = m.mu_p.mean;
  for (std::size_t k = 0; k < traffic.size(); ++k) {
    const auto& t = traffic[k];
    const auto& pm = m.policies[k];
    const std::string pname(aoi::to_string(t.policy));
    const double age_tol = t.policy == PolicyKind::FCFS ? tol.fcfs_age
                           : t.policy == PolicyKind::QR ? tol.qr_age
                                                        : tol.gw_age;

    const auto given_emp = analytic_age(t.policy, t, emp_mu);
    auto row = compare("aoi", given_emp, pm.mean_age, Criterion::relative, rel(age_tol));
    row.policy = pname;
    row.note = "formula evaluated at the empirical mu_p";
    if (!given_emp) {
      row.status = RowStatus::na;
      row.note = std::string("formula unstable at the empirical mu_p; simulation ") +
                 (pm.diverged ? "diverged" : "did not diverge");
    } else if (pm.diverged) {
      row.status = RowStatus::fail;
      row.note = "simulation diverged although the formula is finite";
    }
    rep.rows.push_back(row);

    const auto* model = a.find(t.policy);
    auto model_row = compare("aoi_model", model ? model->mean_age : std::nullopt, pm.mean_age,
                             Criterion::info, 0.0);
    model_row.policy = pname;
    model_row.note = "formula evaluated at the analytic mu_p";
    rep.rows.push_back(model_row);

    if (t.policy == PolicyKind::QR && emp_mu > 0.0) {
      using markov::DropForm;
      const std::pair<const char*, DropForm> forms[] = {
          {"p_d_definitional", DropForm::definitional},
          {"p_d_closed", DropForm::closed_form},
          {"p_d_per_arrival", DropForm::per_arrival},
      };
      for (const auto& [name, form] : forms) {
        auto drop = compare(name, markov::drop_probability(t.arrival_rate, emp_mu, form), pm.drop,
                            Criterion::info, tol.sigmas);
        drop.policy = pname;
        drop.note = sigma_note(drop, tol.sigmas);
        rep.rows.push_back(drop);
      }
    }
  }
  return rep;
}

}  // namespace ehaoi
