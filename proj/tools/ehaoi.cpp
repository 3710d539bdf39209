// ehaoi: analytic evaluation, simulation, validation and sweeps for the
// energy-harvesting cognitive network AoI model.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ehaoi/analysis.hpp"
#include "ehaoi/report.hpp"
#include "ehaoi/scenario.hpp"
#include "ehaoi/sim.hpp"
#include "ehaoi/sweep.hpp"
#include "ehaoi/validation.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailed = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string scenario;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> slots;
  std::optional<std::uint64_t> replications;
  std::string policy;
  std::string trace;
  unsigned jobs = 1;
};

void add_common(CLI::App* cmd, Common& c, bool sim_flags) {
  cmd->add_option("--scenario", c.scenario, "scenario JSON file (default scenario if omitted)");
  cmd->add_option("--out", c.out, "output file");
  cmd->add_option("--policy", c.policy, "fcfs, qr, gw, a comma list, or all");
  cmd->add_option("--seed", c.seed, "master seed (overrides the scenario)");
  if (sim_flags) {
    cmd->add_option("--slots", c.slots, "slots per replication");
    cmd->add_option("--replications", c.replications, "independent replications");
    cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  }
}

ehaoi::Scenario load(const Common& c) {
  ehaoi::Scenario sc;
  try {
    sc = c.scenario.empty() ? ehaoi::default_scenario() : ehaoi::load_scenario(c.scenario);
    if (!c.policy.empty()) sc.policies = ehaoi::parse_policy_set(c.policy);
    if (c.seed) sc.sim.seed = *c.seed;
    if (c.slots) sc.sim.slots = *c.slots;
    if (c.replications) sc.sim.replications = *c.replications;
    sc.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
  return sc;
}

ehaoi::sim::SimOptions options_for(const ehaoi::Scenario& sc) {
  ehaoi::sim::SimOptions opt;
  opt.slots = sc.sim.slots;
  opt.replications = sc.sim.replications;
  opt.seed = sc.sim.seed;
  opt.harvest = sc.sim.harvest;
  if (opt.slots < 10'000) throw InputError("sim.slots must be at least 10000");
  if (opt.replications < 1) throw InputError("sim.replications must be at least 1");
  return opt;
}

// Writes to --out when given, stdout otherwise.
template <class F>
void emit(const std::string& path, F&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open output file " + path);
  write(f);
}

int cmd_analyze(const Common& c) {
  const auto sc = load(c);
  const auto rep = ehaoi::analyze(sc.network, sc.arrival_rate, sc.sampling_rate, sc.policies);
  std::ostringstream text;
  ehaoi::report::write_analytic_report(text, sc, rep);
  std::cout << text.str();
  if (!c.out.empty()) emit(c.out, [&](std::ostream& os) { os << text.str(); });
  return kOk;
}

int cmd_simulate(const Common& c) {
  const auto sc = load(c);
  auto opt = options_for(sc);
  std::ofstream trace;
  if (!c.trace.empty()) {
    trace.open(c.trace, std::ios::binary);
    if (!trace) throw InputError("cannot open trace file " + c.trace);
    opt.trace = &trace;
  }
  const auto traffic = sc.traffic();
  const auto m = ehaoi::sim::simulate(sc.network, traffic, opt);
  ehaoi::report::write_sim_report(std::cout, sc, m);
  for (const auto& pm : m.policies)
    if (pm.diverged)
      std::cerr << "WARNING: " << ehaoi::aoi::to_string(pm.traffic.policy)
                << " queue diverged (arrival rate >= empirical mu_p); its mean age is not meaningful\n";
  if (!c.out.empty()) {
    emit(c.out, [&](std::ostream& os) {
      ehaoi::report::write_manifest(os, {"simulate", sc.sim.seed, {}});
      ehaoi::report::write_sim_csv(os, m);
    });
  }
  return kOk;
}

int cmd_validate(const Common& c) {
  const auto sc = load(c);
  const auto opt = options_for(sc);
  const auto rep = ehaoi::validate(sc, opt);
  ehaoi::report::write_validation_table(std::cout, rep);
  if (!c.out.empty()) {
    emit(c.out, [&](std::ostream& os) {
      ehaoi::report::write_manifest(os, {"validate", sc.sim.seed, {}});
      ehaoi::report::write_validation_csv(os, rep);
    });
  }
  return rep.passed() ? kOk : kValidationFailed;
}

struct SweepArgs {
  std::string preset;
  std::string axis1;
  std::string axis2;
  std::string mode = "analytic";
};

int cmd_sweep(const Common& c, const SweepArgs& s) {
  auto sc = load(c);
  ehaoi::SweepSpec spec;
  try {
    if (!s.preset.empty()) {
      spec = ehaoi::sweep_preset(s.preset);
    } else if (s.axis1.empty()) {
      throw InputError("sweep needs --axis1 or --preset");
    }
    if (!s.axis1.empty()) spec.axis1 = ehaoi::parse_axis(s.axis1);
    if (!s.axis2.empty()) spec.axis2 = ehaoi::parse_axis(s.axis2);
    spec.mode = ehaoi::parse_sweep_mode(s.mode);
    spec.policies = sc.policies;
    spec.validate(sc);
    if (spec.mode != ehaoi::SweepMode::analytic) options_for(sc);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const auto rows = ehaoi::run_sweep(sc, spec, c.jobs);
  std::ostringstream extra;
  extra << "# mode=" << ehaoi::to_string(spec.mode) << "\n";
  if (spec.mode != ehaoi::SweepMode::analytic)
    extra << "# slots=" << sc.sim.slots << " replications=" << sc.sim.replications << "\n";
  emit(c.out, [&](std::ostream& os) {
    ehaoi::report::write_manifest(os, {"sweep", sc.sim.seed, extra.str()});
    ehaoi::report::write_sweep_csv(os, spec, rows);
  });
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age of information in energy-harvesting cognitive networks"};
  app.set_version_flag("--version", std::string(EHAOI_VERSION));
  app.require_subcommand(1);

  Common analyze, simulate, validate, sweep;
  SweepArgs sweep_args;

  auto* a = app.add_subcommand("analyze", "closed-form pipeline, key=value report");
  add_common(a, analyze, false);

  auto* s = app.add_subcommand("simulate", "slot-level Monte Carlo simulation");
  add_common(s, simulate, true);
  s->add_option("--trace", simulate.trace, "per-slot CSV trace of the first replication");

  auto* v = app.add_subcommand("validate", "analytic vs simulated comparison table");
  add_common(v, validate, true);

  auto* w = app.add_subcommand("sweep", "parameter sweep, one CSV row per point and policy");
  add_common(w, sweep, true);
  w->add_option("--preset", sweep_args.preset, "fig10, reh-surface or rgz-surface");
  w->add_option("--axis1", sweep_args.axis1, "name=v1,v2,... or name=start:stop:step");
  w->add_option("--axis2", sweep_args.axis2, "second axis, same syntax");
  w->add_option("--mode", sweep_args.mode, "analytic, simulate or both");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*a) return cmd_analyze(analyze);
    if (*s) return cmd_simulate(simulate);
    if (*v) return cmd_validate(validate);
    if (*w) return cmd_sweep(sweep, sweep_args);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}
