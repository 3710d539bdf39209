#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ehaoi/analysis.hpp"
#include "ehaoi/scenario.hpp"
#include "ehaoi/sim.hpp"
#include "ehaoi/sweep.hpp"
#include "ehaoi/validation.hpp"

namespace ehaoi::report {

// "%.10g" for finite values, "n/a" otherwise.
std::string number(std::optional<double> v);
std::string csv_escape(std::string_view field);

struct Manifest {
  std::string command;
  std::uint64_t seed = 0;
  std::string extra;  // free-form, already formatted
};

void write_manifest(std::ostream& os, const Manifest& m);

void write_analytic_report(std::ostream& os, const Scenario& scenario, const AnalyticReport& rep);
void write_sim_report(std::ostream& os, const Scenario& scenario, const sim::SimMetrics& m);
void write_sim_csv(std::ostream& os, const sim::SimMetrics& m);
void write_validation_table(std::ostream& os, const ValidationReport& rep);
void write_validation_csv(std::ostream& os, const ValidationReport& rep);
void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<ResultRow>& rows);

}  // namespace ehaoi::report
