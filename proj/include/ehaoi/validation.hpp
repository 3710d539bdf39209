#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ehaoi/analysis.hpp"
#include "ehaoi/scenario.hpp"
#include "ehaoi/sim.hpp"

namespace ehaoi {

enum class Criterion { relative, three_sigma, info };
enum class RowStatus { pass, fail, info, na };

std::string_view to_string(RowStatus s);
std::string_view to_string(Criterion c);

struct ValidationRow {
  std::string quantity;
  std::string policy;  // empty for network-level rows
  std::optional<double> analytic;
  stats::Estimate empirical;
  std::optional<double> rel_error;
  double tolerance = 0.0;  // relative tolerance or number of standard errors
  Criterion criterion = Criterion::info;
  RowStatus status = RowStatus::na;
  std::string note;
};

// Per-quantity acceptance thresholds. The queue formulas are fed the
// empirical mu_p so that their rows isolate queueing-model error.
struct ValidationTolerances {
  double mu_p = 0.05;
  double p_sx = 0.15;
  double throughput = 0.15;
  double fcfs_age = 0.02;
  double gw_age = 0.01;
  double qr_age = 0.05;
  double sigmas = 3.0;
  // Relative tolerance cap when lambda_s = 0 (no geometry approximation).
  double degenerate = 0.01;
};

struct ValidationReport {
  AnalyticReport analytic;
  sim::SimMetrics metrics;
  std::vector<ValidationRow> rows;

  bool passed() const;
  const ValidationRow* find(std::string_view quantity, std::string_view policy = "") const;
};

ValidationReport validate(const Scenario& scenario, const sim::SimOptions& options,
                          const ValidationTolerances& tol = {});

}  // namespace ehaoi
