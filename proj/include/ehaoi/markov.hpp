#pragma once

#include <cstddef>
#include <vector>

namespace ehaoi::markov {

struct AccessProbabilities {
  double p_eh = 0.0;
  double p_gz = 0.0;
  double p_s = 0.0;
  double p_ch = 0.0;
  double p_tr = 0.0;
};

// Stationary probability of the Full state of the two-state battery chain
// (E -> F w.p. p_eh, F -> E w.p. (1 - p_gz) p_s). Throws std::domain_error
// when both rates vanish.
double battery_charge_probability(double p_eh, double p_gz, double p_s);

// p_ch (1 - p_gz) p_s.
double transmit_probability(const AccessProbabilities& access);

// Fills p_ch and p_tr from p_eh, p_gz and p_s.
AccessProbabilities make_access(double p_eh, double p_gz, double p_s);

// Steady state of the primary queue chain. For FCFS only pi_0 and pi_1 are
// stored; pi_n = rho^(n-1) pi_1 for n >= 1. For QR `pi` holds all three
// states.
struct QueueSteadyState {
  std::vector<double> pi;
  double rho = 0.0;
  double up = 0.0;    // r = lambda (1 - mu_p)
  double down = 0.0;  // s = mu_p (1 - lambda)
  bool stable = false;
  bool geometric_tail = false;

  // pi_n, evaluating the geometric tail lazily when present.
  double probability(std::size_t n) const;
  // Sum over all states, with the FCFS tail summed in closed form.
  double total() const;
};

// Geo/Geo/1 steady state. Unstable input (lambda >= mu_p) returns
// stable = false and an empty pi.
QueueSteadyState fcfs_steady_state(double lambda, double mu_p);

// Replacement-queue steady state (states 0, 1, 2).
QueueSteadyState qr_steady_state(double lambda, double mu_p);

enum class DropForm {
  closed_form,   // second line of the drop-probability expression
  definitional,  // pi_1 lambda (1 - mu_p) + pi_2 (1 - s)
  per_arrival,   // pi_2 (1 - mu_p): loss probability of an arriving packet
};

double drop_probability(double lambda, double mu_p, DropForm form = DropForm::closed_form);

// lambda - lambda^3 (1 - mu_p) / delta.
double effective_arrival(double lambda, double mu_p);

}  // namespace ehaoi::markov
