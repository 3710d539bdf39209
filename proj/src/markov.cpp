#include "ehaoi/markov.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ehaoi::markov {

namespace {

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}

void require_queue_rates(double lambda, double mu_p, bool allow_zero_lambda) {
  const bool lambda_ok = allow_zero_lambda ? (lambda >= 0.0 && lambda < 1.0)
                                           : (lambda > 0.0 && lambda < 1.0);
  if (!lambda_ok)
    throw std::invalid_argument(allow_zero_lambda ? "lambda must satisfy 0 <= lambda < 1"
                                                  : "lambda must satisfy 0 < lambda < 1");
  if (!(mu_p > 0.0 && mu_p <= 1.0)) throw std::invalid_argument("mu_p must satisfy 0 < mu_p <= 1");
}

// Below this gap the (lambda - mu_p) / (lambda rho^2 - mu_p) ratio loses
// digits to cancellation; normalisation gives the same value.
constexpr double kQrRatioGap = 1e-3;

}  // namespace

double battery_charge_probability(double p_eh, double p_gz, double p_s) {
  require_probability(p_eh, "p_eh");
  require_probability(p_gz, "p_gz");
  require_probability(p_s, "p_s");
  const double denom = p_eh + p_s - p_gz * p_s;
  if (!(denom > 0.0))
    throw std::domain_error("battery chain undefined: charge and discharge rates both zero");
  return p_eh / denom;
}

double transmit_probability(const AccessProbabilities& access) {
  return access.p_ch * (1.0 - access.p_gz) * access.p_s;
}

AccessProbabilities make_access(double p_eh, double p_gz, double p_s) {
  AccessProbabilities a{p_eh, p_gz, p_s, 0.0, 0.0};
  a.p_ch = battery_charge_probability(p_eh, p_gz, p_s);
  a.p_tr = transmit_probability(a);
  return a;
}

double QueueSteadyState::probability(std::size_t n) const {
  if (!geometric_tail) return n < pi.size() ? pi[n] : 0.0;
  if (pi.empty()) return 0.0;
  if (n == 0) return pi[0];
  return std::pow(rho, static_cast<double>(n - 1)) * pi[1];
}

double QueueSteadyState::total() const {
  if (!geometric_tail) {
    double sum = 0.0;
    for (double p : pi) sum += p;
    return sum;
  }
  if (pi.empty()) return 0.0;
  return pi[0] + pi[1] / (1.0 - rho);
}

QueueSteadyState fcfs_steady_state(double lambda, double mu_p) {
  require_queue_rates(lambda, mu_p, false);
  QueueSteadyState st;
  st.geometric_tail = true;
  st.up = lambda * (1.0 - mu_p);
  st.down = mu_p * (1.0 - lambda);
  st.rho = st.up / st.down;
  st.stable = lambda < mu_p;
  if (!st.stable) return st;
  const double pi1 = lambda * (1.0 - st.rho) / mu_p;
  const double pi0 = mu_p * (1.0 - lambda) / lambda * pi1;
  st.pi = {pi0, pi1};
  return st;
}

QueueSteadyState qr_steady_state(double lambda, double mu_p) {
  require_queue_rates(lambda, mu_p, false);
  QueueSteadyState st;
  st.up = lambda * (1.0 - mu_p);
  st.down = mu_p * (1.0 - lambda);
  st.rho = st.up / st.down;
  st.stable = true;
  // pi_n / pi_0 = lambda^n (1 - mu_p)^(n-1) / (mu_p^n (1 - lambda)^n)
  const double ratio1 = lambda / st.down;
  const double ratio2 = ratio1 * st.rho;
  double pi0 = 0.0;
  if (std::abs(lambda - mu_p) >= kQrRatioGap)
    pi0 = (lambda - mu_p) / (lambda * st.rho * st.rho - mu_p);
  else
    pi0 = 1.0 / (1.0 + ratio1 + ratio2);
  st.pi = {pi0, ratio1 * pi0, ratio2 * pi0};
  return st;
}

double drop_probability(double lambda, double mu_p, DropForm form) {
  switch (form) {
    case DropForm::closed_form: {
      require_queue_rates(lambda, mu_p, true);
      // Numerator and bracket of the printed expression scaled by
      // mu_p^2 (1 - lambda).
      const double num = lambda * lambda * (1.0 - mu_p);
      const double den = mu_p * mu_p * (1.0 - lambda) + lambda * mu_p + num;
      return num / den;
    }
    case DropForm::definitional: {
      const auto st = qr_steady_state(lambda, mu_p);
      return st.pi[1] * lambda * (1.0 - mu_p) + st.pi[2] * (1.0 - st.down);
    }
    case DropForm::per_arrival: {
      const auto st = qr_steady_state(lambda, mu_p);
      return st.pi[2] * (1.0 - mu_p);
    }
  }
  throw std::invalid_argument("unknown drop form");
}

double effective_arrival(double lambda, double mu_p) {
  require_queue_rates(lambda, mu_p, true);
  const double delta =
      lambda * lambda * (1.0 - mu_p) + lambda * (1.0 - mu_p) * mu_p + mu_p * mu_p;
  return lambda - lambda * lambda * lambda * (1.0 - mu_p) / delta;
}

}  // namespace ehaoi::markov
