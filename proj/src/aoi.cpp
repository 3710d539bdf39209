#include "ehaoi/aoi.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ehaoi/markov.hpp"

namespace ehaoi::aoi {

std::string_view to_string(PolicyKind policy) {
  switch (policy) {
    case PolicyKind::FCFS: return "fcfs";
    case PolicyKind::QR: return "qr";
    case PolicyKind::GW: return "gw";
  }
  return "?";
}

PolicyKind parse_policy(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "fcfs") return PolicyKind::FCFS;
  if (lower == "qr") return PolicyKind::QR;
  if (lower == "gw") return PolicyKind::GW;
  throw std::invalid_argument("unknown policy '" + std::string(name) + "' (expected fcfs, qr or gw)");
}

namespace {

void require_rates(double rate, double mu_p, const char* rate_name) {
  if (!(rate > 0.0 && rate < 1.0))
    throw std::invalid_argument(std::string(rate_name) + " must satisfy 0 < " + rate_name + " < 1");
  if (!(mu_p > 0.0 && mu_p <= 1.0)) throw std::invalid_argument("mu_p must satisfy 0 < mu_p <= 1");
}

void flag_if_suspect(AoiResult& r) {
  if (r.mean_age && (!std::isfinite(*r.mean_age) || *r.mean_age < 1.0)) r.suspect = true;
}

}  // namespace

AoiResult aoi_fcfs(double lambda, double mu_p) {
  require_rates(lambda, mu_p, "lambda");
  AoiResult r;
  r.policy = PolicyKind::FCFS;
  r.stable = lambda < mu_p;
  r.aux["rho"] = lambda * (1.0 - mu_p) / (mu_p * (1.0 - lambda));
  if (!r.stable) return r;
  r.mean_age = 1.0 / lambda + (1.0 - lambda) / (mu_p - lambda) - lambda / (mu_p * mu_p) +
               lambda / mu_p;
  flag_if_suspect(r);
  return r;
}

AoiResult aoi_qr(double lambda, double mu_p) {
  require_rates(lambda, mu_p, "lambda");
  const double l = lambda;
  const double m = mu_p;
  const double delta = l * l * (1.0 - m) + l * (1.0 - m) * m + m * m;
  const double eps = l + m - l * m;

  const double bracket =
      delta / (2.0 * l * m * eps) +
      l * (l * (3.0 * m - 2.0) - 2.0 * m + 1.0) /
          (l * l * (m - 1.0) * (m - 1.0) + l * m * (1.0 - 2.0 * m) + m * m) +
      (l * l * l * (m - 2.0) * (m - 1.0) + l * l * (m - 2.0) * (m - 1.0) * m) /
          (2.0 * l * l * m * m * eps) +
      (l * m * m * (2.0 - 3.0 * m) + 2.0 * m * m * m) / (2.0 * l * l * m * m * eps) +
      (1.0 - l) / (l * m) + (2.0 * l + 1.0) / eps - (l + 1.0) / (eps * eps) + 1.0 / (m * m);

  AoiResult r;
  r.policy = PolicyKind::QR;
  r.stable = true;
  r.mean_age = l * m * eps * bracket / delta;
  r.aux["delta"] = delta;
  r.aux["epsilon"] = eps;
  r.aux["rho"] = l * (1.0 - m) / (m * (1.0 - l));
  r.aux["p_d"] = markov::drop_probability(l, m, markov::DropForm::closed_form);
  r.aux["lambda_e"] = markov::effective_arrival(l, m);
  flag_if_suspect(r);
  return r;
}

AoiResult aoi_gw(double q, double mu_p) {
  if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("q must satisfy 0 < q <= 1");
  if (!(mu_p > 0.0 && mu_p <= 1.0)) throw std::invalid_argument("mu_p must satisfy 0 < mu_p <= 1");
  AoiResult r;
  r.policy = PolicyKind::GW;
  r.stable = true;
  r.mean_age = 1.0 / (mu_p * q);
  return r;
}

AoiResult mean_age(PolicyKind policy, double rate, double mu_p) {
  switch (policy) {
    case PolicyKind::FCFS: return aoi_fcfs(rate, mu_p);
    case PolicyKind::QR: return aoi_qr(rate, mu_p);
    case PolicyKind::GW: return aoi_gw(rate, mu_p);
  }
  throw std::invalid_argument("unknown policy");
}

double secondary_throughput(double st_density, double p_tr, double p_sx) {
  if (!(st_density >= 0.0)) throw std::invalid_argument("lambda_s must be >= 0");
  if (!(p_tr >= 0.0 && p_tr <= 1.0) || !(p_sx >= 0.0 && p_sx <= 1.0))
    throw std::invalid_argument("p_tr and p_sx must lie in [0,1]");
  return st_density * p_tr * p_sx;
}

}  // namespace ehaoi::aoi
