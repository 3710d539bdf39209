#include "ehaoi/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace ehaoi::stats {

void BatchSeries::resize(std::size_t batches) {
  num_.assign(batches, 0.0);
  den_.assign(batches, 0.0);
}

void BatchSeries::add(std::size_t batch, double numerator, double denominator) {
  num_[batch] += numerator;
  den_[batch] += denominator;
}

void BatchSeries::append(const BatchSeries& other) {
  num_.insert(num_.end(), other.num_.begin(), other.num_.end());
  den_.insert(den_.end(), other.den_.begin(), other.den_.end());
}

Estimate BatchSeries::estimate() const {
  Estimate e;
  double total_num = 0.0;
  double total_den = 0.0;
  std::vector<double> ratios;
  ratios.reserve(num_.size());
  for (std::size_t b = 0; b < num_.size(); ++b) {
    if (den_[b] <= 0.0) continue;
    total_num += num_[b];
    total_den += den_[b];
    ratios.push_back(num_[b] / den_[b]);
  }
  if (ratios.empty()) return e;
  e.batches = ratios.size();
  e.mean = total_num / total_den;
  if (ratios.size() > 1) {
    e.std_error = std::sqrt(sample_variance(ratios) / static_cast<double>(ratios.size()));
    e.ci_halfwidth = 1.959963984540054 * e.std_error;
  }
  return e;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean of empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

}  // namespace ehaoi::stats
