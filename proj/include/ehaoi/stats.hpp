#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ehaoi::stats {

// Point estimate with its batch-means standard error. A default value
// (count == 0) means "not observed".
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  double ci_halfwidth = 0.0;  // 95 %, normal quantile
  std::size_t batches = 0;

  bool observed() const { return batches > 0; }
};

// Accumulates a per-slot quantity (or a numerator/denominator pair for
// ratio estimators) into consecutive batches.
class BatchSeries {
 public:
  void add(std::size_t batch, double numerator, double denominator = 1.0);
  void resize(std::size_t batches);

  std::size_t size() const { return num_.size(); }
  double numerator(std::size_t b) const { return num_[b]; }
  double denominator(std::size_t b) const { return den_[b]; }

  // Appends another run's batches (replication pooling).
  void append(const BatchSeries& other);

  // Overall ratio sum(num)/sum(den); standard error from the spread of the
  // per-batch ratios. Batches with zero denominator are skipped.
  Estimate estimate() const;

 private:
  std::vector<double> num_;
  std::vector<double> den_;
};

// Splitmix64 finaliser over (master, index): sub-seeds for replications
// and sweep points that do not depend on scheduling order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

double mean(std::span<const double> xs);
double sample_variance(std::span<const double> xs);

}  // namespace ehaoi::stats
