#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eoe/transforms.hpp"

namespace eoe {

/// Aggregate of T samples. Samples are held as a sorted multiset, so every
/// statistic is a function of the multiset alone: merging shards in any
/// order, or filling from any number of workers, gives identical results.
class SampleSummary {
 public:
  explicit SampleSummary(std::vector<double> s_grid = {});
  SampleSummary(std::vector<double> samples, std::vector<double> s_grid);

  void add(double t);
  /// Multiset union. Both summaries must share the s-grid.
  void merge(const SampleSummary& other);

  std::size_t count() const noexcept { return sorted_.size(); }
  std::span<const double> sorted_samples() const noexcept { return sorted_; }
  const std::vector<double>& s_grid() const noexcept { return s_grid_; }

  double mean() const;
  /// Unbiased sample variance; 0 for fewer than two samples.
  double variance() const;
  double std_error() const;
  /// Linear-interpolation quantile (type 7), p in [0, 1].
  double quantile(double p) const;
  double median() const { return quantile(0.5); }
  double ecdf(double t) const;

  /// (1/R) sum exp(-s T_r) and its standard error sample-std / sqrt(R).
  double transform_at(double s) const;
  double transform_se_at(double s) const;
  /// Values on the s-grid.
  std::vector<double> transform() const;
  std::vector<double> transform_se() const;

  /// The empirical transform as an evaluator (provenance "empirical").
  TransformEvaluator as_transform(TransformContext context) const;

 private:
  std::vector<double> s_grid_;
  std::vector<double> sorted_;
};

}  // namespace eoe
