#include "eoe/summary.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "eoe/error.hpp"
#include "eoe/numeric.hpp"

namespace eoe {

SampleSummary::SampleSummary(std::vector<double> s_grid) : s_grid_(std::move(s_grid)) {}

SampleSummary::SampleSummary(std::vector<double> samples, std::vector<double> s_grid)
    : s_grid_(std::move(s_grid)), sorted_(std::move(samples)) {
  std::sort(sorted_.begin(), sorted_.end());
}

void SampleSummary::add(double t) { sorted_.insert(std::upper_bound(sorted_.begin(), sorted_.end(), t), t); }

void SampleSummary::merge(const SampleSummary& other) {
  if (other.s_grid_ != s_grid_) throw Error(Errc::InvalidArgument, "cannot merge summaries with different s-grids");
  std::vector<double> out;
  out.reserve(sorted_.size() + other.sorted_.size());
  std::merge(sorted_.begin(), sorted_.end(), other.sorted_.begin(), other.sorted_.end(), std::back_inserter(out));
  sorted_ = std::move(out);
}

double SampleSummary::mean() const {
  if (sorted_.empty()) throw Error(Errc::InvalidArgument, "empty summary");
  CompensatedSum sum;
  for (double t : sorted_) sum += t;
  return sum.value() / static_cast<double>(sorted_.size());
}

double SampleSummary::variance() const {
  if (sorted_.size() < 2) return 0.0;
  const double m = mean();
  CompensatedSum sum;
  for (double t : sorted_) sum += (t - m) * (t - m);
  return sum.value() / static_cast<double>(sorted_.size() - 1);
}

double SampleSummary::std_error() const {
  return std::sqrt(variance() / static_cast<double>(sorted_.size()));
}

double SampleSummary::quantile(double p) const {
  if (sorted_.empty()) throw Error(Errc::InvalidArgument, "empty summary");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::InvalidArgument, "quantile level must lie in [0, 1]");
  const double h = p * static_cast<double>(sorted_.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted_.size() - 1);
  return sorted_[lo] + (h - static_cast<double>(lo)) * (sorted_[hi] - sorted_[lo]);
}

double SampleSummary::ecdf(double t) const {
  if (sorted_.empty()) throw Error(Errc::InvalidArgument, "empty summary");
  const auto k = std::upper_bound(sorted_.begin(), sorted_.end(), t) - sorted_.begin();
  return static_cast<double>(k) / static_cast<double>(sorted_.size());
}

double SampleSummary::transform_at(double s) const {
  if (sorted_.empty()) throw Error(Errc::InvalidArgument, "empty summary");
  if (!(s >= 0.0)) throw Error(Errc::InvalidArgument, "s must be >= 0");
  CompensatedSum sum;
  for (double t : sorted_) sum += std::exp(-s * t);
  return sum.value() / static_cast<double>(sorted_.size());
}

double SampleSummary::transform_se_at(double s) const {
  const std::size_t r = sorted_.size();
  if (r < 2) return 0.0;
  const double m = transform_at(s);
  CompensatedSum sum;
  for (double t : sorted_) {
    const double d = std::exp(-s * t) - m;
    sum += d * d;
  }
  return std::sqrt(sum.value() / static_cast<double>(r - 1) / static_cast<double>(r));
}

std::vector<double> SampleSummary::transform() const {
  std::vector<double> out;
  out.reserve(s_grid_.size());
  for (double s : s_grid_) out.push_back(transform_at(s));
  return out;
}

std::vector<double> SampleSummary::transform_se() const {
  std::vector<double> out;
  out.reserve(s_grid_.size());
  for (double s : s_grid_) out.push_back(transform_se_at(s));
  return out;
}

TransformEvaluator SampleSummary::as_transform(TransformContext context) const {
  auto self = std::make_shared<const SampleSummary>(*this);
  TransformFn fn;
  fn.value = [self](double s) { return self->transform_at(s); };
  fn.complement = [self](double s) {
    CompensatedSum sum;
    for (double t : self->sorted_) sum += -std::expm1(-s * t);
    return sum.value() / static_cast<double>(self->sorted_.size());
  };
  return TransformEvaluator(Subject::T, Provenance::Empirical, std::move(context), std::move(fn));
}

}  // namespace eoe
