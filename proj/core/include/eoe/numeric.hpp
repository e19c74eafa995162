#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace eoe {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  CompensatedSum& add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
    return *this;
  }
  CompensatedSum& operator+=(double x) noexcept { return add(x); }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Shortest-safe decimal rendering with 17 significant digits.
std::string format_double(double x);

/// `count` log-spaced points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t count);

/// Sup distance between the ECDF of `sorted` and a continuous CDF.
template <class Cdf>
double ks_distance(std::span<const double> sorted, Cdf&& cdf) {
  const double r = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, std::max(static_cast<double>(i + 1) / r - f, f - static_cast<double>(i) / r));
  }
  return d;
}

}  // namespace eoe
