#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eoe/graph.hpp"
#include "eoe/simulator.hpp"

namespace eoe {

/// coef * n^power * (ln n)^log_power
struct RateLaw {
  double coef = 1.0;
  double power = 0.0;
  double log_power = 0.0;

  double at(double n) const;
  std::string describe() const;
};

/// How the smaller side m of a bipartite family grows with n. Results are
/// rounded and clamped to [1, n - 1].
struct PartitionRule {
  enum class Kind { None, Fixed, Proportional, Power, PolyLog };
  Kind kind = Kind::None;
  double param = 0.0;  // m, alpha, beta or beta respectively

  std::uint32_t m_at(std::uint32_t n) const;
  std::string describe() const;
};

/// Which limit statement supplies b_n.
enum class ScaleRule {
  NormalizedSteps,    // (c2 / (2 c1)) gamma^2 / (lambda a_n)
  UnnormalizedSteps,  // ((c1 + c2) / (2 (1 + c1))) gamma^2 / lambda
  CompleteRegimeI,    // n gamma^2 / lambda
  CompleteRegimeII,   // 2 lambda
  CompleteRegimeIII,  // gamma
  Ring,               // gamma
};
std::string_view to_string(ScaleRule r) noexcept;

/// Normalizer a_n of the meeting step count N_n.
enum class Normalizer { None, InverseN, InverseM };

struct LimitLaw {
  std::string name;
  std::function<double(double)> transform;
  /// Empty when the law has no closed-form CDF.
  std::function<double(double)> cdf;
  /// NaN when not tabulated.
  double mean;
  double second_moment;

  bool has_cdf() const noexcept { return static_cast<bool>(cdf); }
};

/// "exp1", "hypoexp12" or "ring"; anything else throws UnknownLaw.
LimitLaw limit_law(std::string_view name);
double limit_law_transform(std::string_view name, double s);
std::vector<std::string> limit_law_names();

/// A little-o condition f_n -> 0 checked numerically on an n-grid.
struct RegimeCondition {
  std::string label;
  std::function<double(std::uint32_t)> ratio;
};

struct ScalingSchedule {
  std::string name;
  Family family = Family::Complete;
  PartitionRule partition;
  RateLaw lambda;
  RateLaw gamma;
  ScaleRule rule = ScaleRule::CompleteRegimeI;
  Normalizer normalizer = Normalizer::None;
  double c1 = 0.0;  // E[X] for the limit X of a_n N_n (or of N_n)
  double c2 = 0.0;  // E[X^2]
  std::string law;  // limit law of b_n T_n

  Graph graph_at(std::uint32_t n) const;
  std::uint32_t m_at(std::uint32_t n) const { return partition.m_at(n); }
  double lambda_at(std::uint32_t n) const { return lambda.at(n); }
  double gamma_at(std::uint32_t n) const { return gamma.at(n); }
  /// a_n; 0 for Normalizer::None.
  double a_at(std::uint32_t n) const;
  double b_at(std::uint32_t n) const;

  std::vector<RegimeCondition> conditions() const;
  /// Each condition's ratio must be <= 0.1 at the largest n and must not
  /// exceed its value at the smallest n. Throws RegimeViolation otherwise.
  void validate(std::span<const std::uint32_t> n_grid) const;
};

/// The catalog: complete-i, complete-ii, complete-iii, bipartite-alpha,
/// bipartite-power, bipartite-polylog, bipartite-fixed, star, ring.
std::vector<ScalingSchedule> builtin_schedules();
/// Throws InvalidArgument for an unknown name.
ScalingSchedule find_schedule(std::string_view name);

struct ConvergenceOptions {
  std::vector<double> s_grid = {0.25, 0.5, 1.0, 2.0, 4.0};
  BatchOptions batch;
};

struct ConvergencePoint {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  double lambda = 0.0;
  double gamma = 0.0;
  double b = 0.0;
  /// "ks" or "transform-sup"
  std::string metric;
  double distance = 0.0;
  double mean = 0.0;  // of b_n T_n
  double median = 0.0;
  double std_error = 0.0;
  std::vector<double> transform;  // empirical transform of b_n T_n on the s-grid
  std::vector<double> transform_se;
};

struct ConvergenceReport {
  std::string schedule;
  std::string law;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<double> s_grid;
  /// Allowance for "nonincreasing beyond noise": 1 / sqrt(R).
  double noise = 0.0;
  std::vector<ConvergencePoint> points;
  bool nonincreasing = true;
};

/// Seed used for grid point n of a sweep with base seed `seed`.
std::uint64_t grid_seed(std::uint64_t seed, std::uint32_t n);

ConvergenceReport convergence_check(const ScalingSchedule& schedule, std::span<const std::uint32_t> n_grid,
                                    std::uint64_t reps, std::uint64_t seed, const ConvergenceOptions& options = {});

struct DivergenceRow {
  std::uint32_t n = 0;
  double lambda = 0.0;
  double gamma = 0.0;
  double b = 0.0;
  double mean = 0.0;  // of T_n, unscaled
  double median = 0.0;
  double std_error = 0.0;
};

struct DivergenceReport {
  std::string schedule;
  std::vector<DivergenceRow> rows;
  bool medians_increasing = false;
  bool medians_decreasing = false;
};

/// Unscaled T_n statistics along the grid for a complete-graph schedule.
DivergenceReport divergence_probe(const ScalingSchedule& schedule, std::span<const std::uint32_t> n_grid,
                                  std::uint64_t reps, std::uint64_t seed, const BatchOptions& options = {});

}  // namespace eoe
