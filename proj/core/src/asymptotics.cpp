#include "eoe/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eoe/error.hpp"
#include "eoe/numeric.hpp"

namespace eoe {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kRegimeMargin = 0.1;

double exp1_transform(double s) { return 1.0 / (1.0 + s); }
double exp1_cdf(double t) { return t <= 0.0 ? 0.0 : -std::expm1(-t); }

double hypoexp_transform(double s) { return 2.0 / ((s + 1.0) * (s + 2.0)); }
double hypoexp_cdf(double t) {
  if (t <= 0.0) return 0.0;
  const double f = -std::expm1(-t);
  return f * f;
}

double ring_transform(double s) {
  const double r1 = std::sqrt(1.0 + s);
  const double r2 = std::sqrt(2.0 + s);
  // sqrt(2+s) - sqrt(1+s) = 1 / (sqrt(2+s) + sqrt(1+s)) avoids cancellation at large s.
  return 2.0 / ((r2 + r1) * r1 * r2 * (2.0 * r1 - r2));
}

void check_s(double s) {
  if (!(s >= 0.0)) throw Error(Errc::InvalidArgument, "s must be >= 0");
}

std::string number(double x) { return format_double(x); }

void check_grid(std::span<const std::uint32_t> n_grid) {
  if (n_grid.empty()) throw Error(Errc::InvalidArgument, "empty n-grid");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1]) throw Error(Errc::InvalidArgument, "n-grid must be strictly increasing");
}

}  // namespace

double RateLaw::at(double n) const {
  double v = coef * std::pow(n, power);
  if (log_power != 0.0) v *= std::pow(std::log(n), log_power);
  return v;
}

std::string RateLaw::describe() const {
  std::string out = number(coef);
  if (power != 0.0) out += "*n^" + number(power);
  if (log_power != 0.0) out += "*log(n)^" + number(log_power);
  return out;
}

std::uint32_t PartitionRule::m_at(std::uint32_t n) const {
  double m = 0.0;
  switch (kind) {
    case Kind::None:
      return 0;
    case Kind::Fixed:
      m = param;
      break;
    case Kind::Proportional:
      m = param * n;
      break;
    case Kind::Power:
      m = std::pow(static_cast<double>(n), param);
      break;
    case Kind::PolyLog:
      m = std::pow(std::log(static_cast<double>(n)), param);
      break;
  }
  const double hi = n > 1 ? n - 1.0 : 1.0;
  return static_cast<std::uint32_t>(std::clamp(std::round(m), 1.0, hi));
}

std::string PartitionRule::describe() const {
  switch (kind) {
    case Kind::None:
      return "none";
    case Kind::Fixed:
      return "m=" + number(param);
    case Kind::Proportional:
      return "m=" + number(param) + "*n";
    case Kind::Power:
      return "m=n^" + number(param);
    case Kind::PolyLog:
      return "m=log(n)^" + number(param);
  }
  return "none";
}

std::string_view to_string(ScaleRule r) noexcept {
  switch (r) {
    case ScaleRule::NormalizedSteps:
      return "normalized-steps";
    case ScaleRule::UnnormalizedSteps:
      return "unnormalized-steps";
    case ScaleRule::CompleteRegimeI:
      return "complete-regime-i";
    case ScaleRule::CompleteRegimeII:
      return "complete-regime-ii";
    case ScaleRule::CompleteRegimeIII:
      return "complete-regime-iii";
    case ScaleRule::Ring:
      return "ring";
  }
  return "unknown";
}

LimitLaw limit_law(std::string_view name) {
  if (name == "exp1") return {"exp1", exp1_transform, exp1_cdf, 1.0, 2.0};
  if (name == "hypoexp12") return {"hypoexp12", hypoexp_transform, hypoexp_cdf, 1.5, 3.5};
  if (name == "ring") return {"ring", ring_transform, {}, kNaN, kNaN};
  throw Error(Errc::UnknownLaw, "no limit law named '" + std::string(name) + "'");
}

double limit_law_transform(std::string_view name, double s) {
  check_s(s);
  return limit_law(name).transform(s);
}

std::vector<std::string> limit_law_names() { return {"exp1", "hypoexp12", "ring"}; }

Graph ScalingSchedule::graph_at(std::uint32_t n) const {
  switch (family) {
    case Family::Complete:
      return build_complete(n);
    case Family::CompleteBipartite:
      return build_bipartite(m_at(n), n);
    case Family::Ring:
      return build_ring(n);
    case Family::Generic:
      break;
  }
  throw Error(Errc::InvalidArgument, "schedule '" + name + "' has no graph family");
}

double ScalingSchedule::a_at(std::uint32_t n) const {
  switch (normalizer) {
    case Normalizer::None:
      return 0.0;
    case Normalizer::InverseN:
      return 1.0 / n;
    case Normalizer::InverseM:
      return 1.0 / m_at(n);
  }
  return 0.0;
}

double ScalingSchedule::b_at(std::uint32_t n) const {
  const double l = lambda_at(n);
  const double g = gamma_at(n);
  switch (rule) {
    case ScaleRule::NormalizedSteps:
      return c2 / (2.0 * c1) * g * g / (l * a_at(n));
    case ScaleRule::UnnormalizedSteps:
      return (c1 + c2) / (2.0 * (1.0 + c1)) * g * g / l;
    case ScaleRule::CompleteRegimeI:
      return static_cast<double>(n) * g * g / l;
    case ScaleRule::CompleteRegimeII:
      return 2.0 * l;
    case ScaleRule::CompleteRegimeIII:
    case ScaleRule::Ring:
      return g;
  }
  return kNaN;
}

std::vector<RegimeCondition> ScalingSchedule::conditions() const {
  const ScalingSchedule& s = *this;
  std::vector<RegimeCondition> out;
  switch (rule) {
    case ScaleRule::NormalizedSteps:
      out.push_back({"a_n -> 0", [s](std::uint32_t n) { return s.a_at(n); }});
      out.push_back({"gamma_n = o(lambda_n a_n)",
                     [s](std::uint32_t n) { return s.gamma_at(n) / (s.lambda_at(n) * s.a_at(n)); }});
      break;
    case ScaleRule::UnnormalizedSteps:
      out.push_back({"gamma_n = o(lambda_n)", [s](std::uint32_t n) { return s.gamma_at(n) / s.lambda_at(n); }});
      break;
    case ScaleRule::CompleteRegimeI:
      out.push_back({"lambda_n = omega(n gamma_n)",
                     [s](std::uint32_t n) { return n * s.gamma_at(n) / s.lambda_at(n); }});
      break;
    case ScaleRule::CompleteRegimeII:
      out.push_back({"lambda_n = o(gamma_n)", [s](std::uint32_t n) { return s.lambda_at(n) / s.gamma_at(n); }});
      break;
    case ScaleRule::CompleteRegimeIII:
      out.push_back({"lambda_n = omega(gamma_n)", [s](std::uint32_t n) { return s.gamma_at(n) / s.lambda_at(n); }});
      out.push_back({"lambda_n = o(n gamma_n)",
                     [s](std::uint32_t n) { return s.lambda_at(n) / (n * s.gamma_at(n)); }});
      break;
    case ScaleRule::Ring:
      out.push_back({"gamma_n = o(lambda_n)", [s](std::uint32_t n) { return s.gamma_at(n) / s.lambda_at(n); }});
      // The walkers must not feel the finite circumference within a recovery time.
      out.push_back({"lambda_n = o(n^2 gamma_n)",
                     [s](std::uint32_t n) { return s.lambda_at(n) / (double(n) * n * s.gamma_at(n)); }});
      break;
  }
  return out;
}

void ScalingSchedule::validate(std::span<const std::uint32_t> n_grid) const {
  check_grid(n_grid);
  for (std::uint32_t n : n_grid) {
    if (!(lambda_at(n) > 0.0) || !(gamma_at(n) > 0.0))
      throw Error(Errc::InvalidArgument, "schedule '" + name + "' gives a non-positive rate at n=" + std::to_string(n));
  }
  const std::uint32_t lo = n_grid.front();
  const std::uint32_t hi = n_grid.back();
  for (const auto& c : conditions()) {
    const double r_lo = c.ratio(lo);
    const double r_hi = c.ratio(hi);
    if (!(r_hi <= kRegimeMargin) || !(r_hi <= r_lo))
      throw Error(Errc::RegimeViolation, "schedule '" + name + "': " + c.label + " fails (ratio " + number(r_lo) +
                                             " at n=" + std::to_string(lo) + ", " + number(r_hi) +
                                             " at n=" + std::to_string(hi) + ")");
  }
}

std::vector<ScalingSchedule> builtin_schedules() {
  using PK = PartitionRule::Kind;
  std::vector<ScalingSchedule> out;
  auto add = [&](ScalingSchedule s) { out.push_back(std::move(s)); };

  add({"complete-i", Family::Complete, {}, {1.0, 1.5, 0.0}, {1.0, 0.0, 0.0}, ScaleRule::CompleteRegimeI,
       Normalizer::InverseN, 1.0, 2.0, "exp1"});
  add({"complete-ii", Family::Complete, {}, {1.0, 0.5, 0.0}, {1.0, 1.0, 0.0}, ScaleRule::CompleteRegimeII,
       Normalizer::InverseN, 1.0, 2.0, "exp1"});
  add({"complete-iii", Family::Complete, {}, {1.0, 0.5, 0.0}, {1.0, 0.0, 0.0}, ScaleRule::CompleteRegimeIII,
       Normalizer::InverseN, 1.0, 2.0, "hypoexp12"});

  const double alpha = 0.5;
  const double q = alpha * (1.0 - alpha);
  add({"bipartite-alpha", Family::CompleteBipartite, {PK::Proportional, alpha}, {1.0, 2.0, 0.0}, {1.0, 0.0, 0.0},
       ScaleRule::NormalizedSteps, Normalizer::InverseN, 4.0 * q, 32.0 * q * q, "exp1"});
  add({"bipartite-power", Family::CompleteBipartite, {PK::Power, 0.5}, {1.0, 2.0, 0.0}, {1.0, 0.0, 0.0},
       ScaleRule::NormalizedSteps, Normalizer::InverseM, 4.0, 32.0, "exp1"});
  add({"bipartite-polylog", Family::CompleteBipartite, {PK::PolyLog, 2.0}, {1.0, 2.0, 0.0}, {1.0, 0.0, 0.0},
       ScaleRule::NormalizedSteps, Normalizer::InverseM, 4.0, 32.0, "exp1"});

  auto fixed_m = [](std::string name, double m) {
    return ScalingSchedule{std::move(name),
                           Family::CompleteBipartite,
                           {PK::Fixed, m},
                           {1.0, 1.0, 0.0},
                           {1.0, 0.0, 0.0},
                           ScaleRule::UnnormalizedSteps,
                           Normalizer::None,
                           4.0 * m - 1.0,
                           16.0 * m * (2.0 * m - 1.0) + 1.0,
                           "exp1"};
  };
  add(fixed_m("bipartite-fixed", 2.0));
  add(fixed_m("star", 1.0));

  add({"ring", Family::Ring, {}, {1.0, 4.0 / 3.0, 0.0}, {1.0, 0.0, 0.0}, ScaleRule::Ring, Normalizer::None, kNaN,
       kNaN, "ring"});
  return out;
}

ScalingSchedule find_schedule(std::string_view name) {
  for (auto& s : builtin_schedules())
    if (s.name == name) return s;
  throw Error(Errc::InvalidArgument, "unknown schedule '" + std::string(name) + "'");
}

std::uint64_t grid_seed(std::uint64_t seed, std::uint32_t n) {
  Rng rng(seed, (std::uint64_t{1} << 63) | n);
  return rng();
}

ConvergenceReport convergence_check(const ScalingSchedule& schedule, std::span<const std::uint32_t> n_grid,
                                    std::uint64_t reps, std::uint64_t seed, const ConvergenceOptions& options) {
  schedule.validate(n_grid);
  if (reps < 1) throw Error(Errc::InvalidArgument, "reps must be >= 1");
  const LimitLaw law = limit_law(schedule.law);

  ConvergenceReport report;
  report.schedule = schedule.name;
  report.law = law.name;
  report.reps = reps;
  report.seed = seed;
  report.s_grid = options.s_grid;
  report.noise = 1.0 / std::sqrt(static_cast<double>(reps));

  for (std::uint32_t n : n_grid) {
    const Graph g = schedule.graph_at(n);
    ConvergencePoint p;
    p.n = n;
    p.m = g.partition();
    p.lambda = schedule.lambda_at(n);
    p.gamma = schedule.gamma_at(n);
    p.b = schedule.b_at(n);

    const SampleSummary raw = run_batch(g, p.lambda, p.gamma, reps, grid_seed(seed, n), {}, options.batch);
    std::vector<double> scaled(raw.sorted_samples().begin(), raw.sorted_samples().end());
    for (double& t : scaled) t *= p.b;
    const SampleSummary sum(std::move(scaled), options.s_grid);

    p.mean = sum.mean();
    p.median = sum.median();
    p.std_error = sum.std_error();
    p.transform = sum.transform();
    p.transform_se = sum.transform_se();
    if (law.has_cdf()) {
      p.metric = "ks";
      p.distance = ks_distance(sum.sorted_samples(), law.cdf);
    } else {
      p.metric = "transform-sup";
      p.distance = 0.0;
      for (std::size_t k = 0; k < options.s_grid.size(); ++k)
        p.distance = std::max(p.distance, std::fabs(p.transform[k] - law.transform(options.s_grid[k])));
    }
    report.points.push_back(std::move(p));
  }
  for (std::size_t i = 1; i < report.points.size(); ++i)
    if (report.points[i].distance > report.points[i - 1].distance + report.noise) report.nonincreasing = false;
  return report;
}

DivergenceReport divergence_probe(const ScalingSchedule& schedule, std::span<const std::uint32_t> n_grid,
                                  std::uint64_t reps, std::uint64_t seed, const BatchOptions& options) {
  if (schedule.family != Family::Complete)
    throw Error(Errc::RegimeViolation, "divergence probe needs a complete-graph schedule");
  schedule.validate(n_grid);
  if (reps < 1) throw Error(Errc::InvalidArgument, "reps must be >= 1");

  DivergenceReport report;
  report.schedule = schedule.name;
  for (std::uint32_t n : n_grid) {
    DivergenceRow row;
    row.n = n;
    row.lambda = schedule.lambda_at(n);
    row.gamma = schedule.gamma_at(n);
    row.b = schedule.b_at(n);
    const SampleSummary sum = run_batch(schedule.graph_at(n), row.lambda, row.gamma, reps, grid_seed(seed, n), {}, options);
    row.mean = sum.mean();
    row.median = sum.median();
    row.std_error = sum.std_error();
    report.rows.push_back(row);
  }
  report.medians_increasing = report.rows.size() >= 2;
  report.medians_decreasing = report.rows.size() >= 2;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (!(report.rows[i].median > report.rows[i - 1].median)) report.medians_increasing = false;
    if (!(report.rows[i].median < report.rows[i - 1].median)) report.medians_decreasing = false;
  }
  return report;
}

}  // namespace eoe
