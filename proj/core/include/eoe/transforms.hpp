#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "eoe/graph.hpp"
#include "eoe/meeting_chain.hpp"

namespace eoe {

/// A Laplace transform s -> E[exp(-s X)] together with its complement
/// 1 - E[exp(-s X)]. The complement is carried separately because several
/// closed forms yield it without the cancellation of `1 - value` at small s.
struct TransformFn {
  std::function<double(double)> value;
  std::function<double(double)> complement;

  /// Fills `complement` with 1 - value when none is given.
  static TransformFn from_value(std::function<double(double)> value);
};

enum class Subject { N, M, T };
enum class Provenance { ClosedForm, LinearSolve, Empirical };
/// Exact: a jump goes to one of the n - 1 other vertices, N ~ Geom(1/(n-1)).
/// SelfLoop: the target is uniform over all n vertices, N ~ Geom(1/n).
enum class CompleteVariant { Exact, SelfLoop };

std::string_view to_string(Subject s) noexcept;
std::string_view to_string(Provenance p) noexcept;

struct TransformContext {
  std::string graph;  // descriptor, e.g. "ring:6"
  Family family = Family::Generic;
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  double lambda = 0.0;  // walk rate per walker; 0 when irrelevant (subject N)
  double gamma = 0.0;   // recovery rate; 0 unless subject T

  static TransformContext of(const Graph& g);
};

/// Laplace transform of N, M or T. Evaluation requires s >= 0 and yields a
/// value in (0, 1], nonincreasing in s.
class TransformEvaluator {
 public:
  TransformEvaluator(Subject subject, Provenance provenance, TransformContext context, TransformFn fn);

  double operator()(double s) const { return value(s); }
  double value(double s) const;
  double complement(double s) const;

  Subject subject() const noexcept { return subject_; }
  Provenance provenance() const noexcept { return provenance_; }
  const TransformContext& context() const noexcept { return context_; }
  const TransformFn& fn() const noexcept { return fn_; }

 private:
  Subject subject_;
  Provenance provenance_;
  TransformContext context_;
  TransformFn fn_;
};

// ---- transforms of N --------------------------------------------------------

/// K_n transform for the self-loop variant, N ~ Geom(1/n): e^{-s} / (n - (n-1) e^{-s}).
double laplace_N_complete(std::uint32_t n, double s);
/// Exact K_n embedded chain, N ~ Geom(1/(n-1)).
double laplace_N_complete_exact(std::uint32_t n, double s);
double laplace_N_bipartite(std::uint32_t m, std::uint32_t n, double s);

/// alpha = e^{-s}/2 and the roots x1 >= x2 of x^2 - x + alpha^2.
struct RingAux {
  double alpha;
  double x1;
  double x2;
  /// log(x2 / x1), finite for every s > 0.
  double log_ratio;

  static RingAux at(double s);
};

/// Closed form for the even ring; odd n throws UnsupportedClosedForm.
double laplace_N_ring(std::uint32_t n, double s);
/// The n -> infinity limit e^{-s} / (1 + sqrt(1 - e^{-2s})).
double laplace_N_ring_limit(double s);

/// Exact L_N at the chain's start state by a dense solve of
/// phi(met) = 1, phi(x) = e^{-s} sum_y P(x, y) phi(y).
/// Throws NoAbsorption if some state reachable from the start cannot reach "met".
double laplace_N_generic(const MeetingChain& chain, double s);

TransformEvaluator transform_N_complete(std::uint32_t n, CompleteVariant variant = CompleteVariant::Exact);
TransformEvaluator transform_N_bipartite(std::uint32_t m, std::uint32_t n);
TransformEvaluator transform_N_ring(std::uint32_t n);
TransformEvaluator transform_N_generic(MeetingChain chain, TransformContext context);
/// Closed form where one exists, linear solve otherwise.
TransformEvaluator transform_N(const Graph& g, CompleteVariant variant = CompleteVariant::Exact);

// ---- M and T ----------------------------------------------------------------

/// L_M(s) = L_N(-log(2 lambda / (2 lambda + s))).
double laplace_M_from_N(const TransformEvaluator& ln, double lambda, double s);
TransformEvaluator laplace_M_from_N(const TransformEvaluator& ln, double lambda);
/// 2 lambda / (2 lambda + n s), the K_n meeting transform under Geom(1/n).
double laplace_M_complete_self_loop(std::uint32_t n, double lambda, double s);

/// End-of-epidemic transform from the meeting transform. Returns 1 at s == 0;
/// throws NumericDegeneracy if the denominator is not positive.
double laplace_T(const TransformEvaluator& lm, double lambda, double gamma, double s);
TransformEvaluator laplace_T(const TransformEvaluator& lm, double lambda, double gamma);

/// Same quantity written directly against L_N (no intermediate M evaluator).
double laplace_T_from_N(const TransformEvaluator& ln, double lambda, double gamma, double s);
TransformEvaluator laplace_T_from_N(const TransformEvaluator& ln, double lambda, double gamma);

/// k-th raw moment (k in {1, 2}) by Richardson-extrapolated differences of
/// the transform at the origin. Throws MomentDivergenceSuspected when the
/// extrapolation does not settle.
double moments_from_transform(const TransformFn& fn, int k);
double moments_from_transform(const TransformEvaluator& ev, int k);

}  // namespace eoe
