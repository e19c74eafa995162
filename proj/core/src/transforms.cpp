#include "eoe/transforms.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "eoe/error.hpp"
#include "eoe/numeric.hpp"

namespace eoe {

std::string_view to_string(Subject s) noexcept {
  switch (s) {
    case Subject::N: return "N";
    case Subject::M: return "M";
    case Subject::T: return "T";
  }
  return "?";
}

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::ClosedForm: return "closed-form";
    case Provenance::LinearSolve: return "linear-solve";
    case Provenance::Empirical: return "empirical";
  }
  return "?";
}

TransformFn TransformFn::from_value(std::function<double(double)> value) {
  TransformFn fn;
  fn.complement = [value](double s) { return 1.0 - value(s); };
  fn.value = std::move(value);
  return fn;
}

TransformContext TransformContext::of(const Graph& g) {
  TransformContext c;
  c.graph = g.descriptor();
  c.family = g.family();
  c.n = g.size();
  c.m = g.partition();
  return c;
}

TransformEvaluator::TransformEvaluator(Subject subject, Provenance provenance, TransformContext context,
                                       TransformFn fn)
    : subject_(subject), provenance_(provenance), context_(std::move(context)), fn_(std::move(fn)) {
  if (!fn_.value) throw Error(Errc::InvalidArgument, "transform evaluator without a value function");
  if (!fn_.complement) fn_ = TransformFn::from_value(std::move(fn_.value));
}

namespace {

void require_nonnegative(double s) {
  if (!(s >= 0.0)) throw Error(Errc::InvalidArgument, "transform argument must be >= 0, got " + format_double(s));
}

}  // namespace

double TransformEvaluator::value(double s) const {
  require_nonnegative(s);
  return fn_.value(s);
}

double TransformEvaluator::complement(double s) const {
  require_nonnegative(s);
  return fn_.complement(s);
}

// ---- closed forms for N -------------------------------------------------------

double laplace_N_complete(std::uint32_t n, double s) {
  const double e = std::exp(-s);
  return e / (n - (n - 1.0) * e);
}

namespace {

// Geom(q) on {1, 2, ...} written with c = 1/q: e^{-s} / (c - (c-1) e^{-s}).
double geometric_complement(double c, double s) {
  const double e = std::exp(-s);
  return -c * std::expm1(-s) / (c - (c - 1.0) * e);
}

}  // namespace

double laplace_N_complete_exact(std::uint32_t n, double s) {
  const double e = std::exp(-s);
  return e / ((n - 1.0) - (n - 2.0) * e);
}

double laplace_N_bipartite(std::uint32_t m, std::uint32_t n, double s) {
  const double c = 0.5 * static_cast<double>(n) / (static_cast<double>(m) * (n - m));
  const double e = std::exp(-s);
  const double e2 = std::exp(-2.0 * s);
  return c * e / (1.0 - e2 + c * e2);
}

namespace {

double bipartite_complement(std::uint32_t m, std::uint32_t n, double s) {
  const double c = 0.5 * static_cast<double>(n) / (static_cast<double>(m) * (n - m));
  const double e = std::exp(-s);
  const double one_minus_e2 = -std::expm1(-2.0 * s);
  const double den = one_minus_e2 + c * e * e;
  // 1 - c e / den = (1 - e^{-2s} - c e (1 - e^{-s})) / den
  return (one_minus_e2 + c * e * std::expm1(-s)) / den;
}

}  // namespace

RingAux RingAux::at(double s) {
  RingAux aux{};
  aux.alpha = 0.5 * std::exp(-s);
  // 1 - 4 alpha^2 = 1 - e^{-2s}, without cancellation near s = 0.
  const double root = std::sqrt(-std::expm1(-2.0 * s));
  aux.x1 = 0.5 * (1.0 + root);
  // x1 x2 = alpha^2 avoids the cancellation in (1 - root) / 2 for large s.
  aux.x2 = aux.alpha * aux.alpha / aux.x1;
  const double log_alpha = -s - std::numbers::ln2;
  aux.log_ratio = 2.0 * (log_alpha - std::log(aux.x1));
  return aux;
}

double laplace_N_ring(std::uint32_t n, double s) {
  if (n % 2 != 0)
    throw Error(Errc::UnsupportedClosedForm, "ring closed form needs even n, got " + std::to_string(n));
  if (n < 4) throw Error(Errc::InvalidSize, "ring closed form needs n >= 4");
  const RingAux aux = RingAux::at(s);
  const double half = n / 2.0;
  // (x2/x1)^k in log space; underflow to 0 recovers the n -> infinity limit.
  const double ratio_km1 = std::exp((half - 1.0) * aux.log_ratio);
  const double ratio_k = std::exp(half * aux.log_ratio);
  return aux.alpha / aux.x1 * (1.0 + ratio_km1) / (1.0 + ratio_k);
}

double laplace_N_ring_limit(double s) {
  return std::exp(-s) / (1.0 + std::sqrt(-std::expm1(-2.0 * s)));
}

// ---- generic linear solve ----------------------------------------------------

namespace {

/// Transient part of an absorbing chain, restricted to states reachable from the start.
struct AbsorbingSystem {
  Eigen::MatrixXd transient_kernel;
  Eigen::VectorXd to_absorbing;
  Eigen::Index start = 0;
};

AbsorbingSystem reduce(const MeetingChain& chain) {
  const auto n = static_cast<Eigen::Index>(chain.size());
  const auto& p = chain.kernel();
  const auto absorbing = static_cast<Eigen::Index>(chain.absorbing());
  const auto start = static_cast<Eigen::Index>(chain.start());
  if (start == absorbing) throw Error(Errc::InvalidArgument, "chain starts in its absorbing state");

  std::vector<char> reachable(static_cast<std::size_t>(n), 0);
  std::vector<Eigen::Index> stack{start};
  reachable[static_cast<std::size_t>(start)] = 1;
  while (!stack.empty()) {
    const Eigen::Index x = stack.back();
    stack.pop_back();
    if (x == absorbing) continue;
    for (Eigen::Index y = 0; y < n; ++y) {
      if (p(x, y) > 0.0 && !reachable[static_cast<std::size_t>(y)]) {
        reachable[static_cast<std::size_t>(y)] = 1;
        stack.push_back(y);
      }
    }
  }

  std::vector<char> drains(static_cast<std::size_t>(n), 0);
  drains[static_cast<std::size_t>(absorbing)] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (Eigen::Index x = 0; x < n; ++x) {
      if (drains[static_cast<std::size_t>(x)] || !reachable[static_cast<std::size_t>(x)]) continue;
      for (Eigen::Index y = 0; y < n; ++y) {
        if (p(x, y) > 0.0 && drains[static_cast<std::size_t>(y)]) {
          drains[static_cast<std::size_t>(x)] = 1;
          changed = true;
          break;
        }
      }
    }
  }

  std::vector<Eigen::Index> transient;
  for (Eigen::Index x = 0; x < n; ++x) {
    if (x == absorbing || !reachable[static_cast<std::size_t>(x)]) continue;
    if (!drains[static_cast<std::size_t>(x)])
      throw Error(Errc::NoAbsorption, "state " + chain.labels()[static_cast<std::size_t>(x)] +
                                          " is reachable but never absorbed");
    transient.push_back(x);
  }

  AbsorbingSystem sys;
  const auto t = static_cast<Eigen::Index>(transient.size());
  sys.transient_kernel.resize(t, t);
  sys.to_absorbing.resize(t);
  for (Eigen::Index i = 0; i < t; ++i) {
    const Eigen::Index x = transient[static_cast<std::size_t>(i)];
    if (x == start) sys.start = i;
    sys.to_absorbing(i) = p(x, absorbing);
    for (Eigen::Index j = 0; j < t; ++j) sys.transient_kernel(i, j) = p(x, transient[static_cast<std::size_t>(j)]);
  }
  return sys;
}

/// Returns (L_N(s), 1 - L_N(s)) at the start state.
std::pair<double, double> solve_generic(const AbsorbingSystem& sys, double s) {
  const double e = std::exp(-s);
  const double one_minus_e = -std::expm1(-s);
  const auto t = sys.transient_kernel.rows();
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(t, t) - e * sys.transient_kernel;
  Eigen::MatrixXd rhs(t, 2);
  rhs.col(0) = e * sys.to_absorbing;
  rhs.col(1).setConstant(one_minus_e);
  const Eigen::MatrixXd sol = a.partialPivLu().solve(rhs);
  return {sol(sys.start, 0), sol(sys.start, 1)};
}

}  // namespace

double laplace_N_generic(const MeetingChain& chain, double s) {
  require_nonnegative(s);
  return solve_generic(reduce(chain), s).first;
}

// ---- evaluator factories -----------------------------------------------------

TransformEvaluator transform_N_complete(std::uint32_t n, CompleteVariant variant) {
  const Graph g = build_complete(n);
  TransformFn fn;
  const double c = variant == CompleteVariant::SelfLoop ? n : n - 1.0;
  if (variant == CompleteVariant::SelfLoop)
    fn.value = [n](double s) { return laplace_N_complete(n, s); };
  else
    fn.value = [n](double s) { return laplace_N_complete_exact(n, s); };
  fn.complement = [c](double s) { return geometric_complement(c, s); };
  return TransformEvaluator(Subject::N, Provenance::ClosedForm, TransformContext::of(g), std::move(fn));
}

TransformEvaluator transform_N_bipartite(std::uint32_t m, std::uint32_t n) {
  const Graph g = build_bipartite(m, n);
  TransformFn fn;
  fn.value = [m, n](double s) { return laplace_N_bipartite(m, n, s); };
  fn.complement = [m, n](double s) { return bipartite_complement(m, n, s); };
  return TransformEvaluator(Subject::N, Provenance::ClosedForm, TransformContext::of(g), std::move(fn));
}

TransformEvaluator transform_N_ring(std::uint32_t n) {
  const Graph g = build_ring(n);
  if (n % 2 != 0)
    throw Error(Errc::UnsupportedClosedForm, "ring closed form needs even n, got " + std::to_string(n));
  return TransformEvaluator(Subject::N, Provenance::ClosedForm, TransformContext::of(g),
                            TransformFn::from_value([n](double s) { return laplace_N_ring(n, s); }));
}

TransformEvaluator transform_N_generic(MeetingChain chain, TransformContext context) {
  auto sys = std::make_shared<const AbsorbingSystem>(reduce(chain));
  TransformFn fn;
  fn.value = [sys](double s) { return solve_generic(*sys, s).first; };
  fn.complement = [sys](double s) { return solve_generic(*sys, s).second; };
  return TransformEvaluator(Subject::N, Provenance::LinearSolve, std::move(context), std::move(fn));
}

TransformEvaluator transform_N(const Graph& g, CompleteVariant variant) {
  switch (g.family()) {
    case Family::Complete: return transform_N_complete(g.size(), variant);
    case Family::CompleteBipartite: return transform_N_bipartite(g.partition(), g.size());
    case Family::Ring:
      if (g.size() % 2 == 0) return transform_N_ring(g.size());
      break;
    case Family::Generic: break;
  }
  return transform_N_generic(meeting_chain(g), TransformContext::of(g));
}

// ---- M and T -------------------------------------------------------------------

namespace {

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw Error(Errc::InvalidArgument, std::string(name) + " must be positive and finite");
}

// -log(2 lambda / (2 lambda + s))
double step_argument(double lambda, double s) { return std::log1p(s / (2.0 * lambda)); }

void require_subject(const TransformEvaluator& ev, Subject expected) {
  if (ev.subject() != expected)
    throw Error(Errc::InvalidArgument, "expected a transform of " + std::string(to_string(expected)) + ", got " +
                                           std::string(to_string(ev.subject())));
}

/// Numerator and denominator of the end-of-epidemic transform given the
/// meeting complements c1 = 1 - L_M(s + gamma) and c2 = 1 - L_M(s + 2 gamma).
struct Ratio {
  double num;
  double den;
  double den_minus_num;
};

Ratio epidemic_ratio(double lambda, double gamma, double s, double c1, double c2) {
  const double a = s + gamma;
  const double b = s + 2.0 * gamma;
  Ratio r{};
  r.num = CompensatedSum{}.add(2.0 * gamma * c1 / a).add(-2.0 * gamma * c2 / b).value();
  r.den = CompensatedSum{}.add(s / (2.0 * lambda)).add(2.0 * c1).add(-c2).value();
  r.den_minus_num = s * CompensatedSum{}.add(1.0 / (2.0 * lambda)).add(2.0 * c1 / a).add(-c2 / b).value();
  if (!(r.den > 0.0))
    throw Error(Errc::NumericDegeneracy, "end-of-epidemic denominator is " + format_double(r.den) + " at s=" +
                                             format_double(s));
  return r;
}

TransformContext with_rates(TransformContext c, double lambda, double gamma) {
  c.lambda = lambda;
  c.gamma = gamma;
  return c;
}

}  // namespace

double laplace_M_from_N(const TransformEvaluator& ln, double lambda, double s) {
  require_positive(lambda, "lambda");
  require_nonnegative(s);
  return ln.value(step_argument(lambda, s));
}

TransformEvaluator laplace_M_from_N(const TransformEvaluator& ln, double lambda) {
  require_subject(ln, Subject::N);
  require_positive(lambda, "lambda");
  TransformFn fn;
  fn.value = [ln, lambda](double s) { return ln.value(step_argument(lambda, s)); };
  fn.complement = [ln, lambda](double s) { return ln.complement(step_argument(lambda, s)); };
  return TransformEvaluator(Subject::M, ln.provenance(), with_rates(ln.context(), lambda, 0.0), std::move(fn));
}

double laplace_M_complete_self_loop(std::uint32_t n, double lambda, double s) {
  return 2.0 * lambda / (2.0 * lambda + n * s);
}

double laplace_T(const TransformEvaluator& lm, double lambda, double gamma, double s) {
  require_positive(lambda, "lambda");
  require_positive(gamma, "gamma");
  require_nonnegative(s);
  if (s == 0.0) return 1.0;
  const Ratio r = epidemic_ratio(lambda, gamma, s, lm.complement(s + gamma), lm.complement(s + 2.0 * gamma));
  return r.num / r.den;
}

TransformEvaluator laplace_T(const TransformEvaluator& lm, double lambda, double gamma) {
  require_subject(lm, Subject::M);
  require_positive(lambda, "lambda");
  require_positive(gamma, "gamma");
  TransformFn fn;
  fn.value = [lm, lambda, gamma](double s) { return laplace_T(lm, lambda, gamma, s); };
  fn.complement = [lm, lambda, gamma](double s) {
    if (s == 0.0) return 0.0;
    const Ratio r = epidemic_ratio(lambda, gamma, s, lm.complement(s + gamma), lm.complement(s + 2.0 * gamma));
    return r.den_minus_num / r.den;
  };
  return TransformEvaluator(Subject::T, lm.provenance(), with_rates(lm.context(), lambda, gamma), std::move(fn));
}

double laplace_T_from_N(const TransformEvaluator& ln, double lambda, double gamma, double s) {
  require_positive(lambda, "lambda");
  require_positive(gamma, "gamma");
  require_nonnegative(s);
  if (s == 0.0) return 1.0;
  // E[(2 lambda / (2 lambda + s + k gamma))^N] = L_N(log(1 + (s + k gamma) / (2 lambda)))
  const double c1 = ln.complement(std::log1p((s + gamma) / (2.0 * lambda)));
  const double c2 = ln.complement(std::log1p((s + 2.0 * gamma) / (2.0 * lambda)));
  const Ratio r = epidemic_ratio(lambda, gamma, s, c1, c2);
  return r.num / r.den;
}

TransformEvaluator laplace_T_from_N(const TransformEvaluator& ln, double lambda, double gamma) {
  require_subject(ln, Subject::N);
  require_positive(lambda, "lambda");
  require_positive(gamma, "gamma");
  return TransformEvaluator(Subject::T, ln.provenance(), with_rates(ln.context(), lambda, gamma),
                            TransformFn::from_value([ln, lambda, gamma](double s) {
                              return laplace_T_from_N(ln, lambda, gamma, s);
                            }));
}

// ---- moments -------------------------------------------------------------------

double moments_from_transform(const TransformFn& fn, int k) {
  if (k != 1 && k != 2) throw Error(Errc::InvalidArgument, "only moments 1 and 2 are supported");
  constexpr double probe = 1e-8;
  const double rough_mean = fn.complement(probe) / probe;
  if (!(rough_mean > 0.0) || !std::isfinite(rough_mean))
    throw Error(Errc::MomentDivergenceSuspected, "transform does not decrease at the origin");
  const double h = 1e-4 / rough_mean;

  auto difference = [&](double step) {
    if (k == 1) return fn.complement(step) / step;
    // L(2h) - 2 L(h) + L(0) = 2 C(h) - C(2h)
    return (2.0 * fn.complement(step) - fn.complement(2.0 * step)) / (step * step);
  };
  const double d0 = difference(h);
  const double d1 = difference(h / 2.0);
  const double d2 = difference(h / 4.0);
  const double r1_coarse = 2.0 * d1 - d0;
  const double r1_fine = 2.0 * d2 - d1;
  const double r2 = (4.0 * r1_fine - r1_coarse) / 3.0;
  if (!std::isfinite(r2) || std::fabs(r2 - r1_fine) > 1e-3 * std::fabs(r2))
    throw Error(Errc::MomentDivergenceSuspected,
                "Richardson levels disagree (" + format_double(r1_fine) + " vs " + format_double(r2) + ")");
  return r2;
}

double moments_from_transform(const TransformEvaluator& ev, int k) { return moments_from_transform(ev.fn(), k); }

}  // namespace eoe
