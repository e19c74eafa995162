#include "eoe/oracle.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "eoe/error.hpp"
#include "eoe/numeric.hpp"

namespace eoe::oracle {

namespace {

constexpr std::size_t kNoState = std::numeric_limits<std::size_t>::max();

// Health pairs: 0 = (I, I), 1 = (I, S), 2 = (S, I).
int health_code(Health h1, Health h2) {
  if (h1 == Health::I && h2 == Health::I) return 0;
  if (h1 == Health::I) return 1;
  return 2;
}

void check_rate(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) throw Error(Errc::InvalidArgument, std::string(name) + " must be positive");
}

}  // namespace

double GeneratorRow::exit_rate() const noexcept {
  CompensatedSum total;
  for (const auto& [target, rate] : rates) total += rate;
  total += to_absorbing;
  return total.value();
}

JointChain::JointChain(const Graph& g, double lambda, double gamma) : n_(g.size()) {
  check_rate(lambda, "lambda");
  check_rate(gamma, "gamma");
  const std::uint64_t transient = 3ull * n_ * n_ - 2ull * n_;
  if (transient > kMaxStates)
    throw Error(Errc::TooLarge, "joint chain would have " + std::to_string(transient) + " states (cap " +
                                    std::to_string(kMaxStates) + ")");

  index_.assign(std::size_t{3} * n_ * n_, kNoState);
  auto slot = [this](const JointChainState& s) {
    return (std::size_t{s.w1} * n_ + s.w2) * 3 + static_cast<std::size_t>(health_code(s.h1, s.h2));
  };
  constexpr std::pair<Health, Health> kHealth[] = {{Health::I, Health::I}, {Health::I, Health::S}, {Health::S, Health::I}};
  for (Vertex a = 0; a < n_; ++a) {
    for (Vertex b = 0; b < n_; ++b) {
      for (auto [h1, h2] : kHealth) {
        const JointChainState s{a, b, h1, h2};
        if (!s.valid()) continue;
        index_[slot(s)] = states_.size();
        states_.push_back(s);
      }
    }
  }

  // Co-located mixed health collapses to (I, I): infection is instantaneous.
  auto settle = [](JointChainState s) {
    if (s.w1 == s.w2 && s.h1 != s.h2) s.h1 = s.h2 = Health::I;
    return s;
  };

  rows_.resize(states_.size());
  for (std::size_t x = 0; x < states_.size(); ++x) {
    const JointChainState s = states_[x];
    GeneratorRow& row = rows_[x];
    auto add = [&](const JointChainState& target, double rate) {
      if (target.absorbed())
        row.to_absorbing += rate;
      else
        row.rates.emplace_back(index_[slot(target)], rate);
    };
    const std::uint32_t d1 = g.degree(s.w1);
    for (std::uint32_t k = 0; k < d1; ++k) {
      JointChainState t = s;
      t.w1 = g.neighbor(s.w1, k);
      add(settle(t), lambda / d1);
    }
    const std::uint32_t d2 = g.degree(s.w2);
    for (std::uint32_t k = 0; k < d2; ++k) {
      JointChainState t = s;
      t.w2 = g.neighbor(s.w2, k);
      add(settle(t), lambda / d2);
    }
    if (s.h1 == Health::I) {
      JointChainState t = s;
      t.h1 = Health::S;
      add(settle(t), gamma);
    }
    if (s.h2 == Health::I) {
      JointChainState t = s;
      t.h2 = Health::S;
      add(settle(t), gamma);
    }
  }
}

std::size_t JointChain::index_of(const JointChainState& s) const {
  if (s.w1 >= n_ || s.w2 >= n_ || !s.valid() || s.absorbed())
    throw Error(Errc::InvalidArgument, "not a transient joint state");
  return index_[(std::size_t{s.w1} * n_ + s.w2) * 3 + static_cast<std::size_t>(health_code(s.h1, s.h2))];
}

double JointChain::laplace_absorption(std::size_t from, double s) const {
  if (!(s >= 0.0)) throw Error(Errc::InvalidArgument, "s must be >= 0");
  // (q_x + s) phi(x) - sum_y rate(x -> y) phi(y) = rate(x -> absorbing)
  const auto size = static_cast<Eigen::Index>(states_.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
  Eigen::VectorXd b(size);
  for (Eigen::Index x = 0; x < size; ++x) {
    const GeneratorRow& row = rows_[static_cast<std::size_t>(x)];
    a(x, x) += row.exit_rate() + s;
    for (const auto& [target, rate] : row.rates) a(x, static_cast<Eigen::Index>(target)) -= rate;
    b(x) = row.to_absorbing;
  }
  const Eigen::VectorXd phi = a.partialPivLu().solve(b);
  return phi(static_cast<Eigen::Index>(from));
}

double exact_laplace_T_joint(const Graph& g, double lambda, double gamma, double s, Vertex start) {
  if (start >= g.size()) throw Error(Errc::InvalidArgument, "start vertex out of range");
  const JointChain chain(g, lambda, gamma);
  return chain.laplace_absorption(chain.index_of({start, start, Health::I, Health::I}), s);
}

double exact_laplace_M_pair(const Graph& g, double lambda, double s, Vertex i, Vertex j) {
  check_rate(lambda, "lambda");
  if (!(s >= 0.0)) throw Error(Errc::InvalidArgument, "s must be >= 0");
  const std::uint32_t n = g.size();
  if (i >= n || j >= n || i == j) throw Error(Errc::InvalidArgument, "meeting time needs distinct start vertices");
  const std::uint64_t pairs = std::uint64_t{n} * (n - 1);
  if (pairs > JointChain::kMaxStates)
    throw Error(Errc::TooLarge, "pair chain would have " + std::to_string(pairs) + " states");

  auto index = [n](Vertex a, Vertex b) {
    return static_cast<Eigen::Index>(std::size_t{a} * (n - 1) + (b < a ? b : b - 1));
  };
  const auto size = static_cast<Eigen::Index>(pairs);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(size);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u == v) continue;
      const Eigen::Index x = index(u, v);
      a(x, x) = 2.0 * lambda + s;
      const std::uint32_t du = g.degree(u);
      for (std::uint32_t k = 0; k < du; ++k) {
        const Vertex to = g.neighbor(u, k);
        if (to == v)
          rhs(x) += lambda / du;
        else
          a(x, index(to, v)) -= lambda / du;
      }
      const std::uint32_t dv = g.degree(v);
      for (std::uint32_t k = 0; k < dv; ++k) {
        const Vertex to = g.neighbor(v, k);
        if (to == u)
          rhs(x) += lambda / dv;
        else
          a(x, index(u, to)) -= lambda / dv;
      }
    }
  }
  const Eigen::VectorXd phi = a.partialPivLu().solve(rhs);
  return phi(index(i, j));
}

double PmfN::mean_truncated() const {
  CompensatedSum m;
  for (std::size_t k = 0; k < pmf.size(); ++k) m += static_cast<double>(k + 1) * pmf[k];
  return m.value();
}

PmfN exact_pmf_N(const MeetingChain& chain, std::size_t k_max) {
  if (k_max < 1) throw Error(Errc::InvalidArgument, "k_max must be >= 1");
  const std::size_t n = chain.size();
  const std::size_t absorbing = chain.absorbing();
  std::vector<std::vector<std::pair<std::size_t, double>>> moves(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (x == absorbing) continue;
    for (std::size_t y = 0; y < n; ++y) {
      const double p = chain.step(x, y);
      if (p > 0.0) moves[x].emplace_back(y, p);
    }
  }

  std::vector<double> mass(n, 0.0), next(n, 0.0);
  mass[chain.start()] = 1.0;
  PmfN out;
  out.pmf.reserve(k_max);
  for (std::size_t k = 0; k < k_max; ++k) {
    std::fill(next.begin(), next.end(), 0.0);
    double absorbed = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      if (mass[x] == 0.0) continue;
      for (const auto& [y, p] : moves[x]) {
        if (y == absorbing)
          absorbed += mass[x] * p;
        else
          next[y] += mass[x] * p;
      }
    }
    out.pmf.push_back(absorbed);
    mass.swap(next);
  }
  CompensatedSum tail;
  for (double m : mass) tail += m;
  out.tail = tail.value();
  return out;
}

double ring_recursion_solve(std::uint32_t n, double s) {
  if (n % 2 != 0 || n < 4) throw Error(Errc::UnsupportedClosedForm, "ring recursion needs even n >= 4");
  const double alpha = 0.5 * std::exp(-s);
  double c = 2.0 * alpha;
  for (std::uint32_t i = n / 2 - 1; i >= 1; --i) c = alpha / (1.0 - alpha * c);
  return c;
}

std::vector<double> ring_q_sequence(double alpha, std::size_t count) {
  std::vector<double> q;
  q.reserve(count);
  const double a2 = alpha * alpha;
  for (std::size_t j = 0; j < count; ++j) {
    if (j == 0)
      q.push_back(1.0);
    else if (j == 1)
      q.push_back(1.0 - 2.0 * a2);
    else
      q.push_back(q[j - 1] - a2 * q[j - 2]);
  }
  return q;
}

}  // namespace eoe::oracle
