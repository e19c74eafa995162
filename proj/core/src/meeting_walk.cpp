#include "eoe/meeting_walk.hpp"

#include <cmath>
#include <random>

#include "eoe/error.hpp"

namespace eoe {

namespace {

// Failures before the first success of a Bernoulli(p) sequence, as a double
// so that astronomically long waits do not overflow.
double geometric_failures(double p, Rng& rng) {
  if (p >= 1.0) return 0.0;
  return std::floor(std::log(rng.uniform_positive()) / std::log1p(-p));
}

std::uint64_t binomial(std::uint64_t trials, double p, Rng& rng) {
  if (trials == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  return std::binomial_distribution<std::uint64_t>(trials, p)(rng);
}

class CompleteWalk final : public MeetingWalk {
 public:
  explicit CompleteWalk(std::uint32_t n) : q_(1.0 / (n - 1.0)) {}

  void separate(Rng&) override {}

  std::uint64_t count_meets(std::uint64_t steps, Rng& rng) override { return binomial(steps, q_, rng); }

  std::optional<std::uint64_t> next_meet(std::uint64_t budget, Rng& rng) override {
    const double k = 1.0 + geometric_failures(q_, rng);
    if (k > static_cast<double>(budget)) return std::nullopt;
    return static_cast<std::uint64_t>(k);
  }

 private:
  double q_;
};

// States: d1 (opposite sides) and d2 (same side, distinct vertices).
// d2 always steps to d1; d1 meets with probability p and steps to d2 otherwise.
class BipartiteWalk final : public MeetingWalk {
 public:
  BipartiteWalk(std::uint32_t m, std::uint32_t n) : p_(0.5 * (1.0 / m + 1.0 / (n - m))) {}

  void separate(Rng&) override { same_side_ = false; }

  std::uint64_t count_meets(std::uint64_t steps, Rng& rng) override {
    std::uint64_t rem = steps;
    std::uint64_t meets = 0;
    if (same_side_ && rem > 0) {
      --rem;
      same_side_ = false;
    }
    while (rem > 0) {
      if (rem == 1) {
        if (rng.uniform() < p_)
          ++meets;
        else
          same_side_ = true;
        break;
      }
      // k trials from d1, each costing one step on a meeting and two otherwise.
      const std::uint64_t k = rem / 2;
      const std::uint64_t fails = binomial(k, 1.0 - p_, rng);
      meets += k - fails;
      rem -= k + fails;
    }
    return meets;
  }

  std::optional<std::uint64_t> next_meet(std::uint64_t budget, Rng& rng) override {
    const std::uint64_t offset = same_side_ ? 1 : 0;
    const double k = static_cast<double>(offset) + 2.0 * geometric_failures(p_, rng) + 1.0;
    if (k <= static_cast<double>(budget)) {
      same_side_ = false;
      return static_cast<std::uint64_t>(k);
    }
    if (budget >= offset) same_side_ = (budget - offset) % 2 == 1;
    return std::nullopt;
  }

 private:
  double p_;
  bool same_side_ = false;
};

// Cyclic distance 1..floor(n/2); 0 is a meeting.
class RingWalk final : public MeetingWalk {
 public:
  explicit RingWalk(std::uint32_t n) : far_(n / 2), odd_(n % 2 == 1) {}

  void separate(Rng&) override { d_ = 1; }

  std::uint64_t count_meets(std::uint64_t steps, Rng& rng) override {
    std::uint64_t meets = 0;
    for (std::uint64_t i = 0; i < steps; ++i) {
      step(rng);
      if (d_ == 0) {
        ++meets;
        d_ = 1;
      }
    }
    return meets;
  }

  std::optional<std::uint64_t> next_meet(std::uint64_t budget, Rng& rng) override {
    for (std::uint64_t i = 1; i <= budget; ++i) {
      step(rng);
      if (d_ == 0) return i;
    }
    return std::nullopt;
  }

 private:
  void step(Rng& rng) {
    const bool up = rng.coin();
    if (d_ == far_) {
      if (!odd_ || !up) --d_;
    } else {
      d_ += up ? 1 : -1;
    }
  }

  std::uint32_t far_;
  bool odd_;
  std::uint32_t d_ = 0;
};

class PairWalk final : public MeetingWalk {
 public:
  PairWalk(const Graph& g, Vertex start) : g_(g), a_(start), b_(start) {}

  void separate(Rng& rng) override { move(rng); }

  std::uint64_t count_meets(std::uint64_t steps, Rng& rng) override {
    std::uint64_t meets = 0;
    for (std::uint64_t i = 0; i < steps; ++i) {
      move(rng);
      if (a_ == b_) {
        ++meets;
        move(rng);
      }
    }
    return meets;
  }

  std::optional<std::uint64_t> next_meet(std::uint64_t budget, Rng& rng) override {
    for (std::uint64_t i = 1; i <= budget; ++i) {
      move(rng);
      if (a_ == b_) return i;
    }
    return std::nullopt;
  }

 private:
  void move(Rng& rng) {
    Vertex& w = rng.coin() ? a_ : b_;
    w = g_.neighbor(w, rng.below(g_.degree(w)));
  }

  const Graph& g_;
  Vertex a_;
  Vertex b_;
};

}  // namespace

std::unique_ptr<MeetingWalk> make_meeting_walk(const Graph& g, Vertex start) {
  if (start >= g.size()) throw Error(Errc::InvalidArgument, "start vertex out of range");
  switch (g.family()) {
    case Family::Complete:
      return std::make_unique<CompleteWalk>(g.size());
    case Family::CompleteBipartite:
      return std::make_unique<BipartiteWalk>(g.partition(), g.size());
    case Family::Ring:
      return std::make_unique<RingWalk>(g.size());
    case Family::Generic:
      break;
  }
  return std::make_unique<PairWalk>(g, start);
}

}  // namespace eoe
