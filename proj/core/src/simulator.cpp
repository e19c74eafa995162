#include "eoe/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "eoe/error.hpp"
#include "eoe/meeting_walk.hpp"

namespace eoe {

namespace {

void check_rates(double lambda, double gamma) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(Errc::InvalidArgument, "lambda must be positive");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw Error(Errc::InvalidArgument, "gamma must be positive");
}

void check_start(const Graph& g, Vertex v) {
  if (v >= g.size()) throw Error(Errc::InvalidArgument, "start vertex " + std::to_string(v) + " out of range");
}

[[noreturn]] void runaway(std::uint64_t cap) {
  throw Error(Errc::RunawaySimulation, "no absorption after " + std::to_string(cap) + " events");
}

std::uint64_t poisson(double mean, Rng& rng) {
  if (mean <= 0.0) return 0;
  return std::poisson_distribution<std::uint64_t>(mean)(rng);
}

double gamma_variate(double shape, double rate, Rng& rng) {
  return std::gamma_distribution<double>(shape, 1.0 / rate)(rng);
}

Vertex step_from(const Graph& g, Vertex v, Rng& rng) { return g.neighbor(v, rng.below(g.degree(v))); }

EpidemicSample run_event(const Graph& g, double lambda, double gamma, Rng& rng, Vertex start,
                         const EventObserver* observer) {
  SimState st{start, start, Health::I, Health::I, 0.0};
  EpidemicSample out;
  std::uint64_t events = 0;
  while (st.h1 == Health::I || st.h2 == Health::I) {
    if (++events > kMaxEvents) runaway(kMaxEvents);
    const int infected = (st.h1 == Health::I) + (st.h2 == Health::I);
    const double total = 2.0 * lambda + gamma * infected;
    const double dt = rng.exponential(total);
    st.clock += dt;
    const double u = rng.uniform() * total;

    SimEvent ev{EventKind::Jump, 0, dt, total, {}};
    if (u < 2.0 * lambda) {
      ev.agent = u < lambda ? 0 : 1;
      Vertex& w = ev.agent == 0 ? st.w1 : st.w2;
      w = step_from(g, w, rng);
      ++out.n_jumps;
      if (st.w1 == st.w2 && st.h1 != st.h2) {
        st.h1 = st.h2 = Health::I;
        ++out.n_reinfections;
      }
    } else {
      if (infected == 2)
        ev.agent = u - 2.0 * lambda < gamma ? 0 : 1;
      else
        ev.agent = st.h1 == Health::I ? 0 : 1;
      if (st.w1 == st.w2) {
        // The partner is infected on the same vertex and reinfects at once.
        ev.kind = EventKind::RecoveryReinfected;
      } else {
        ev.kind = EventKind::Recovery;
        (ev.agent == 0 ? st.h1 : st.h2) = Health::S;
      }
    }
    if (observer) {
      ev.after = st;
      (*observer)(ev);
    }
  }
  out.T = st.clock;
  return out;
}

// Works in "apart time". While the agents share a vertex they are both
// infected and every recovery is undone instantly, so only the separating
// jump (rate 2 lambda) matters there. While apart the health state changes
// only at recoveries, so the jumps inside a recovery window form a Poisson
// count that the meeting walk can consume in bulk.
EpidemicSample run_leap(const Graph& g, double lambda, double gamma, Rng& rng, Vertex start) {
  const auto walk = make_meeting_walk(g, start);
  const double jump_rate = 2.0 * lambda;
  EpidemicSample out;
  double time = 0.0;

  auto leave_vertex = [&] {
    time += rng.exponential(jump_rate);
    ++out.n_jumps;
    walk->separate(rng);
  };

  leave_vertex();
  for (std::uint64_t round = 0;; ++round) {
    if (round > kMaxEvents) runaway(kMaxEvents);

    // Both infected and apart until the first effective recovery.
    const double window = rng.exponential(2.0 * gamma);
    const std::uint64_t steps = poisson(jump_rate * window, rng);
    const std::uint64_t meets = walk->count_meets(steps, rng);
    time += window;
    if (meets > 0) time += gamma_variate(static_cast<double>(meets), jump_rate, rng);
    out.n_jumps += steps + meets;

    // One infected: the recovery races the next meeting.
    const double recovery = rng.exponential(gamma);
    const std::uint64_t budget = poisson(jump_rate * recovery, rng);
    const auto hit = walk->next_meet(budget, rng);
    if (!hit) {
      time += recovery;
      out.n_jumps += budget;
      break;
    }
    // Arrival *hit of `budget` uniform arrivals on [0, recovery].
    const double x = gamma_variate(static_cast<double>(*hit), 1.0, rng);
    const double y = gamma_variate(static_cast<double>(budget - *hit + 1), 1.0, rng);
    time += recovery * (x / (x + y));
    out.n_jumps += *hit;
    ++out.n_reinfections;
    leave_vertex();
  }
  out.T = time;
  return out;
}

}  // namespace

std::string_view to_string(Engine e) noexcept { return e == Engine::Event ? "event" : "leap"; }

Engine parse_engine(std::string_view name) {
  if (name == "event") return Engine::Event;
  if (name == "leap") return Engine::Leap;
  throw Error(Errc::InvalidArgument, "unknown engine '" + std::string(name) + "'");
}

EpidemicSample simulate_eoe(const Graph& g, double lambda, double gamma, std::uint64_t seed, Vertex start,
                            Engine engine) {
  Rng rng(seed, 0);
  return simulate_eoe(g, lambda, gamma, rng, start, engine);
}

EpidemicSample simulate_eoe(const Graph& g, double lambda, double gamma, Rng& rng, Vertex start, Engine engine) {
  check_rates(lambda, gamma);
  check_start(g, start);
  return engine == Engine::Event ? run_event(g, lambda, gamma, rng, start, nullptr)
                                 : run_leap(g, lambda, gamma, rng, start);
}

EpidemicSample simulate_eoe_observed(const Graph& g, double lambda, double gamma, Rng& rng, Vertex start,
                                     const EventObserver& observer) {
  check_rates(lambda, gamma);
  check_start(g, start);
  return run_event(g, lambda, gamma, rng, start, &observer);
}

MeetingSample simulate_meeting(const Graph& g, double lambda, std::uint64_t seed, Vertex i, Vertex j) {
  Rng rng(seed, 0);
  return simulate_meeting(g, lambda, rng, i, j);
}

MeetingSample simulate_meeting(const Graph& g, double lambda, Rng& rng, Vertex i, Vertex j) {
  check_rates(lambda, 1.0);
  check_start(g, i);
  check_start(g, j);
  if (i == j) throw Error(Errc::InvalidArgument, "meeting time needs distinct start vertices");
  MeetingSample out;
  while (i != j) {
    if (out.N >= kMaxEvents) runaway(kMaxEvents);
    out.M += rng.exponential(2.0 * lambda);
    Vertex& w = rng.coin() ? i : j;
    w = step_from(g, w, rng);
    ++out.N;
  }
  return out;
}

std::vector<EpidemicSample> simulate_batch(const Graph& g, double lambda, double gamma, std::uint64_t seed,
                                           std::uint64_t first, std::uint64_t count, const BatchOptions& options) {
  check_rates(lambda, gamma);
  check_start(g, options.start);
  std::vector<EpidemicSample> out(count);
  auto one = [&](std::uint64_t k) {
    Rng rng(seed, first + k);
    out[k] = simulate_eoe(g, lambda, gamma, rng, options.start, options.engine);
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, options.threads), std::max<std::uint64_t>(count, 1)));
  if (workers == 1) {
    for (std::uint64_t k = 0; k < count; ++k) one(k);
    return out;
  }

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t k = next++; k < count; k = next++) {
        try {
          one(k);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return out;
}

SampleSummary run_batch(const Graph& g, double lambda, double gamma, std::uint64_t reps, std::uint64_t seed,
                        std::vector<double> s_grid, const BatchOptions& options) {
  if (reps < 1) throw Error(Errc::InvalidArgument, "reps must be >= 1");
  return run_batch_range(g, lambda, gamma, 0, reps, seed, std::move(s_grid), options);
}

SampleSummary run_batch_range(const Graph& g, double lambda, double gamma, std::uint64_t first, std::uint64_t count,
                              std::uint64_t seed, std::vector<double> s_grid, const BatchOptions& options) {
  const auto samples = simulate_batch(g, lambda, gamma, seed, first, count, options);
  std::vector<double> ts;
  ts.reserve(samples.size());
  for (const auto& x : samples) ts.push_back(x.T);
  return SampleSummary(std::move(ts), std::move(s_grid));
}

}  // namespace eoe
