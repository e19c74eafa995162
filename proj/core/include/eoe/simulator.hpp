#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "eoe/graph.hpp"
#include "eoe/health.hpp"
#include "eoe/rng.hpp"
#include "eoe/summary.hpp"

namespace eoe {

/// Both engines sample the same law.
///   Event: literal race of the two jump clocks and the recovery clocks.
///   Leap:  skips over the walk while the health state is frozen, drawing the
///          number of jumps in each recovery window and the meetings among them.
///          Its cost per sample does not grow with lambda / gamma on family graphs.
enum class Engine { Event, Leap };

std::string_view to_string(Engine e) noexcept;
/// "event" or "leap"; anything else throws InvalidArgument.
Engine parse_engine(std::string_view name);

struct SimState {
  Vertex w1 = 0;
  Vertex w2 = 0;
  Health h1 = Health::I;
  Health h2 = Health::I;
  double clock = 0.0;
};

struct EpidemicSample {
  double T = 0.0;
  std::uint64_t n_jumps = 0;
  /// S -> I transitions after time 0.
  std::uint64_t n_reinfections = 0;

  friend bool operator==(const EpidemicSample&, const EpidemicSample&) = default;
};

enum class EventKind {
  Jump,
  Recovery,
  /// A recovery while co-located with an infected agent; reinfection is
  /// instantaneous, so the state does not change.
  RecoveryReinfected,
};

struct SimEvent {
  EventKind kind;
  int agent;          // 0 or 1
  double holding;     // time since the previous event
  double total_rate;  // rate of the race that produced this event
  SimState after;
};

using EventObserver = std::function<void(const SimEvent&)>;

inline constexpr std::uint64_t kMaxEvents = 1'000'000'000;

/// One sample of T with both agents infected and co-located at `start`.
/// Replication r of a batch uses stream (seed, r); this call is replication 0.
EpidemicSample simulate_eoe(const Graph& g, double lambda, double gamma, std::uint64_t seed, Vertex start = 0,
                            Engine engine = Engine::Leap);
EpidemicSample simulate_eoe(const Graph& g, double lambda, double gamma, Rng& rng, Vertex start = 0,
                            Engine engine = Engine::Leap);
/// Event engine with every event reported to `observer`.
EpidemicSample simulate_eoe_observed(const Graph& g, double lambda, double gamma, Rng& rng, Vertex start,
                                     const EventObserver& observer);

struct MeetingSample {
  double M = 0.0;
  std::uint64_t N = 0;
};

/// Walkers start at i != j; returns the first co-location time and jump count.
MeetingSample simulate_meeting(const Graph& g, double lambda, std::uint64_t seed, Vertex i, Vertex j);
MeetingSample simulate_meeting(const Graph& g, double lambda, Rng& rng, Vertex i, Vertex j);

struct BatchOptions {
  Engine engine = Engine::Leap;
  unsigned threads = 1;
  Vertex start = 0;
};

/// Replications [first, first + count), in index order regardless of threads.
std::vector<EpidemicSample> simulate_batch(const Graph& g, double lambda, double gamma, std::uint64_t seed,
                                           std::uint64_t first, std::uint64_t count, const BatchOptions& options = {});

SampleSummary run_batch(const Graph& g, double lambda, double gamma, std::uint64_t reps, std::uint64_t seed,
                        std::vector<double> s_grid, const BatchOptions& options = {});
/// One shard of a batch; shards merge into the summary of their union.
SampleSummary run_batch_range(const Graph& g, double lambda, double gamma, std::uint64_t first, std::uint64_t count,
                              std::uint64_t seed, std::vector<double> s_grid, const BatchOptions& options = {});

}  // namespace eoe
