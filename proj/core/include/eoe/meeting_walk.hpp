#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "eoe/graph.hpp"
#include "eoe/rng.hpp"

namespace eoe {

/// Relative position of two walkers, advanced one jump at a time (each jump
/// moves one walker, chosen uniformly, to a uniform neighbor). Family graphs
/// use their reduced state; generic graphs track both vertices.
///
/// A walk is always "apart" between calls. Meeting leaves the walkers
/// together until `separate` is called.
class MeetingWalk {
 public:
  virtual ~MeetingWalk() = default;

  /// The jump that splits co-located walkers.
  virtual void separate(Rng& rng) = 0;

  /// Performs `steps` jumps, splitting the walkers after every meeting with
  /// an extra (uncounted) jump. Returns the number of meetings.
  virtual std::uint64_t count_meets(std::uint64_t steps, Rng& rng) = 0;

  /// Jumps until the walkers meet or `budget` jumps are spent. On a meeting
  /// returns the number of jumps used; the walkers are then co-located.
  virtual std::optional<std::uint64_t> next_meet(std::uint64_t budget, Rng& rng) = 0;
};

/// Walk for `g` with both walkers co-located at `start`.
std::unique_ptr<MeetingWalk> make_meeting_walk(const Graph& g, Vertex start);

}  // namespace eoe
