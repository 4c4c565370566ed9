#pragma once

#include <cstdint>
#include <vector>

#include "v2v/geometry.hpp"
#include "v2v/rng.hpp"

namespace v2v {

// Output of the slow-timescale controller, valid for one frame: the zone
// partition and the per-zone orthogonal RB sets.
struct ZoneAssignment {
  std::int64_t frame = 0;
  std::vector<std::vector<int>> zone_pairs;  // zone -> pair ids
  std::vector<std::vector<int>> zone_rbs;    // zone -> RB indices (0-based)
  std::vector<int> pair_zone;                // pair id -> zone

  int num_zones() const { return static_cast<int>(zone_pairs.size()); }
};

// Deterministic core of the proximity-aware zone formation: the given pair
// seeds zone 0, the Z-1 pairs nearest to it seed the remaining zones, and
// every other pair joins the zone maximizing its distance to the zone's
// nearest member. Ties break toward the lowest pair id / zone id.
// wrap_period > 0 measures distances by the minimum-image convention on a
// torus of that period (matching the mobility boundary rule).
std::vector<std::vector<int>> form_zones_seeded(const std::vector<Vec2>& coords,
                                                int num_zones, int seed_pair,
                                                double wrap_period = 0.0);

// Same, with the seed pair drawn uniformly from the zoning substream.
// seed_pair_out, when non-null, reports the drawn pair for run metadata.
std::vector<std::vector<int>> form_zones(const std::vector<Vec2>& coords, int num_zones,
                                         Rng& rng, int* seed_pair_out = nullptr,
                                         double wrap_period = 0.0);

// QoS-proportional real-valued RB shares per zone; shares sum to num_rbs.
// weight of pair k: mean_arrival / (queue_bound * reliability_eps).
std::vector<double> rb_count_shares(const std::vector<std::vector<int>>& zones,
                                    const std::vector<double>& mean_arrival_bps,
                                    const std::vector<double>& queue_bound_bits,
                                    const std::vector<double>& reliability_eps,
                                    int num_rbs);

// Rounds shares to integer counts (floor of one RB per zone, remainder by
// largest fractional part) and hands out contiguous RB index ranges.
std::vector<std::vector<int>> assign_rbs(const std::vector<double>& shares, int num_rbs);

}  // namespace v2v
