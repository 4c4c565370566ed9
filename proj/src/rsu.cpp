#include "v2v/rsu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "v2v/errors.hpp"

namespace v2v {

std::vector<std::vector<int>> form_zones_seeded(const std::vector<Vec2>& coords,
                                                int num_zones, int seed_pair,
                                                double wrap_period) {
  const int k_count = static_cast<int>(coords.size());
  if (num_zones < 1) throw SimError("zone formation requires Z >= 1");
  if (k_count < num_zones) throw SimError("zone formation requires K >= Z");
  if (seed_pair < 0 || seed_pair >= k_count) throw SimError("seed pair out of range");

  auto dist = [&](int a, int b) {
    return wrap_period > 0 ? toroidal_distance(coords[a], coords[b], wrap_period)
                           : distance(coords[a], coords[b]);
  };

  std::vector<std::vector<int>> zones(num_zones);
  std::vector<bool> sorted(k_count, false);
  zones[0].push_back(seed_pair);
  sorted[seed_pair] = true;

  // Remaining zones are seeded with the unsorted pairs nearest to the seed.
  for (int z = 1; z < num_zones; ++z) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < k_count; ++k) {
      if (sorted[k]) continue;
      const double d = dist(seed_pair, k);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    zones[z].push_back(best);
    sorted[best] = true;
  }

  // Unsorted pairs join, one by one, the farthest zone by min-distance.
  for (int k = 0; k < k_count; ++k) {
    if (sorted[k]) continue;
    int best_zone = 0;
    double best_score = -1.0;
    for (int z = 0; z < num_zones; ++z) {
      double nearest = std::numeric_limits<double>::infinity();
      for (int member : zones[z]) nearest = std::min(nearest, dist(k, member));
      if (nearest > best_score) {
        best_score = nearest;
        best_zone = z;
      }
    }
    zones[best_zone].push_back(k);
    sorted[k] = true;
  }
  return zones;
}

std::vector<std::vector<int>> form_zones(const std::vector<Vec2>& coords, int num_zones,
                                         Rng& rng, int* seed_pair_out,
                                         double wrap_period) {
  if (coords.empty()) throw SimError("zone formation requires at least one pair");
  std::uniform_int_distribution<int> pick(0, static_cast<int>(coords.size()) - 1);
  const int seed_pair = pick(rng);
  if (seed_pair_out) *seed_pair_out = seed_pair;
  return form_zones_seeded(coords, num_zones, seed_pair, wrap_period);
}

std::vector<double> rb_count_shares(const std::vector<std::vector<int>>& zones,
                                    const std::vector<double>& mean_arrival_bps,
                                    const std::vector<double>& queue_bound_bits,
                                    const std::vector<double>& reliability_eps,
                                    int num_rbs) {
  double total = 0.0;
  std::vector<double> zone_weight(zones.size(), 0.0);
  for (std::size_t z = 0; z < zones.size(); ++z) {
    for (int k : zones[z]) {
      const double denom = queue_bound_bits[k] * reliability_eps[k];
      if (denom <= 0.0 || mean_arrival_bps[k] <= 0.0)
        throw SimError("RB shares require positive arrival, bound and epsilon");
      zone_weight[z] += mean_arrival_bps[k] / denom;
    }
    total += zone_weight[z];
  }
  std::vector<double> shares(zones.size(), 0.0);
  for (std::size_t z = 0; z < zones.size(); ++z)
    shares[z] = num_rbs * zone_weight[z] / total;
  return shares;
}

std::vector<std::vector<int>> assign_rbs(const std::vector<double>& shares, int num_rbs) {
  const int num_zones = static_cast<int>(shares.size());
  if (num_rbs < num_zones)
    throw SimError("cannot allocate RBs: fewer RBs than zones");

  // Every zone gets one RB up front, the rest go by largest remainder of
  // the shares rescaled to the leftover budget.
  std::vector<int> counts(num_zones, 1);
  int leftover = num_rbs - num_zones;
  if (leftover > 0) {
    std::vector<double> excess(num_zones, 0.0);
    double excess_sum = 0.0;
    for (int z = 0; z < num_zones; ++z) {
      excess[z] = std::max(shares[z] - 1.0, 0.0);
      excess_sum += excess[z];
    }
    std::vector<double> frac(num_zones, 0.0);
    int given = 0;
    for (int z = 0; z < num_zones; ++z) {
      const double scaled = excess_sum > 0 ? excess[z] * leftover / excess_sum : 0.0;
      const int whole = static_cast<int>(std::floor(scaled + 1e-9));
      counts[z] += whole;
      given += whole;
      frac[z] = scaled - whole;
    }
    std::vector<int> order(num_zones);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return frac[a] > frac[b]; });
    for (int i = 0; i < leftover - given; ++i) counts[order[i]] += 1;
  }

  std::vector<std::vector<int>> rb_sets(num_zones);
  int next_rb = 0;
  for (int z = 0; z < num_zones; ++z) {
    for (int c = 0; c < counts[z]; ++c) rb_sets[z].push_back(next_rb++);
  }
  return rb_sets;
}

}  // namespace v2v
