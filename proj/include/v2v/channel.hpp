#pragma once

#include <cstdint>
#include <vector>

#include "v2v/mobility.hpp"
#include "v2v/rng.hpp"
#include "v2v/scenario.hpp"

namespace v2v {

struct PathLossParams {
  double pl0_db = 47.0;        // loss at the reference distance
  double ref_distance_m = 1.0;
  double exponent_los = 2.0;
  double exponent_nlos = 3.5;  // applies beyond each corner
  double corner_loss_db = 10.0;

  static PathLossParams from_config(const ScenarioConfig& cfg) {
    return {cfg.pl0_db, cfg.pl_ref_distance_m, cfg.pl_exponent_los,
            cfg.pl_exponent_nlos, cfg.pl_corner_loss_db};
  }
};

// LOS: PL0 + 10 n_los log10(max(d, d0)/d0).
// NLOS (street-canyon corner recursion over the rectilinear route with
// cumulative distances D_1..D_m at each bend):
//   PL = PL0 + 10 n_los log10(max(D_1, d0)/d0)
//        + sum_j [ corner_loss + 10 n_nlos log10(D_j / D_{j-1}) ].
double path_loss_db(const Vec2& tx, const Vec2& rx, const RoadNetwork& net,
                    const PathLossParams& params);

double los_path_loss_db(double distance_m, const PathLossParams& params);

// Per-slot linear power gains g[k', k, n]: transmitter of pair k' into the
// receiver of pair k on RB n.
struct ChannelState {
  std::int64_t slot = 0;
  int num_pairs = 0;
  int num_rbs = 0;
  std::vector<double> gains;  // size K*K*N

  double gain(int tx_pair, int rx_pair, int rb) const {
    return gains[(static_cast<std::size_t>(tx_pair) * num_pairs + rx_pair) * num_rbs + rb];
  }
  double& gain(int tx_pair, int rx_pair, int rb) {
    return gains[(static_cast<std::size_t>(tx_pair) * num_pairs + rx_pair) * num_rbs + rb];
  }
};

// g = 10^(-PL/10) * f with f a unit-mean exponential draw per (link, RB,
// slot) when fading is on, else f = 1. Within-pair links (k' == k) use the
// LOS branch at the convoy gap distance regardless of geometry. Fading
// draws are consumed in a fixed (k', k, n) order so the stream is
// independent of the scheme under test.
ChannelState gain_matrix(const std::vector<PairKinematics>& pairs, const RoadNetwork& net,
                         int num_rbs, std::int64_t slot, bool fading_enabled,
                         Rng& fading_rng, const PathLossParams& params);

}  // namespace v2v
