#include "v2v/channel.hpp"

#include <cmath>

#include "v2v/errors.hpp"
#include "v2v/units.hpp"

namespace v2v {

double los_path_loss_db(double distance_m, const PathLossParams& p) {
  const double d = std::max(distance_m, p.ref_distance_m);
  return p.pl0_db + 10.0 * p.exponent_los * std::log10(d / p.ref_distance_m);
}

double path_loss_db(const Vec2& tx, const Vec2& rx, const RoadNetwork& net,
                    const PathLossParams& p) {
  if (net.is_los(tx, rx)) return los_path_loss_db(distance(tx, rx), p);

  const ManhattanRoute r = net.route(tx, rx);
  if (r.num_legs <= 1) return los_path_loss_db(r.total_m, p);

  double cum = std::max(r.legs[0], p.ref_distance_m);
  double pl = p.pl0_db + 10.0 * p.exponent_los * std::log10(cum / p.ref_distance_m);
  for (int j = 1; j < r.num_legs; ++j) {
    const double next = cum + r.legs[j];
    pl += p.corner_loss_db + 10.0 * p.exponent_nlos * std::log10(next / cum);
    cum = next;
  }
  return pl;
}

ChannelState gain_matrix(const std::vector<PairKinematics>& pairs, const RoadNetwork& net,
                         int num_rbs, std::int64_t slot, bool fading_enabled,
                         Rng& fading_rng, const PathLossParams& params) {
  if (pairs.empty()) throw SimError("gain_matrix requires at least one pair");
  const int k_count = static_cast<int>(pairs.size());
  ChannelState st;
  st.slot = slot;
  st.num_pairs = k_count;
  st.num_rbs = num_rbs;
  st.gains.resize(static_cast<std::size_t>(k_count) * k_count * num_rbs);

  std::exponential_distribution<double> fade(1.0);  // unit mean
  for (int tx = 0; tx < k_count; ++tx) {
    for (int rx = 0; rx < k_count; ++rx) {
      double pl;
      if (tx == rx) {
        // Forced LOS inside a pair; the convoy gap is the along-lane
        // distance and stays meaningful across the toroidal seam.
        pl = los_path_loss_db(pairs[tx].gap_m, params);
      } else {
        pl = path_loss_db(pairs[tx].tx_position, pairs[rx].rx_position, net, params);
      }
      const double g0 = db_to_linear(-pl);
      for (int n = 0; n < num_rbs; ++n) {
        // clamp keeps gains strictly positive even on a pathological draw
        const double f = fading_enabled ? std::max(fade(fading_rng), 1e-300) : 1.0;
        st.gain(tx, rx, n) = g0 * f;
      }
    }
  }
  return st;
}

}  // namespace v2v
