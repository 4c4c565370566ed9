#include "v2v/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "v2v/errors.hpp"
#include "v2v/queueing.hpp"

namespace v2v {

namespace {

ZoneAssignment baseline_assignment(std::int64_t frame, int num_pairs, int num_rbs) {
  ZoneAssignment a;
  a.frame = frame;
  a.zone_pairs.resize(1);
  a.zone_rbs.resize(1);
  for (int k = 0; k < num_pairs; ++k) a.zone_pairs[0].push_back(k);
  for (int n = 0; n < num_rbs; ++n) a.zone_rbs[0].push_back(n);
  a.pair_zone.assign(num_pairs, 0);
  return a;
}

ZoneAssignment proposed_assignment(std::int64_t frame, const ScenarioConfig& cfg,
                                   const std::vector<PairKinematics>& pairs, Rng& zone_rng,
                                   int* seed_pick) {
  std::vector<Vec2> coords;
  coords.reserve(pairs.size());
  for (const auto& p : pairs) coords.push_back(p.tx_position);

  ZoneAssignment a;
  a.frame = frame;
  a.zone_pairs = form_zones(coords, cfg.num_zones, zone_rng, seed_pick, cfg.area_side_m);
  const std::vector<double> lam(pairs.size(), cfg.mean_arrival_bps);
  const std::vector<double> bound(pairs.size(), cfg.queue_bound_bits);
  const std::vector<double> eps(pairs.size(), cfg.reliability_eps);
  const auto shares = rb_count_shares(a.zone_pairs, lam, bound, eps, cfg.num_rbs);
  a.zone_rbs = assign_rbs(shares, cfg.num_rbs);
  a.pair_zone.assign(pairs.size(), -1);
  for (int z = 0; z < a.num_zones(); ++z)
    for (int k : a.zone_pairs[z]) a.pair_zone[k] = z;
  return a;
}

void dump_zones(std::ostream& os, std::int64_t frame, const ZoneAssignment& a) {
  for (int z = 0; z < a.num_zones(); ++z) {
    os << frame << ',' << z << ',';
    for (std::size_t i = 0; i < a.zone_pairs[z].size(); ++i)
      os << (i ? ";" : "") << a.zone_pairs[z][i];
    os << ',';
    for (std::size_t i = 0; i < a.zone_rbs[z].size(); ++i)
      os << (i ? ";" : "") << a.zone_rbs[z][i];
    os << '\n';
  }
}

}  // namespace

std::vector<double> compute_rates(const std::vector<PowerDecision>& decisions,
                                  const ZoneAssignment& assignment,
                                  const ChannelState& channel, double rb_bandwidth_hz,
                                  double noise_power_w) {
  const int k_count = channel.num_pairs;
  const int n_count = channel.num_rbs;

  // P[k][n], zero where pair k does not hold RB n.
  std::vector<double> power(static_cast<std::size_t>(k_count) * n_count, 0.0);
  for (const auto& d : decisions) {
    for (std::size_t i = 0; i < d.rb_indices.size(); ++i) {
      const int n = d.rb_indices[i];
      if (n < 0 || n >= n_count) throw SimError("power decision references an unknown RB");
      if (assignment.pair_zone.size() > static_cast<std::size_t>(d.pair)) {
        const auto& zone_set = assignment.zone_rbs[assignment.pair_zone[d.pair]];
        if (std::find(zone_set.begin(), zone_set.end(), n) == zone_set.end())
          throw SimError("power decision violates the zone RB assignment");
      }
      power[static_cast<std::size_t>(d.pair) * n_count + n] = d.rb_power_w[i];
    }
  }

  std::vector<double> rates(k_count, 0.0);
  for (const auto& d : decisions) {
    const int k = d.pair;
    double rate = 0.0;
    for (const int n : d.rb_indices) {
      const double p = power[static_cast<std::size_t>(k) * n_count + n];
      if (p <= 0.0) continue;
      double interference = 0.0;
      for (int other = 0; other < k_count; ++other) {
        if (other == k) continue;
        const double po = power[static_cast<std::size_t>(other) * n_count + n];
        if (po > 0.0) interference += po * channel.gain(other, k, n);
      }
      const double sinr = p * channel.gain(k, k, n) / (noise_power_w + interference);
      rate += rb_bandwidth_hz * std::log2(1.0 + sinr);
    }
    rates[k] = rate;
  }
  return rates;
}

RunMetrics run(const ScenarioConfig& cfg, const RunOptions& opts) {
  throw_if_invalid(cfg);
  const RoadNetwork net = RoadNetwork::build(cfg);
  const PathLossParams pl = PathLossParams::from_config(cfg);
  const PowerProblem prob{cfg.lyapunov_v, cfg.rb_bandwidth_hz, cfg.slot_duration_s,
                          cfg.noise_power_w, cfg.tx_power_max_w};

  Rng mobility_rng = make_substream(cfg.rng_seed, "mobility");
  Rng fading_rng = make_substream(cfg.rng_seed, "fading");
  Rng arrivals_rng = make_substream(cfg.rng_seed, "arrivals");
  Rng zone_rng = make_substream(cfg.rng_seed, "zone-seed-pick");

  std::vector<PairKinematics> pairs = init_pairs(net, cfg, mobility_rng);
  const int k_count = cfg.num_pairs;
  const int n_count = cfg.num_rbs;

  std::vector<double> queue(k_count, 0.0);
  std::vector<double> vqueue(k_count, 0.0);
  std::vector<double> arrivals(k_count, 0.0);
  std::vector<PowerDecision> decisions(k_count);
  std::vector<double> own_gains;

  RunMetrics m;
  m.per_pair.resize(k_count);
  for (int k = 0; k < k_count; ++k) m.per_pair[k].pair = k;
  std::vector<double> power_sum(k_count, 0.0), queue_sum(k_count, 0.0);
  std::vector<std::uint64_t> over_bound(k_count, 0);
  double queue_sq_sum = 0.0;
  double network_power_sum = 0.0;

  ZoneAssignment assignment;
  const bool proposed = cfg.scheme == Scheme::proposed;

  for (std::int64_t t = 0; t < cfg.num_slots; ++t) {
    if (t % cfg.frame_length_slots == 0) {
      const std::int64_t frame = t / cfg.frame_length_slots;
      if (proposed) {
        int seed_pick = -1;
        assignment = proposed_assignment(frame, cfg, pairs, zone_rng, &seed_pick);
        m.zone_seed_pairs.push_back(seed_pick);
      } else {
        assignment = baseline_assignment(frame, k_count, n_count);
      }
      if (opts.zones_csv) dump_zones(*opts.zones_csv, frame, assignment);
    }

    step_positions(pairs, net, cfg.slot_duration_s, mobility_rng);
    if (opts.trajectories_csv) {
      char buf[160];
      for (const auto& p : pairs) {
        std::snprintf(buf, sizeof(buf), "%lld,%d,%.6f,%.6f,%.6f,%.6f\n",
                      static_cast<long long>(t), p.id, p.tx_position.x, p.tx_position.y,
                      p.rx_position.x, p.rx_position.y);
        *opts.trajectories_csv << buf;
      }
    }

    const ChannelState channel = gain_matrix(pairs, net, n_count, t, cfg.fading_enabled,
                                             fading_rng, pl);
    if (opts.gains_csv) {
      char buf[96];
      for (int tx = 0; tx < k_count; ++tx)
        for (int rx = 0; rx < k_count; ++rx)
          for (int n = 0; n < n_count; ++n) {
            std::snprintf(buf, sizeof(buf), "%lld,%d,%d,%d,%.9e\n",
                          static_cast<long long>(t), tx, rx, n, channel.gain(tx, rx, n));
            *opts.gains_csv << buf;
          }
    }

    for (int k = 0; k < k_count; ++k)
      arrivals[k] = draw_arrival(cfg.mean_arrival_bps, cfg.slot_duration_s, arrivals_rng);

    for (int k = 0; k < k_count; ++k) {
      const auto& rb_set = assignment.zone_rbs[assignment.pair_zone[k]];
      own_gains.resize(rb_set.size());
      for (std::size_t i = 0; i < rb_set.size(); ++i)
        own_gains[i] = channel.gain(k, k, rb_set[i]);
      const double w = drift_penalty_weight(vqueue[k], queue[k], arrivals[k]);
      decisions[k] = solve_power(k, w, own_gains, rb_set, prob);
    }

    const std::vector<double> rates =
        compute_rates(decisions, assignment, channel, cfg.rb_bandwidth_hz,
                      cfg.noise_power_w);

    // Inter-zone orthogonality audit: an RB must never carry transmissions
    // from two different zones in the same slot.
    if (proposed) {
      std::vector<int> rb_zone(n_count, -1);
      for (const auto& d : decisions)
        for (std::size_t i = 0; i < d.rb_indices.size(); ++i) {
          if (d.rb_power_w[i] <= 0.0) continue;
          const int z = assignment.pair_zone[d.pair];
          int& owner = rb_zone[d.rb_indices[i]];
          if (owner == -1)
            owner = z;
          else if (owner != z)
            ++m.orthogonality_violations;
        }
    }

    const bool record = t >= cfg.burn_in_slots;
    double network_power = 0.0;
    for (int k = 0; k < k_count; ++k) {
      queue[k] = update_queue(queue[k], arrivals[k], rates[k], cfg.slot_duration_s);
      vqueue[k] = update_virtual_queue(vqueue[k], queue[k], cfg.queue_bound_bits,
                                       cfg.reliability_eps);
      const double latency = instantaneous_latency(queue[k], cfg.mean_arrival_bps);
      const double p_total = decisions[k].total_power_w();
      network_power += p_total;

      if (record) {
        power_sum[k] += p_total;
        queue_sum[k] += queue[k];
        queue_sq_sum += queue[k] * queue[k];
        if (queue[k] >= cfg.queue_bound_bits) ++over_bound[k];
        m.per_pair[k].mean_latency_s += latency;
        if (opts.keep_latency_samples) m.latency_samples.push_back(latency);
        if (opts.record_trace)
          m.trace.push_back({t, k, arrivals[k], rates[k], p_total, queue[k], vqueue[k],
                             latency});
      }
    }
    if (record) {
      network_power_sum += network_power;
      ++m.recorded_slots;
    }
  }

  const double slots = static_cast<double>(m.recorded_slots);
  const double samples = slots * k_count;
  m.num_queue_samples = static_cast<std::uint64_t>(samples);
  double pooled_queue_sum = 0.0;
  std::uint64_t pooled_over = 0;
  for (int k = 0; k < k_count; ++k) {
    auto& pm = m.per_pair[k];
    pm.avg_power_w = power_sum[k] / slots;
    pm.mean_queue_bits = queue_sum[k] / slots;
    pm.mean_latency_s /= slots;
    pm.pr_queue_ge_bound = static_cast<double>(over_bound[k]) / slots;
    pm.constraint_margin_bits =
        cfg.queue_bound_bits * cfg.reliability_eps - pm.mean_queue_bits;
    pm.final_virtual_queue_bits = vqueue[k];
    pooled_queue_sum += queue_sum[k];
    pooled_over += over_bound[k];
  }
  m.avg_network_power_w = network_power_sum / slots;
  m.mean_queue_bits = pooled_queue_sum / samples;
  m.avg_latency_s = m.mean_queue_bits / cfg.mean_arrival_bps;
  m.pr_queue_ge_bound = static_cast<double>(pooled_over) / samples;
  const double var = std::max(queue_sq_sum / samples - m.mean_queue_bits * m.mean_queue_bits,
                              0.0);
  m.queue_std_bits = std::sqrt(var);
  return m;
}

std::vector<std::pair<double, double>> ccdf(const std::vector<double>& samples,
                                            const std::vector<double>& levels) {
  if (samples.empty()) throw SimError("ccdf requires at least one sample");
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> out;
  out.reserve(levels.size());
  for (double level : levels) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), level);
    const double count = static_cast<double>(sorted.end() - it);
    out.emplace_back(level, count / static_cast<double>(sorted.size()));
  }
  return out;
}

std::vector<SweepPoint> sweep_v(const ScenarioConfig& cfg,
                                const std::vector<double>& v_values) {
  if (v_values.empty()) throw SimError("sweep_v requires at least one V value");
  std::vector<SweepPoint> points;
  points.reserve(v_values.size());
  for (double v : v_values) {
    ScenarioConfig c = cfg;
    c.lyapunov_v = v;
    RunOptions opts;
    opts.keep_latency_samples = false;
    points.push_back({v, run(c, opts)});
  }
  return points;
}

}  // namespace v2v
