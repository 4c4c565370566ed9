#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "v2v/channel.hpp"
#include "v2v/rsu.hpp"
#include "v2v/scenario.hpp"
#include "v2v/vue_power.hpp"

namespace v2v {

// One pair's outcome in one slot, after the queue updates.
struct SlotRecord {
  std::int64_t slot = 0;
  int pair = 0;
  double arrival_bits = 0.0;
  double rate_bps = 0.0;
  double power_w = 0.0;
  double queue_bits = 0.0;          // Q(t+1)
  double virtual_queue_bits = 0.0;  // F(t+1)
  double latency_s = 0.0;           // Q(t+1) / lambda-bar
};

struct PairMetrics {
  int pair = 0;
  double avg_power_w = 0.0;
  double mean_queue_bits = 0.0;
  double mean_latency_s = 0.0;
  double pr_queue_ge_bound = 0.0;
  double constraint_margin_bits = 0.0;  // L*eps - mean queue
  double final_virtual_queue_bits = 0.0;
};

struct RunMetrics {
  std::vector<PairMetrics> per_pair;
  double avg_network_power_w = 0.0;  // mean over slots of sum_k power
  double mean_queue_bits = 0.0;      // pooled over (slot, pair)
  double avg_latency_s = 0.0;
  double pr_queue_ge_bound = 0.0;
  double queue_std_bits = 0.0;  // pooled sample std, for standard errors
  std::uint64_t num_queue_samples = 0;
  std::uint64_t orthogonality_violations = 0;
  std::int64_t recorded_slots = 0;
  std::vector<int> zone_seed_pairs;     // per frame, proposed scheme only
  std::vector<double> latency_samples;  // pooled, for CCDF work
  std::vector<SlotRecord> trace;        // populated when record_trace is set
};

struct RunOptions {
  bool record_trace = false;
  bool keep_latency_samples = true;
  std::ostream* trajectories_csv = nullptr;
  std::ostream* zones_csv = nullptr;
  std::ostream* gains_csv = nullptr;
};

// Realized rates including co-RB interference from every other transmitting
// pair (co-zone pairs under the proposed scheme, everyone under baseline).
std::vector<double> compute_rates(const std::vector<PowerDecision>& decisions,
                                  const ZoneAssignment& assignment,
                                  const ChannelState& channel, double rb_bandwidth_hz,
                                  double noise_power_w);

// Runs the two-timescale loop: zone formation + RB allocation once per
// frame, then per slot mobility, channel, arrivals, power decisions,
// interference-coupled rates and the queue updates. Deterministic for a
// given config + seed.
RunMetrics run(const ScenarioConfig& cfg, const RunOptions& opts = {});

// Empirical Pr(latency >= level) on the given grid (Pr(X >= 0) = 1).
std::vector<std::pair<double, double>> ccdf(const std::vector<double>& samples,
                                            const std::vector<double>& levels);

struct SweepPoint {
  double lyapunov_v = 0.0;
  RunMetrics metrics;
};

// Independent runs over a V grid; all substreams derive from the same
// master seed, so mobility/arrival/fading realizations match across V.
std::vector<SweepPoint> sweep_v(const ScenarioConfig& cfg,
                                const std::vector<double>& v_values);

}  // namespace v2v
