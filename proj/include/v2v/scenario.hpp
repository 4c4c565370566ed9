#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace v2v {

enum class Scheme { proposed, baseline };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

// All physical, traffic, QoS and algorithm parameters of one experiment.
// Power-like fields hold Watts; dBm config keys are converted at load time.
// Immutable after load; safe to share read-only across threads.
struct ScenarioConfig {
  // geometry
  double area_side_m = 250.0;
  double building_breadth_m = 100.0;
  double lane_width_m = 3.5;  // two directed lanes per road, one each way

  // radio
  int num_rbs = 15;                   // N
  double rb_bandwidth_hz = 180e3;     // omega
  double noise_power_w = 1e-11;       // sigma^2, -80 dBm
  double tx_power_max_w = 0.01;       // P^max per pair, 10 dBm

  // path loss (implementation defaults, configurable)
  double pl0_db = 47.0;          // loss at the reference distance
  double pl_ref_distance_m = 1.0;
  double pl_exponent_los = 2.0;
  double pl_exponent_nlos = 3.5;
  double pl_corner_loss_db = 10.0;
  bool fading_enabled = true;    // unit-mean exponential power fading per (link, RB, slot)

  // traffic / QoS (uniform across pairs)
  double mean_arrival_bps = 200e3;   // lambda-bar
  double queue_bound_bits = 2000.0;  // L
  double reliability_eps = 0.1;      // epsilon

  // time structure
  double slot_duration_s = 1e-3;  // tau
  int frame_length_slots = 100;   // T0
  std::int64_t num_slots = 100000;
  std::int64_t burn_in_slots = 0;

  // population / control
  int num_pairs = 20;  // K
  int num_zones = 5;   // Z
  double lyapunov_v = 0.0;
  Scheme scheme = Scheme::proposed;

  // mobility
  double vehicle_speed_mps = 50.0 / 3.6;
  double pair_gap_min_m = 10.0;
  double pair_gap_max_m = 20.0;

  std::uint64_t rng_seed = 1;
};

// Parses the JSON config file, filling defaults for absent keys and
// converting dBm keys to Watts. Does not check invariants.
ScenarioConfig parse_scenario_file(const std::string& path);
ScenarioConfig parse_scenario_text(const std::string& text);

// Named invariant violations; empty iff the config is valid.
std::vector<std::string> validate(const ScenarioConfig& cfg);

// parse + validate; throws ConfigError naming the violated invariant.
ScenarioConfig load_scenario(const std::string& path);

// "key=value" override with the same keys as the config file.
void apply_override(ScenarioConfig& cfg, const std::string& key_value);

// Serialization (Watts, never dBm); round-trips field-for-field.
std::string serialize_scenario(const ScenarioConfig& cfg);

void throw_if_invalid(const ScenarioConfig& cfg);

}  // namespace v2v
