#include "v2v/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "v2v/errors.hpp"
#include "v2v/units.hpp"

namespace v2v {

using nlohmann::json;

std::string to_string(Scheme s) {
  return s == Scheme::proposed ? "proposed" : "baseline";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "proposed") return Scheme::proposed;
  if (s == "baseline") return Scheme::baseline;
  throw ConfigError("scheme must be 'proposed' or 'baseline', got '" + s + "'");
}

namespace {

template <typename T>
void read_key(const json& j, const char* key, T& out) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

// dBm alternatives take effect only when present; the Watt key wins if both appear.
void read_power(const json& j, const char* watt_key, const char* dbm_key, double& out) {
  if (auto it = j.find(dbm_key); it != j.end()) out = dbm_to_watt(it->get<double>());
  read_key(j, watt_key, out);
}

ScenarioConfig from_json(const json& j) {
  ScenarioConfig cfg;
  read_key(j, "area_side_m", cfg.area_side_m);
  read_key(j, "building_breadth_m", cfg.building_breadth_m);
  read_key(j, "lane_width_m", cfg.lane_width_m);
  read_key(j, "num_rbs", cfg.num_rbs);
  read_key(j, "rb_bandwidth_hz", cfg.rb_bandwidth_hz);
  read_power(j, "noise_power_w", "noise_power_dbm", cfg.noise_power_w);
  read_power(j, "tx_power_max_w", "tx_power_max_dbm", cfg.tx_power_max_w);
  read_key(j, "pl0_db", cfg.pl0_db);
  read_key(j, "pl_ref_distance_m", cfg.pl_ref_distance_m);
  read_key(j, "pl_exponent_los", cfg.pl_exponent_los);
  read_key(j, "pl_exponent_nlos", cfg.pl_exponent_nlos);
  read_key(j, "pl_corner_loss_db", cfg.pl_corner_loss_db);
  read_key(j, "fading_enabled", cfg.fading_enabled);
  read_key(j, "mean_arrival_bps", cfg.mean_arrival_bps);
  read_key(j, "queue_bound_bits", cfg.queue_bound_bits);
  read_key(j, "reliability_eps", cfg.reliability_eps);
  read_key(j, "slot_duration_s", cfg.slot_duration_s);
  read_key(j, "frame_length_slots", cfg.frame_length_slots);
  read_key(j, "num_slots", cfg.num_slots);
  read_key(j, "burn_in_slots", cfg.burn_in_slots);
  read_key(j, "num_pairs", cfg.num_pairs);
  read_key(j, "num_zones", cfg.num_zones);
  read_key(j, "lyapunov_v", cfg.lyapunov_v);
  if (auto it = j.find("vehicle_speed_kmh"); it != j.end())
    cfg.vehicle_speed_mps = kmh_to_mps(it->get<double>());
  read_key(j, "vehicle_speed_mps", cfg.vehicle_speed_mps);
  read_key(j, "pair_gap_min_m", cfg.pair_gap_min_m);
  read_key(j, "pair_gap_max_m", cfg.pair_gap_max_m);
  read_key(j, "rng_seed", cfg.rng_seed);
  if (auto it = j.find("scheme"); it != j.end())
    cfg.scheme = scheme_from_string(it->get<std::string>());

  static const char* known[] = {
      "area_side_m", "building_breadth_m", "lane_width_m", "num_rbs",
      "rb_bandwidth_hz", "noise_power_w", "noise_power_dbm", "tx_power_max_w",
      "tx_power_max_dbm", "pl0_db", "pl_ref_distance_m", "pl_exponent_los",
      "pl_exponent_nlos", "pl_corner_loss_db", "fading_enabled",
      "mean_arrival_bps", "queue_bound_bits", "reliability_eps",
      "slot_duration_s", "frame_length_slots", "num_slots", "burn_in_slots",
      "num_pairs", "num_zones", "lyapunov_v", "vehicle_speed_kmh",
      "vehicle_speed_mps", "pair_gap_min_m", "pair_gap_max_m", "rng_seed",
      "scheme"};
  for (auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown config key '" + key + "'");
  }
  return cfg;
}

}  // namespace

ScenarioConfig parse_scenario_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse failure: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  return from_json(j);
}

ScenarioConfig parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str());
}

std::vector<std::string> validate(const ScenarioConfig& c) {
  std::vector<std::string> report;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) report.push_back(msg);
  };
  require(c.num_pairs >= 1, "num_pairs must satisfy K >= 1");
  require(c.num_rbs >= 1, "num_rbs must satisfy N >= 1");
  require(c.num_zones >= 1 && c.num_zones <= c.num_pairs, "num_zones out of range (1 <= Z <= K)");
  require(c.rb_bandwidth_hz > 0, "rb_bandwidth must be positive");
  require(c.slot_duration_s > 0, "slot_duration must be positive");
  require(c.noise_power_w > 0, "noise_power must be positive");
  require(c.tx_power_max_w > 0, "tx_power_max must be positive");
  require(c.mean_arrival_bps > 0, "mean_arrival must be positive");
  require(c.queue_bound_bits > 0, "queue_bound must be positive");
  require(c.reliability_eps > 0 && c.reliability_eps < 1, "reliability_eps out of (0,1)");
  require(c.lyapunov_v >= 0, "lyapunov_v must satisfy V >= 0");
  require(c.frame_length_slots >= 1, "frame_length must satisfy T0 >= 1");
  require(c.num_slots >= 1, "num_slots must be positive");
  require(c.burn_in_slots >= 0 && c.burn_in_slots < c.num_slots,
          "burn_in_slots must lie in [0, num_slots)");
  require(c.pair_gap_min_m <= c.pair_gap_max_m, "pair_gap_min must not exceed pair_gap_max");
  require(c.pair_gap_min_m > 0, "pair_gap_min must be positive");
  require(c.area_side_m > 0, "area_side must be positive");
  require(c.lane_width_m > 0, "lane_width must be positive");
  require(c.vehicle_speed_mps >= 0, "vehicle_speed must be nonnegative");
  require(c.pl_ref_distance_m > 0, "pl_ref_distance must be positive");
  return report;
}

void throw_if_invalid(const ScenarioConfig& cfg) {
  auto report = validate(cfg);
  if (!report.empty()) {
    std::string msg = "invalid config:";
    for (const auto& r : report) msg += "\n  - " + r;
    throw ConfigError(msg);
  }
}

ScenarioConfig load_scenario(const std::string& path) {
  ScenarioConfig cfg = parse_scenario_file(path);
  throw_if_invalid(cfg);
  return cfg;
}

namespace {

// Shorthand aliases for the common knobs.
std::string resolve_key_alias(const std::string& key) {
  if (key == "K") return "num_pairs";
  if (key == "N") return "num_rbs";
  if (key == "Z") return "num_zones";
  if (key == "V") return "lyapunov_v";
  if (key == "T0") return "frame_length_slots";
  if (key == "seed") return "rng_seed";
  return key;
}

}  // namespace

void apply_override(ScenarioConfig& cfg, const std::string& key_value) {
  auto eq = key_value.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override must look like key=value, got '" + key_value + "'");
  const std::string key = resolve_key_alias(key_value.substr(0, eq));
  const std::string value = key_value.substr(eq + 1);
  // Route through the JSON reader so overrides and file keys behave identically.
  json j;
  if (key == "scheme") {
    j[key] = value;
  } else if (key == "fading_enabled") {
    if (value == "true" || value == "1")
      j[key] = true;
    else if (value == "false" || value == "0")
      j[key] = false;
    else
      throw ConfigError("fading_enabled override must be true/false");
  } else if (key == "rng_seed") {
    try {
      std::size_t used = 0;
      j[key] = std::stoull(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ConfigError("override value for 'rng_seed' is not a 64-bit integer");
    }
  } else {
    try {
      std::size_t used = 0;
      double d = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      j[key] = d;
      if (key == "num_rbs" || key == "num_pairs" || key == "num_zones" ||
          key == "frame_length_slots" || key == "num_slots" || key == "burn_in_slots")
        j[key] = static_cast<std::int64_t>(d);
    } catch (const std::exception&) {
      throw ConfigError("override value for '" + key + "' is not a number");
    }
  }
  json full = json::parse(serialize_scenario(cfg));
  // dBm overrides must replace the stored Watt value, not fight with it.
  if (key == "noise_power_dbm") full.erase("noise_power_w");
  if (key == "tx_power_max_dbm") full.erase("tx_power_max_w");
  if (key == "vehicle_speed_kmh") full.erase("vehicle_speed_mps");
  full[key] = j[key];
  cfg = from_json(full);
}

std::string serialize_scenario(const ScenarioConfig& c) {
  json j;
  j["area_side_m"] = c.area_side_m;
  j["building_breadth_m"] = c.building_breadth_m;
  j["lane_width_m"] = c.lane_width_m;
  j["num_rbs"] = c.num_rbs;
  j["rb_bandwidth_hz"] = c.rb_bandwidth_hz;
  j["noise_power_w"] = c.noise_power_w;
  j["tx_power_max_w"] = c.tx_power_max_w;
  j["pl0_db"] = c.pl0_db;
  j["pl_ref_distance_m"] = c.pl_ref_distance_m;
  j["pl_exponent_los"] = c.pl_exponent_los;
  j["pl_exponent_nlos"] = c.pl_exponent_nlos;
  j["pl_corner_loss_db"] = c.pl_corner_loss_db;
  j["fading_enabled"] = c.fading_enabled;
  j["mean_arrival_bps"] = c.mean_arrival_bps;
  j["queue_bound_bits"] = c.queue_bound_bits;
  j["reliability_eps"] = c.reliability_eps;
  j["slot_duration_s"] = c.slot_duration_s;
  j["frame_length_slots"] = c.frame_length_slots;
  j["num_slots"] = c.num_slots;
  j["burn_in_slots"] = c.burn_in_slots;
  j["num_pairs"] = c.num_pairs;
  j["num_zones"] = c.num_zones;
  j["lyapunov_v"] = c.lyapunov_v;
  j["vehicle_speed_mps"] = c.vehicle_speed_mps;
  j["pair_gap_min_m"] = c.pair_gap_min_m;
  j["pair_gap_max_m"] = c.pair_gap_max_m;
  j["rng_seed"] = c.rng_seed;
  j["scheme"] = to_string(c.scheme);
  return j.dump(2);
}

}  // namespace v2v
