#include "v2v/io.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace v2v {

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_run_metrics_csv(std::ostream& os, const RunMetrics& m) {
  os << "pair,avg_power_w,mean_queue_bits,mean_latency_s,pr_queue_ge_bound,"
        "constraint_margin_bits,final_virtual_queue_bits\n";
  for (const auto& pm : m.per_pair) {
    os << pm.pair << ',' << fmt_g17(pm.avg_power_w) << ',' << fmt_g17(pm.mean_queue_bits)
       << ',' << fmt_g17(pm.mean_latency_s) << ',' << fmt_g17(pm.pr_queue_ge_bound)
       << ',' << fmt_g17(pm.constraint_margin_bits) << ','
       << fmt_g17(pm.final_virtual_queue_bits) << '\n';
  }
  os << "all," << fmt_g17(m.avg_network_power_w) << ',' << fmt_g17(m.mean_queue_bits)
     << ',' << fmt_g17(m.avg_latency_s) << ',' << fmt_g17(m.pr_queue_ge_bound) << ",,"
     << '\n';
}

void write_run_metrics_json(std::ostream& os, const RunMetrics& m) {
  nlohmann::json j;
  j["avg_network_power_w"] = m.avg_network_power_w;
  j["mean_queue_bits"] = m.mean_queue_bits;
  j["avg_latency_s"] = m.avg_latency_s;
  j["pr_queue_ge_bound"] = m.pr_queue_ge_bound;
  j["queue_std_bits"] = m.queue_std_bits;
  j["num_queue_samples"] = m.num_queue_samples;
  j["recorded_slots"] = m.recorded_slots;
  j["orthogonality_violations"] = m.orthogonality_violations;
  auto& pairs = j["per_pair"] = nlohmann::json::array();
  for (const auto& pm : m.per_pair) {
    pairs.push_back({{"pair", pm.pair},
                     {"avg_power_w", pm.avg_power_w},
                     {"mean_queue_bits", pm.mean_queue_bits},
                     {"mean_latency_s", pm.mean_latency_s},
                     {"pr_queue_ge_bound", pm.pr_queue_ge_bound},
                     {"constraint_margin_bits", pm.constraint_margin_bits},
                     {"final_virtual_queue_bits", pm.final_virtual_queue_bits}});
  }
  os << j.dump(2) << '\n';
}

void write_slots_csv(std::ostream& os, const std::vector<SlotRecord>& trace) {
  os << "slot,pair,arrival_bits,rate_bps,power_w,queue_bits,virtual_queue_bits,"
        "latency_s\n";
  for (const auto& r : trace) {
    os << r.slot << ',' << r.pair << ',' << fmt_g17(r.arrival_bits) << ','
       << fmt_g17(r.rate_bps) << ',' << fmt_g17(r.power_w) << ','
       << fmt_g17(r.queue_bits) << ',' << fmt_g17(r.virtual_queue_bits) << ','
       << fmt_g17(r.latency_s) << '\n';
  }
}

void write_ccdf_csv(std::ostream& os,
                    const std::vector<std::pair<double, double>>& proposed,
                    const std::vector<std::pair<double, double>>& baseline) {
  os << "latency_level_s,ccdf_proposed,ccdf_baseline\n";
  for (std::size_t i = 0; i < proposed.size(); ++i) {
    os << fmt_g17(proposed[i].first) << ',' << fmt_g17(proposed[i].second) << ','
       << fmt_g17(baseline[i].second) << '\n';
  }
}

void write_metadata_json(std::ostream& os, const std::string& command,
                         const ScenarioConfig& cfg,
                         const std::vector<int>& zone_seed_pairs) {
  nlohmann::json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["rng_seed"] = cfg.rng_seed;
  j["config"] = nlohmann::json::parse(serialize_scenario(cfg));
  if (!zone_seed_pairs.empty()) j["zone_seed_pairs"] = zone_seed_pairs;
  os << j.dump(2) << '\n';
}

}  // namespace v2v
