#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "v2v/engine.hpp"
#include "v2v/scenario.hpp"

namespace v2v {

inline constexpr const char* kVersion = "0.1.0";

// Full precision, deterministic double formatting for metric files.
std::string fmt_g17(double v);

void write_run_metrics_csv(std::ostream& os, const RunMetrics& m);

void write_run_metrics_json(std::ostream& os, const RunMetrics& m);

void write_slots_csv(std::ostream& os, const std::vector<SlotRecord>& trace);

void write_ccdf_csv(std::ostream& os,
                    const std::vector<std::pair<double, double>>& proposed,
                    const std::vector<std::pair<double, double>>& baseline);

// Resolved config + seed + version (+ optional per-frame zone seed picks).
void write_metadata_json(std::ostream& os, const std::string& command,
                         const ScenarioConfig& cfg,
                         const std::vector<int>& zone_seed_pairs = {});

}  // namespace v2v
