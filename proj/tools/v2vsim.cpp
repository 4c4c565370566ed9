// Command-line front end: single runs, V sweeps, proposed-vs-baseline
// comparisons and CCDF extraction, all emitting plot-ready CSV plus a JSON
// metadata record per invocation.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "v2v/engine.hpp"
#include "v2v/errors.hpp"
#include "v2v/io.hpp"
#include "v2v/scenario.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "scenario config file (JSON)")
      ->required();
  cmd->add_option("--set", args.overrides,
                  "key=value override applied after load, before validation");
  const char* env_dir = std::getenv("V2VSIM_OUTDIR");
  args.out_dir = env_dir ? env_dir : ".";
  cmd->add_option("--out", args.out_dir, "output directory (default $V2VSIM_OUTDIR or .)");
}

v2v::ScenarioConfig load_with_overrides(const CommonArgs& args) {
  v2v::ScenarioConfig cfg = v2v::parse_scenario_file(args.config_path);
  for (const auto& kv : args.overrides) v2v::apply_override(cfg, kv);
  v2v::throw_if_invalid(cfg);
  return cfg;
}

std::ofstream open_out(const CommonArgs& args, const std::string& name) {
  fs::create_directories(args.out_dir);
  const fs::path path = fs::path(args.out_dir) / name;
  std::ofstream os(path);
  if (!os) throw v2v::SimError("cannot open output file " + path.string());
  return os;
}

std::vector<double> log_level_grid(double lo, double hi, int per_decade) {
  std::vector<double> levels{0.0};
  const double step = 1.0 / per_decade;
  for (double e = std::log10(lo); e <= std::log10(hi) + 1e-12; e += step)
    levels.push_back(std::pow(10.0, e));
  return levels;
}

// Empirical latency level with Pr(latency >= level) <= target.
double latency_at_ccdf(std::vector<double> samples, double target) {
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  auto idx = static_cast<std::size_t>(std::ceil(n * (1.0 - target)));
  if (idx >= n) idx = n - 1;
  return samples[idx];
}

int cmd_run(const CommonArgs& args, bool dump_slots, bool dump_trajectories,
            bool dump_zones, bool dump_gains) {
  const v2v::ScenarioConfig cfg = load_with_overrides(args);

  v2v::RunOptions opts;
  opts.record_trace = dump_slots;
  std::ofstream traj, zones, gains;
  if (dump_trajectories) {
    traj = open_out(args, "trajectories.csv");
    traj << "slot,pair_id,tx_x_m,tx_y_m,rx_x_m,rx_y_m\n";
    opts.trajectories_csv = &traj;
  }
  if (dump_zones) {
    zones = open_out(args, "zones.csv");
    zones << "frame,zone,pair_ids,rb_ids\n";
    opts.zones_csv = &zones;
  }
  if (dump_gains) {
    gains = open_out(args, "gains.csv");
    gains << "slot,tx_pair,rx_pair,rb,gain\n";
    opts.gains_csv = &gains;
  }

  const v2v::RunMetrics m = v2v::run(cfg, opts);

  auto metrics = open_out(args, "run_metrics.csv");
  v2v::write_run_metrics_csv(metrics, m);
  auto metrics_json = open_out(args, "run_metrics.json");
  v2v::write_run_metrics_json(metrics_json, m);
  auto meta = open_out(args, "run_metadata.json");
  v2v::write_metadata_json(meta, "run", cfg, m.zone_seed_pairs);
  if (dump_slots) {
    auto slots = open_out(args, "slots.csv");
    v2v::write_slots_csv(slots, m.trace);
  }

  std::cout << "scheme=" << v2v::to_string(cfg.scheme)
            << " avg_power_w=" << v2v::fmt_g17(m.avg_network_power_w)
            << " avg_latency_s=" << v2v::fmt_g17(m.avg_latency_s)
            << " pr_queue_ge_bound=" << v2v::fmt_g17(m.pr_queue_ge_bound) << "\n";
  return 0;
}

int cmd_sweep_v(const CommonArgs& args, std::vector<double> v_values,
                std::vector<std::string> schemes) {
  const v2v::ScenarioConfig base = load_with_overrides(args);
  std::sort(v_values.begin(), v_values.end());
  if (v_values.empty()) throw v2v::ConfigError("sweep-v requires at least one --v value");

  auto csv = open_out(args, "sweep_v.csv");
  csv << "lyapunov_v,scheme,avg_network_power_w,avg_latency_s\n";
  for (double v : v_values) {
    for (const auto& scheme_name : schemes) {
      v2v::ScenarioConfig cfg = base;
      cfg.scheme = v2v::scheme_from_string(scheme_name);
      cfg.lyapunov_v = v;
      v2v::throw_if_invalid(cfg);
      v2v::RunOptions opts;
      opts.keep_latency_samples = false;
      const v2v::RunMetrics m = v2v::run(cfg, opts);
      csv << v2v::fmt_g17(v) << ',' << scheme_name << ','
          << v2v::fmt_g17(m.avg_network_power_w) << ',' << v2v::fmt_g17(m.avg_latency_s)
          << '\n';
      std::cout << "V=" << v2v::fmt_g17(v) << " scheme=" << scheme_name
                << " avg_power_w=" << v2v::fmt_g17(m.avg_network_power_w)
                << " avg_latency_s=" << v2v::fmt_g17(m.avg_latency_s) << "\n";
    }
  }
  auto meta = open_out(args, "sweep_v_metadata.json");
  v2v::write_metadata_json(meta, "sweep-v", base);
  return 0;
}

int cmd_compare(const CommonArgs& args, std::vector<int> k_values,
                const std::string& scheme_a, const std::string& scheme_b) {
  const v2v::ScenarioConfig base = load_with_overrides(args);
  std::sort(k_values.begin(), k_values.end());

  auto csv = open_out(args, "compare.csv");
  csv << "num_pairs,avg_latency_" << scheme_a << "_s,avg_latency_" << scheme_b
      << "_s,latency_reduction_frac\n";
  for (int k : k_values) {
    double latency[2];
    const std::string names[2] = {scheme_a, scheme_b};
    for (int i = 0; i < 2; ++i) {
      v2v::ScenarioConfig cfg = base;
      cfg.num_pairs = k;
      cfg.scheme = v2v::scheme_from_string(names[i]);
      v2v::throw_if_invalid(cfg);
      v2v::RunOptions opts;
      opts.keep_latency_samples = false;
      latency[i] = v2v::run(cfg, opts).avg_latency_s;
    }
    double reduction;
    if (latency[0] == latency[1])
      reduction = 0.0;
    else
      reduction = 1.0 - latency[0] / latency[1];
    csv << k << ',' << v2v::fmt_g17(latency[0]) << ',' << v2v::fmt_g17(latency[1]) << ','
        << v2v::fmt_g17(reduction) << '\n';
    std::cout << "K=" << k << " " << scheme_a << "=" << v2v::fmt_g17(latency[0]) << " "
              << scheme_b << "=" << v2v::fmt_g17(latency[1])
              << " reduction=" << v2v::fmt_g17(reduction) << "\n";
  }
  auto meta = open_out(args, "compare_metadata.json");
  v2v::write_metadata_json(meta, "compare", base);
  return 0;
}

int cmd_ccdf(const CommonArgs& args, double level_min, double level_max, int per_decade,
             std::vector<double> interp_at) {
  const v2v::ScenarioConfig base = load_with_overrides(args);
  const std::vector<double> levels = log_level_grid(level_min, level_max, per_decade);

  std::vector<double> samples[2];
  std::vector<std::pair<double, double>> curves[2];
  const v2v::Scheme schemes[2] = {v2v::Scheme::proposed, v2v::Scheme::baseline};
  for (int i = 0; i < 2; ++i) {
    v2v::ScenarioConfig cfg = base;
    cfg.scheme = schemes[i];
    samples[i] = v2v::run(cfg).latency_samples;
    curves[i] = v2v::ccdf(samples[i], levels);
  }

  auto csv = open_out(args, "ccdf.csv");
  v2v::write_ccdf_csv(csv, curves[0], curves[1]);

  if (!interp_at.empty()) {
    auto interp = open_out(args, "ccdf_interp.csv");
    interp << "scheme,target_ccdf,latency_level_s\n";
    for (double target : interp_at) {
      for (int i = 0; i < 2; ++i) {
        const double level = latency_at_ccdf(samples[i], target);
        interp << v2v::to_string(schemes[i]) << ',' << v2v::fmt_g17(target) << ','
               << v2v::fmt_g17(level) << '\n';
        std::cout << "ccdf=" << v2v::fmt_g17(target)
                  << " scheme=" << v2v::to_string(schemes[i])
                  << " latency_s=" << v2v::fmt_g17(level) << "\n";
      }
    }
  }
  auto meta = open_out(args, "ccdf_metadata.json");
  v2v::write_metadata_json(meta, "ccdf", base);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-timescale V2V resource allocation simulator"};
  app.require_subcommand(1);

  CommonArgs run_args, sweep_args, compare_args, ccdf_args;

  auto* run_cmd = app.add_subcommand("run", "simulate one scenario");
  add_common(run_cmd, run_args);
  bool dump_slots = false, dump_traj = false, dump_zones = false, dump_gains = false;
  run_cmd->add_flag("--dump-slots", dump_slots, "write per-slot trace CSV");
  run_cmd->add_flag("--dump-trajectories", dump_traj, "write vehicle trajectory CSV");
  run_cmd->add_flag("--dump-zones", dump_zones, "write per-frame zone/RB CSV");
  run_cmd->add_flag("--dump-gains", dump_gains, "write per-slot link gain CSV (huge)");

  auto* sweep_cmd = app.add_subcommand("sweep-v", "latency/power tradeoff over a V grid");
  add_common(sweep_cmd, sweep_args);
  std::vector<double> v_values{1e5, 1e6, 1e7, 1e8, 1e9, 1e10};
  std::vector<std::string> sweep_schemes{"proposed", "baseline"};
  sweep_cmd->add_option("--v-values", v_values, "Lyapunov V grid")->delimiter(',');
  sweep_cmd->add_option("--schemes", sweep_schemes, "schemes to sweep")->delimiter(',');

  auto* compare_cmd = app.add_subcommand("compare", "proposed vs baseline at matched K");
  add_common(compare_cmd, compare_args);
  std::vector<int> k_values{10, 15, 20};
  std::string scheme_a = "proposed", scheme_b = "baseline";
  compare_cmd->add_option("--k-values", k_values, "pair counts")->delimiter(',');
  compare_cmd->add_option("--scheme-a", scheme_a, "first scheme");
  compare_cmd->add_option("--scheme-b", scheme_b, "reference scheme");

  auto* ccdf_cmd = app.add_subcommand("ccdf", "latency CCDF for both schemes");
  add_common(ccdf_cmd, ccdf_args);
  double level_min = 1e-6, level_max = 10.0;
  int per_decade = 8;
  std::vector<double> interp_at;
  ccdf_cmd->add_option("--level-min", level_min, "smallest nonzero latency level (s)");
  ccdf_cmd->add_option("--level-max", level_max, "largest latency level (s)");
  ccdf_cmd->add_option("--per-decade", per_decade, "grid points per decade");
  ccdf_cmd->add_option("--interp-at", interp_at,
                       "report the latency level reached at this CCDF value")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run_cmd->parsed())
      return cmd_run(run_args, dump_slots, dump_traj, dump_zones, dump_gains);
    if (sweep_cmd->parsed()) return cmd_sweep_v(sweep_args, v_values, sweep_schemes);
    if (compare_cmd->parsed())
      return cmd_compare(compare_args, k_values, scheme_a, scheme_b);
    if (ccdf_cmd->parsed())
      return cmd_ccdf(ccdf_args, level_min, level_max, per_decade, interp_at);
    return 2;
  } catch (const v2v::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
