#pragma once

#include <span>
#include <vector>

namespace v2v {

// Physical constants of the per-slot power problem.
struct PowerProblem {
  double lyapunov_v = 0.0;      // V
  double rb_bandwidth_hz = 0.0; // omega
  double slot_duration_s = 0.0; // tau
  double noise_power_w = 0.0;   // sigma^2
  double tx_power_max_w = 0.0;  // P^max
};

// Result of one pair's per-slot allocation over its RB set.
struct PowerDecision {
  int pair = 0;
  double weight_bits = 0.0;             // F + Q + current arrival
  double multiplier = 0.0;              // gamma
  std::vector<int> rb_indices;          // RBs this pair may use
  std::vector<double> rb_power_w;       // same order as rb_indices

  double total_power_w() const {
    double s = 0.0;
    for (double p : rb_power_w) s += p;
    return s;
  }
};

// Composite urgency weight F + Q + lambda_t of the drift-plus-penalty
// objective.
double drift_penalty_weight(double virtual_queue_bits, double queue_bits,
                            double arrival_bits);

// Stationary per-RB power for a fixed multiplier:
//   P* = w omega tau / ((V + gamma) ln 2) - sigma^2 / g
// when w omega tau g / (sigma^2 ln 2) > V + gamma, else 0. Returns +inf
// when V + gamma == 0 with positive weight (unbounded water level); the
// caller must then force the budget constraint active.
double unconstrained_rb_power(double weight_bits, double gain, double lyapunov_v,
                              double multiplier, double rb_bandwidth_hz,
                              double slot_duration_s, double noise_power_w);

// Closed-form KKT water-filling with a bisected budget multiplier. gains
// are the pair's own-link gains on its RB set. interference never enters:
// adjacent pairs hold orthogonal RBs by construction.
PowerDecision solve_power(int pair, double weight_bits, std::span<const double> gains,
                          std::span<const int> rb_indices, const PowerProblem& prob);

// Baseline allocator: the same solver over all N RBs.
PowerDecision baseline_power(int pair, double weight_bits, std::span<const double> gains,
                             const PowerProblem& prob);

// Value of the per-slot objective sum_n [V P_n - w omega tau log2(1 + P_n
// g_n / sigma^2)] for a given allocation; used by tests and diagnostics.
double power_objective(std::span<const double> powers, std::span<const double> gains,
                       double weight_bits, const PowerProblem& prob);

}  // namespace v2v
