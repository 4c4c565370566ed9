#include "v2v/vue_power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "v2v/errors.hpp"

namespace v2v {

namespace {
constexpr double kLn2 = 0.6931471805599453;
constexpr int kMaxBisectIters = 200;
constexpr double kBudgetRelTol = 1e-9;
}  // namespace

double drift_penalty_weight(double virtual_queue_bits, double queue_bits,
                            double arrival_bits) {
  return virtual_queue_bits + queue_bits + arrival_bits;
}

double unconstrained_rb_power(double weight_bits, double gain, double lyapunov_v,
                              double multiplier, double rb_bandwidth_hz,
                              double slot_duration_s, double noise_power_w) {
  const double level_num = weight_bits * rb_bandwidth_hz * slot_duration_s;
  const double vg = lyapunov_v + multiplier;
  const double activation = level_num * gain / (noise_power_w * kLn2);
  if (!(activation > vg)) return 0.0;
  if (vg <= 0.0) return std::numeric_limits<double>::infinity();
  return level_num / (vg * kLn2) - noise_power_w / gain;
}

namespace {

double total_power(double weight_bits, std::span<const double> gains,
                   const PowerProblem& prob, double multiplier) {
  double sum = 0.0;
  for (double g : gains) {
    sum += unconstrained_rb_power(weight_bits, g, prob.lyapunov_v, multiplier,
                                  prob.rb_bandwidth_hz, prob.slot_duration_s,
                                  prob.noise_power_w);
    if (std::isinf(sum)) return sum;
  }
  return sum;
}

void fill_powers(PowerDecision& d, std::span<const double> gains,
                 const PowerProblem& prob, double multiplier) {
  d.multiplier = multiplier;
  d.rb_power_w.resize(gains.size());
  for (std::size_t i = 0; i < gains.size(); ++i) {
    d.rb_power_w[i] = std::max(
        unconstrained_rb_power(d.weight_bits, gains[i], prob.lyapunov_v, multiplier,
                               prob.rb_bandwidth_hz, prob.slot_duration_s,
                               prob.noise_power_w),
        0.0);
  }
}

}  // namespace

PowerDecision solve_power(int pair, double weight_bits, std::span<const double> gains,
                          std::span<const int> rb_indices, const PowerProblem& prob) {
  if (gains.empty() || gains.size() != rb_indices.size())
    throw SimError("solve_power requires a non-empty RB set with matching gains");
  if (prob.rb_bandwidth_hz <= 0 || prob.slot_duration_s <= 0 ||
      prob.noise_power_w <= 0 || prob.tx_power_max_w <= 0 || prob.lyapunov_v < 0)
    throw SimError("solve_power requires positive physical constants and V >= 0");
  for (double g : gains)
    if (!(g > 0) || !std::isfinite(g)) throw SimError("solve_power requires finite positive gains");

  PowerDecision d;
  d.pair = pair;
  d.weight_bits = weight_bits;
  d.rb_indices.assign(rb_indices.begin(), rb_indices.end());

  if (weight_bits <= 0.0) {
    d.rb_power_w.assign(gains.size(), 0.0);
    d.multiplier = 0.0;
    return d;
  }

  const double pmax = prob.tx_power_max_w;
  if (prob.lyapunov_v > 0.0) {
    const double unconstrained_sum = total_power(weight_bits, gains, prob, 0.0);
    if (unconstrained_sum <= pmax) {
      fill_powers(d, gains, prob, 0.0);
      return d;
    }
  }

  // Budget active: bisect gamma between 0 (sum > pmax) and the smallest
  // multiplier deactivating every RB (sum = 0). The sum is continuous and
  // non-increasing in gamma.
  const double level_num = weight_bits * prob.rb_bandwidth_hz * prob.slot_duration_s;
  double gamma_hi = 0.0;
  for (double g : gains)
    gamma_hi = std::max(gamma_hi, level_num * g / (prob.noise_power_w * kLn2));
  double lo = 0.0, hi = gamma_hi;
  double mid = hi / 2.0;
  bool converged = false;
  for (int it = 0; it < kMaxBisectIters; ++it) {
    mid = 0.5 * (lo + hi);
    const double s = total_power(weight_bits, gains, prob, mid);
    if (std::abs(s - pmax) <= kBudgetRelTol * pmax) {
      converged = true;
      break;
    }
    if (s > pmax)
      lo = mid;
    else
      hi = mid;
  }
  if (!converged) {
    // Closed-form polish on the active set at the final midpoint; the
    // bisection interval is already tiny, so the set is settled.
    double inv_gain_sum = 0.0;
    int active = 0;
    for (double g : gains) {
      if (unconstrained_rb_power(weight_bits, g, prob.lyapunov_v, mid,
                                 prob.rb_bandwidth_hz, prob.slot_duration_s,
                                 prob.noise_power_w) > 0.0) {
        inv_gain_sum += prob.noise_power_w / g;
        ++active;
      }
    }
    if (active > 0) {
      const double vg = level_num * active / (kLn2 * (pmax + inv_gain_sum));
      const double gamma = vg - prob.lyapunov_v;
      if (gamma > 0.0 &&
          std::abs(total_power(weight_bits, gains, prob, gamma) - pmax) <=
              kBudgetRelTol * pmax) {
        mid = gamma;
        converged = true;
      }
    }
    if (!converged)
      throw SimError("solve_power bisection failed to meet the budget tolerance");
  }
  fill_powers(d, gains, prob, mid);

  // Keep the hard budget invariant: the bisection tolerance may overshoot
  // by ~1e-9 relative, scale back onto the simplex.
  const double total = d.total_power_w();
  if (total > pmax) {
    const double scale = pmax / total;
    for (double& p : d.rb_power_w) p *= scale;
  }
  return d;
}

PowerDecision baseline_power(int pair, double weight_bits, std::span<const double> gains,
                             const PowerProblem& prob) {
  std::vector<int> all(gains.size());
  std::iota(all.begin(), all.end(), 0);
  return solve_power(pair, weight_bits, gains, all, prob);
}

double power_objective(std::span<const double> powers, std::span<const double> gains,
                       double weight_bits, const PowerProblem& prob) {
  double obj = 0.0;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    obj += prob.lyapunov_v * powers[i] -
           weight_bits * prob.rb_bandwidth_hz * prob.slot_duration_s *
               std::log2(1.0 + powers[i] * gains[i] / prob.noise_power_w);
  }
  return obj;
}

}  // namespace v2v
