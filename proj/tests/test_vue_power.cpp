#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "v2v/rng.hpp"
#include "v2v/vue_power.hpp"
#include "power_oracle.hpp"

using namespace v2v;

namespace {

constexpr double kLn2 = 0.6931471805599453;

PowerProblem default_problem(double v) {
  return {v, 180e3, 1e-3, 1e-11, 0.01};
}

double kkt_marginal(double w, double g, double p, const PowerProblem& prob) {
  return w * prob.rb_bandwidth_hz * prob.slot_duration_s * g /
         ((prob.noise_power_w + p * g) * kLn2);
}

void check_kkt(const PowerDecision& d, std::span<const double> gains,
               const PowerProblem& prob) {
  const double vg = prob.lyapunov_v + d.multiplier;
  for (std::size_t i = 0; i < gains.size(); ++i) {
    if (d.rb_power_w[i] <= 1e-15) continue;
    const double marginal = kkt_marginal(d.weight_bits, gains[i], d.rb_power_w[i], prob);
    CHECK(std::abs(marginal - vg) <= 1e-6 * vg);
  }
  // complementary slackness
  const double slack = prob.tx_power_max_w - d.total_power_w();
  CHECK(d.multiplier * slack <= 1e-9 * prob.tx_power_max_w * (1.0 + d.multiplier));
  CHECK(d.total_power_w() <= prob.tx_power_max_w + 1e-12);
  for (double p : d.rb_power_w) CHECK(p >= 0.0);
}

}  // namespace

TEST_CASE("drift-plus-penalty weight") {
  CHECK(drift_penalty_weight(0, 0, 0) == 0.0);
  CHECK(drift_penalty_weight(600, 300, 200) == 1100.0);
  // monotone nondecreasing in each argument
  auto rng = make_substream(9, "arrivals");
  std::uniform_real_distribution<double> u(0.0, 1e4);
  for (int i = 0; i < 200; ++i) {
    const double f = u(rng), q = u(rng), a = u(rng), bump = u(rng);
    const double base = drift_penalty_weight(f, q, a);
    CHECK(drift_penalty_weight(f + bump, q, a) >= base);
    CHECK(drift_penalty_weight(f, q + bump, a) >= base);
    CHECK(drift_penalty_weight(f, q, a + bump) >= base);
  }
}

TEST_CASE("unconstrained per-RB power") {
  const double w = 1000.0, omega = 180e3, tau = 1e-3, noise = 1e-11;

  // zero weight never activates
  CHECK(unconstrained_rb_power(0.0, 1e-5, 1e6, 0.0, omega, tau, noise) == 0.0);
  // deep penalty regime: V + gamma at/above the activation threshold
  const double g = 1e-5;
  const double activation = w * omega * tau * g / (noise * kLn2);
  CHECK(unconstrained_rb_power(w, g, activation, 0.0, omega, tau, noise) == 0.0);
  CHECK(unconstrained_rb_power(w, g, activation * 1.01, 0.0, omega, tau, noise) == 0.0);

  // g/noise = 1e6 per Watt, V + gamma = 1e6 -> P* = 0.2597 W
  const double p = unconstrained_rb_power(w, g, 1e6, 0.0, omega, tau, noise);
  CHECK(p == doctest::Approx(w * omega * tau / (1e6 * kLn2) - 1e-6).epsilon(1e-12));
  CHECK(p == doctest::Approx(0.2597).epsilon(1e-3));
  // back-substitution reproduces the water level to 1e-9 relative
  const double marginal = w * omega * tau * g / ((noise + p * g) * kLn2);
  CHECK(std::abs(marginal - 1e6) <= 1e-9 * 1e6);

  // V + gamma = 0 with positive weight: unbounded water level
  CHECK(std::isinf(unconstrained_rb_power(w, g, 0.0, 0.0, omega, tau, noise)));
}

TEST_CASE("solve_power clamps to the budget with an active multiplier") {
  const auto prob = default_problem(1e6);
  const double gains[] = {1e-5};
  const int rbs[] = {0};
  const auto d = solve_power(0, 1000.0, gains, rbs, prob);
  CHECK(d.total_power_w() == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(d.multiplier > 0.0);
  check_kkt(d, gains, prob);
}

TEST_CASE("water-filling order follows the gains") {
  const auto prob = default_problem(4e7);
  const double gains[] = {5e-6, 1e-6};
  const int rbs[] = {0, 1};
  const auto d = solve_power(0, 500.0, gains, rbs, prob);
  CHECK(d.multiplier == 0.0);  // interior for this V
  CHECK(d.total_power_w() < prob.tx_power_max_w);
  CHECK(d.rb_power_w[0] >= d.rb_power_w[1]);
  check_kkt(d, gains, prob);
}

TEST_CASE("zero weight yields the all-zero decision") {
  const auto prob = default_problem(0.0);
  const double gains[] = {1e-5, 1e-7};
  const int rbs[] = {0, 1};
  const auto d = solve_power(0, 0.0, gains, rbs, prob);
  CHECK(d.total_power_w() == 0.0);
  CHECK(d.multiplier == 0.0);
}

TEST_CASE("random instances match the grid-search oracle") {
  auto rng = make_substream(12345, "arrivals");
  std::uniform_real_distribution<double> w_pick(0.0, 1e4);
  std::uniform_real_distribution<double> g_exp(-9.0, -3.0);  // six orders
  const double v_grid[] = {0.0, 1.0, 1e3, 1e6};

  for (int it = 0; it < 80; ++it) {
    const auto prob = default_problem(v_grid[it % 4]);
    std::uniform_int_distribution<int> n_pick(1, 4);
    const int n = n_pick(rng);
    std::vector<double> gains(n);
    std::vector<int> rbs(n);
    for (int i = 0; i < n; ++i) {
      gains[i] = std::pow(10.0, g_exp(rng));
      rbs[i] = i;
    }
    const double w = w_pick(rng);
    const auto d = solve_power(0, w, gains, rbs, prob);
    check_kkt(d, gains, prob);

    const double solver_obj = power_objective(d.rb_power_w, gains, w, prob);
    const double grid_obj = power_oracle::grid_search_objective(w, gains, prob);
    const double tol = 1e-6 * std::abs(grid_obj) + 1e-12;
    // never worse than brute force
    CHECK(solver_obj <= grid_obj + tol);
    // never better than the grid can explain by its resolution
    const double gap = power_oracle::grid_gap_bound(d, gains, prob);
    CHECK(grid_obj - solver_obj <= gap + tol);
  }
}

TEST_CASE("total power is non-increasing in V") {
  auto rng = make_substream(55, "arrivals");
  std::uniform_real_distribution<double> g_exp(-9.0, -3.0);
  for (int it = 0; it < 25; ++it) {
    std::vector<double> gains(3);
    std::vector<int> rbs{0, 1, 2};
    for (auto& g : gains) g = std::pow(10.0, g_exp(rng));
    double prev = 1e9;
    for (double v : {0.0, 1e2, 1e4, 1e6, 1e8, 1e10, 1e12}) {
      const auto d = solve_power(0, 750.0, gains, rbs, default_problem(v));
      // slack covers the 1e-9 relative budget tolerance of the bisection
      CHECK(d.total_power_w() <= prev + 2.5e-11);
      prev = d.total_power_w();
    }
  }
}

TEST_CASE("baseline allocator degenerates and symmetrizes") {
  const auto prob = default_problem(0.0);
  // N = 1 equals solve_power on one RB
  const double g1[] = {3e-6};
  const int r1[] = {0};
  const auto a = baseline_power(0, 800.0, g1, prob);
  const auto b = solve_power(0, 800.0, g1, r1, prob);
  REQUIRE(a.rb_power_w.size() == 1);
  CHECK(a.rb_power_w[0] == doctest::Approx(b.rb_power_w[0]).epsilon(1e-12));

  // identical gains split the budget evenly
  std::vector<double> same(15, 2e-6);
  const auto c = baseline_power(0, 800.0, same, prob);
  for (double p : c.rb_power_w)
    CHECK(p == doctest::Approx(prob.tx_power_max_w / 15.0).epsilon(1e-6));
}

TEST_CASE("one pair: all-RB optimization never loses rate to the restricted set") {
  // interference-free rate comparison at a fixed state
  auto rng = make_substream(4242, "fading");
  std::uniform_real_distribution<double> g_exp(-9.0, -5.0);
  const auto prob = default_problem(0.0);
  for (int it = 0; it < 30; ++it) {
    std::vector<double> gains(15);
    for (auto& g : gains) g = std::pow(10.0, g_exp(rng));
    const std::vector<double> subset(gains.begin(), gains.begin() + 3);
    const std::vector<int> subset_rbs{0, 1, 2};
    const auto zoned = solve_power(0, 900.0, subset, subset_rbs, prob);
    const auto all = baseline_power(0, 900.0, gains, prob);

    auto rate = [&](std::span<const double> p, std::span<const double> g) {
      double r = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i)
        r += prob.rb_bandwidth_hz * std::log2(1.0 + p[i] * g[i] / prob.noise_power_w);
      return r;
    };
    CHECK(rate(all.rb_power_w, gains) >= rate(zoned.rb_power_w, subset) - 1e-6);
  }
}
