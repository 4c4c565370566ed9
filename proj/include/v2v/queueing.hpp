#pragma once

#include "v2v/rng.hpp"

namespace v2v {

// Per-pair queue state: data queue Q, virtual queue F, and the QoS targets
// driving both updates. All quantities in bits.
struct QueuePairState {
  double queue_bits = 0.0;          // Q
  double virtual_queue_bits = 0.0;  // F
  double arrival_bits = 0.0;        // current slot's arrival
  double mean_arrival_bps = 0.0;    // lambda-bar
  double queue_bound_bits = 0.0;    // L
  double reliability_eps = 0.0;     // epsilon
};

// Poisson arrival with mean lambda_bps * tau_s, in whole bits.
double draw_arrival(double mean_arrival_bps, double slot_duration_s, Rng& rng);

// Q(t+1) = max{Q + arrivals - tau * R, 0}.
double update_queue(double queue_bits, double arrival_bits, double rate_bps,
                    double slot_duration_s);

// F(t+1) = max{F + Q(t+1) - L * eps, 0}.
double update_virtual_queue(double virtual_queue_bits, double next_queue_bits,
                            double queue_bound_bits, double reliability_eps);

// Q / lambda-bar; throws SimError when lambda-bar is not positive.
double instantaneous_latency(double queue_bits, double mean_arrival_bps);

}  // namespace v2v
