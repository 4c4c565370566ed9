#include "v2v/queueing.hpp"

#include <algorithm>

#include "v2v/errors.hpp"

namespace v2v {

double draw_arrival(double mean_arrival_bps, double slot_duration_s, Rng& rng) {
  const double mean_bits = mean_arrival_bps * slot_duration_s;
  if (mean_bits <= 0.0) return 0.0;
  std::poisson_distribution<long long> dist(mean_bits);
  return static_cast<double>(dist(rng));
}

double update_queue(double queue_bits, double arrival_bits, double rate_bps,
                    double slot_duration_s) {
  return std::max(queue_bits + arrival_bits - slot_duration_s * rate_bps, 0.0);
}

double update_virtual_queue(double virtual_queue_bits, double next_queue_bits,
                            double queue_bound_bits, double reliability_eps) {
  return std::max(
      virtual_queue_bits + next_queue_bits - queue_bound_bits * reliability_eps, 0.0);
}

double instantaneous_latency(double queue_bits, double mean_arrival_bps) {
  if (mean_arrival_bps <= 0.0)
    throw SimError("instantaneous latency undefined for nonpositive mean arrival rate");
  return queue_bits / mean_arrival_bps;
}

}  // namespace v2v
