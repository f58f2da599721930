// Ground-truth channel occupancy: background queue dynamics and the
// high-priority user's burst process.
#pragma once

#include <stdexcept>

#include "rng.hpp"

namespace advspec {

struct BackgroundTraffic {
  double arrival_rate = 0.8;      // Bernoulli packet arrival per slot
  double activation_prob = 0.5;   // chance to start draining a nonempty queue
  long queue_len = 0;
  bool transmitting = false;
  long total_arrivals = 0;        // running count, for conservation checks
};

inline void validate_background(const BackgroundTraffic& b) {
  if (!(b.arrival_rate >= 0.0 && b.arrival_rate <= 1.0))
    throw std::invalid_argument("background: arrival_rate must lie in [0,1]");
  if (!(b.activation_prob > 0.0 && b.activation_prob <= 1.0))
    throw std::invalid_argument("background: activation_prob must lie in (0,1]");
  if (b.queue_len < 0) throw std::invalid_argument("background: queue_len negative");
}

// One slot: enqueue a Bernoulli arrival, then either drain one packet (busy
// this slot) or, if idle with work pending, activate for the next slot.
inline bool step_background(BackgroundTraffic& s, Rng& rng) {
  if (rng.bernoulli(s.arrival_rate)) {
    ++s.queue_len;
    ++s.total_arrivals;
  }
  bool busy = s.transmitting;
  if (s.transmitting) {
    --s.queue_len;
    if (s.queue_len == 0) s.transmitting = false;
  } else if (s.queue_len >= 1 && rng.bernoulli(s.activation_prob)) {
    s.transmitting = true;
  }
  return busy;
}

struct PriorityTraffic {
  double start_prob = 0.2;
  int burst_len = 5;
  int backoff_len = 2;   // T's backoff after detecting a burst
  int remaining = 0;
};

inline void validate_priority(const PriorityTraffic& p) {
  if (!(p.start_prob >= 0.0 && p.start_prob <= 1.0))
    throw std::invalid_argument("priority: start_prob must lie in [0,1]");
  if (p.burst_len < 1) throw std::invalid_argument("priority: burst_len must be positive");
  if (p.backoff_len < 1) throw std::invalid_argument("priority: backoff_len must be positive");
  if (p.remaining < 0 || p.remaining > p.burst_len)
    throw std::invalid_argument("priority: remaining outside [0, burst_len]");
}

// Renewal process: at each decision point a burst of burst_len slots starts
// with start_prob, otherwise the slot is idle. Bursts run to completion.
inline bool step_priority(PriorityTraffic& s, Rng& rng) {
  if (s.remaining == 0) {
    if (!rng.bernoulli(s.start_prob)) return false;
    s.remaining = s.burst_len;
  }
  --s.remaining;
  return true;
}

}  // namespace advspec
