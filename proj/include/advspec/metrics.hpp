// Reported quantities: error probabilities, throughput, success ratio,
// attack counts and energy.
#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>

#include "protocol.hpp"

namespace advspec {

struct Metrics {
  double e_fa = 0.0;
  double e_md = 0.0;
  double normalized_throughput = 0.0;
  std::optional<double> success_ratio;  // undefined when there were no attempts
  long attack_count = 0;
  double attack_energy = 0.0;
};

// (e_FA, e_MD): idle slots classified busy, busy slots classified idle.
// Classification is the pre-flip verdict; deliberate defense flips are
// actions, not classifier errors.
inline std::pair<double, double> confusion(std::span<const SlotRecord> records) {
  long idle = 0, busy = 0, fa = 0, md = 0;
  for (const SlotRecord& r : records) {
    bool cb = classified_busy(r);
    if (is_busy(r.truth)) {
      ++busy;
      md += !cb;
    } else {
      ++idle;
      fa += cb;
    }
  }
  if (idle == 0 || busy == 0)
    throw std::invalid_argument("confusion: need at least one idle and one busy slot");
  return {double(fa) / double(idle), double(md) / double(busy)};
}

// Successful transmissions over truly idle slots (the ideal schedule).
inline double normalized_throughput(std::span<const SlotRecord> records) {
  long idle = 0, wins = 0;
  for (const SlotRecord& r : records) {
    if (!is_busy(r.truth)) {
      ++idle;
      wins += r.outcome == Outcome::success;
    }
  }
  if (idle == 0) throw std::invalid_argument("normalized_throughput: no idle slots");
  return double(wins) / double(idle);
}

// Successes over attempts. Zero attempts is undefined, not zero.
inline double success_ratio(std::span<const SlotRecord> records) {
  long attempts = 0, wins = 0;
  for (const SlotRecord& r : records) {
    if (r.t_decision == Decision::transmit && r.outcome != Outcome::no_attempt) {
      ++attempts;
      wins += r.outcome == Outcome::success;
    }
  }
  if (attempts == 0) throw std::domain_error("success_ratio: zero attempts, undefined");
  return double(wins) / double(attempts);
}

inline std::optional<double> try_success_ratio(std::span<const SlotRecord> records) {
  try {
    return success_ratio(records);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

inline long attack_count(std::span<const SlotRecord> records) {
  long n = 0;
  for (const SlotRecord& r : records) n += r.attack_action != AttackAction::none;
  return n;
}

// Energy normalizes the transmission phase to length 1; sensing-phase
// actions cost the sensing:transmission ratio of that. Computed from the
// integer action counts in one expression so equal-count comparisons across
// attack kinds are bit-exact.
inline double attack_energy(std::span<const SlotRecord> records, double ratio,
                            double adversary_power) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw std::invalid_argument("attack_energy: ratio must lie in (0,1)");
  long data_phase = 0, sensing_phase = 0;
  for (const SlotRecord& r : records) {
    if (r.attack_action == AttackAction::jam_data) ++data_phase;
    if (r.attack_action == AttackAction::poison_sense ||
        r.attack_action == AttackAction::replay_priority)
      ++sensing_phase;
  }
  return adversary_power * double(data_phase) + (adversary_power * double(sensing_phase)) * ratio;
}

}  // namespace advspec
