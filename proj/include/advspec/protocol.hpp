// Per-slot records and windowed dataset assembly for both agents.
#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nnet.hpp"

namespace advspec {

enum class Truth { idle, busy_background, busy_priority };
enum class Decision { transmit, hold, backoff };
enum class AttackAction { none, jam_data, poison_sense, replay_priority };
enum class Outcome { success, collision_fail, jammed_fail, no_attempt };

struct SlotRecord {
  int slot_index = 0;
  Truth truth = Truth::idle;
  double sensed_t = 0.0;
  double sensed_a = 0.0;
  Decision t_decision = Decision::hold;
  AttackAction attack_action = AttackAction::none;
  Outcome outcome = Outcome::no_attempt;
  bool ack = false;
  bool defense_flip = false;
};

inline bool is_busy(Truth t) { return t != Truth::idle; }

// The classifier's verdict before any defense flip. Backoff slots count as
// busy: backoff is T declaring the channel occupied.
inline bool classified_busy(const SlotRecord& r) {
  if (r.t_decision == Decision::backoff) return true;
  bool held = r.t_decision == Decision::hold;
  return r.defense_flip ? !held : held;
}

enum class DatasetOwner { transmitter, adversary };

// Sliding windows of the owner's own sensed powers. Window t covers slots
// t-n_new+1..t; labels: channel truth for the transmitter, ACK for the
// adversary.
inline Dataset collect_dataset(std::span<const SlotRecord> records, int n_new,
                               DatasetOwner owner) {
  if (n_new < 1) throw std::invalid_argument("collect_dataset: n_new must be positive");
  if (int(records.size()) < n_new)
    throw std::invalid_argument("collect_dataset: need at least " + std::to_string(n_new) +
                                " records, got " + std::to_string(records.size()));
  Dataset d(n_new);
  std::vector<double> window(static_cast<std::size_t>(n_new));
  for (std::size_t t = std::size_t(n_new) - 1; t < records.size(); ++t) {
    for (int k = 0; k < n_new; ++k) {
      const SlotRecord& r = records[t - std::size_t(n_new) + 1 + std::size_t(k)];
      window[std::size_t(k)] = owner == DatasetOwner::transmitter ? r.sensed_t : r.sensed_a;
    }
    int label = owner == DatasetOwner::transmitter ? int(is_busy(records[t].truth))
                                                   : int(records[t].ack);
    d.add(window, label);
  }
  return d;
}

inline const char* to_string(Truth t) {
  switch (t) {
    case Truth::idle: return "idle";
    case Truth::busy_background: return "busy_background";
    case Truth::busy_priority: return "busy_priority";
  }
  return "?";
}

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::transmit: return "transmit";
    case Decision::hold: return "hold";
    case Decision::backoff: return "backoff";
  }
  return "?";
}

inline const char* to_string(AttackAction a) {
  switch (a) {
    case AttackAction::none: return "none";
    case AttackAction::jam_data: return "jam_data";
    case AttackAction::poison_sense: return "poison_sense";
    case AttackAction::replay_priority: return "replay_priority";
  }
  return "?";
}

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::success: return "success";
    case Outcome::collision_fail: return "collision_fail";
    case Outcome::jammed_fail: return "jammed_fail";
    case Outcome::no_attempt: return "no_attempt";
  }
  return "?";
}

}  // namespace advspec
