// Canned scenario configurations: the no-attack baselines, each attack in
// test and retraining flavors, and the defended variant.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "config.hpp"

namespace advspec {

// Base scenario shared by all presets. The background burst structure uses a
// small activation probability: the queue builds up over long idle stretches
// and drains in long busy runs, giving the strong temporal correlation the
// windowed classifier relies on. Long-run occupancy stays at arrival_rate
// regardless of this value.
inline ScenarioConfig preset_base() {
  ScenarioConfig c;
  c.background.activation_prob = 0.05;
  return c;
}

inline ScenarioConfig preset_no_attack() { return preset_base(); }

inline ScenarioConfig preset_jamming_test() {
  ScenarioConfig c = preset_base();
  c.attack.kind = AttackKind::jamming;
  return c;
}

inline ScenarioConfig preset_clean_retraining() {
  ScenarioConfig c = preset_base();
  c.retrain_enabled = true;
  return c;
}

inline ScenarioConfig preset_jamming_retraining() {
  ScenarioConfig c = preset_base();
  c.attack.kind = AttackKind::jamming;
  c.attack.phase = AttackPhase::retraining;
  c.retrain_enabled = true;
  return c;
}

inline ScenarioConfig preset_poisoning_test() {
  ScenarioConfig c = preset_base();
  c.attack.kind = AttackKind::spectrum_poisoning;
  return c;
}

inline ScenarioConfig preset_poisoning_retraining() {
  ScenarioConfig c = preset_base();
  c.attack.kind = AttackKind::spectrum_poisoning;
  c.attack.phase = AttackPhase::retraining;
  c.retrain_enabled = true;
  return c;
}

inline ScenarioConfig preset_priority_no_attack() {
  ScenarioConfig c = preset_base();
  c.priority.enabled = true;
  return c;
}

inline ScenarioConfig preset_priority_poisoning_test() {
  ScenarioConfig c = preset_base();
  c.priority.enabled = true;
  c.attack.kind = AttackKind::spectrum_poisoning;
  return c;
}

inline ScenarioConfig preset_priority_violation_test() {
  ScenarioConfig c = preset_base();
  c.priority.enabled = true;
  c.attack.kind = AttackKind::priority_violation;
  return c;
}

inline ScenarioConfig preset_priority_violation_retraining() {
  ScenarioConfig c = preset_base();
  c.priority.enabled = true;
  c.attack.kind = AttackKind::priority_violation;
  c.attack.phase = AttackPhase::retraining;
  c.retrain_enabled = true;
  return c;
}

inline ScenarioConfig preset_defended_priority_violation(double p_d) {
  ScenarioConfig c = preset_priority_violation_test();
  c.defense.enabled = true;
  c.defense.p_d = p_d;
  return c;
}

// Name/config pairs for the replication sweep.
inline std::vector<std::pair<std::string, ScenarioConfig>> preset_table() {
  return {{"no_attack", preset_no_attack()},
          {"jamming_test", preset_jamming_test()},
          {"clean_retraining", preset_clean_retraining()},
          {"jamming_retraining", preset_jamming_retraining()},
          {"poisoning_test", preset_poisoning_test()},
          {"poisoning_retraining", preset_poisoning_retraining()},
          {"priority_no_attack", preset_priority_no_attack()},
          {"priority_poisoning_test", preset_priority_poisoning_test()},
          {"priority_violation_test", preset_priority_violation_test()},
          {"priority_violation_retraining", preset_priority_violation_retraining()}};
}

}  // namespace advspec
