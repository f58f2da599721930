// The slotted simulation: training, observation, retraining, and test phases
// over the shared channel, with the adversary's per-slot attack decisions and
// the transmitter's defended decision loop.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "adversary.hpp"
#include "channel.hpp"
#include "config.hpp"
#include "metrics.hpp"
#include "protocol.hpp"
#include "rng.hpp"
#include "traffic.hpp"
#include "transmitter.hpp"

namespace advspec {

// Stream tags: every phase derives its own child streams from these, so the
// realization of one phase never shifts another's.
namespace stream {
inline constexpr std::uint64_t traffic = 1;
inline constexpr std::uint64_t channel_t = 2;
inline constexpr std::uint64_t channel_a = 3;
inline constexpr std::uint64_t channel_r = 4;
inline constexpr std::uint64_t nnet_t = 5;
inline constexpr std::uint64_t nnet_a = 6;
inline constexpr std::uint64_t defense = 7;
}  // namespace stream

enum class Phase { training = 0, observation = 1, retraining = 2, test = 3 };

inline const char* to_string(Phase p) {
  switch (p) {
    case Phase::training: return "training";
    case Phase::observation: return "observation";
    case Phase::retraining: return "retraining";
    case Phase::test: return "test";
  }
  return "?";
}

struct PhaseStreams {
  Rng traffic, channel_t, channel_a, channel_r, defense;
};

inline PhaseStreams phase_streams(std::uint64_t master_seed, Phase phase) {
  Rng master(master_seed);
  const auto idx = static_cast<std::uint64_t>(phase);
  return {master.derive(stream::traffic).derive(idx),
          master.derive(stream::channel_t).derive(idx),
          master.derive(stream::channel_a).derive(idx),
          master.derive(stream::channel_r).derive(idx),
          master.derive(stream::defense).derive(idx)};
}

namespace detail {

struct PhaseSpec {
  Phase phase;
  int slots = 0;
  bool transmitter_decides = false;  // training phase only collects
  bool attacks_active = false;
};

// Runs one phase of the slot loop. The transmitter and adversary are carried
// across phases; traffic state, sensing windows, and backoff counters start
// fresh each phase.
inline std::vector<SlotRecord> run_phase(const ScenarioConfig& cfg, const PhaseSpec& spec,
                                         Transmitter& transmitter, Adversary& adversary) {
  PhaseStreams streams = phase_streams(cfg.master_seed, spec.phase);

  BackgroundTraffic background;
  background.arrival_rate = cfg.background.arrival_rate;
  background.activation_prob = cfg.background.activation_prob;
  PriorityTraffic priority;
  priority.start_prob = cfg.priority.start_prob;
  priority.burst_len = cfg.priority.burst_len;
  priority.backoff_len = cfg.priority.backoff_len;

  transmitter.backoff_remaining = 0;
  adversary.skip_remaining = 0;

  const double gain_bt = channel_gain(cfg.layout.background, cfg.layout.transmitter, cfg.channel);
  const double gain_ba = channel_gain(cfg.layout.background, cfg.layout.adversary, cfg.channel);
  const double gain_br = channel_gain(cfg.layout.background, cfg.layout.receiver, cfg.channel);
  const double gain_at = channel_gain(cfg.layout.adversary, cfg.layout.transmitter, cfg.channel);
  const double gain_ar = channel_gain(cfg.layout.adversary, cfg.layout.receiver, cfg.channel);
  const double gain_tr = channel_gain(cfg.layout.transmitter, cfg.layout.receiver, cfg.channel);

  const bool sensing_attack = spec.attacks_active &&
                              (cfg.attack.kind == AttackKind::spectrum_poisoning ||
                               cfg.attack.kind == AttackKind::priority_violation);
  const bool data_attack = spec.attacks_active && cfg.attack.kind == AttackKind::jamming;

  const auto n_new = static_cast<std::size_t>(cfg.n_new);
  std::vector<double> history_t, history_a;
  history_t.reserve(static_cast<std::size_t>(spec.slots));
  history_a.reserve(static_cast<std::size_t>(spec.slots));

  auto window_of = [n_new](const std::vector<double>& history) -> std::optional<Eigen::VectorXd> {
    if (history.size() < n_new) return std::nullopt;
    return Eigen::Map<const Eigen::VectorXd>(history.data() + (history.size() - n_new),
                                             static_cast<Eigen::Index>(n_new));
  };

  std::vector<SlotRecord> records;
  records.reserve(static_cast<std::size_t>(spec.slots));

  for (int slot = 0; slot < spec.slots; ++slot) {
    SlotRecord r;
    r.slot_index = slot;

    // 1. Traffic: the priority process replaces background traffic when enabled.
    if (cfg.priority.enabled) {
      r.truth = step_priority(priority, streams.traffic) ? Truth::busy_priority : Truth::idle;
    } else {
      r.truth = step_background(background, streams.traffic) ? Truth::busy_background
                                                             : Truth::idle;
    }
    const bool busy = is_busy(r.truth);

    // 2. A senses (its own transmissions never appear in its reading), then
    //    commits its sensing-phase action for this slot.
    {
      std::vector<std::pair<double, double>> sources;
      if (busy) sources.emplace_back(cfg.channel.power_background, gain_ba);
      r.sensed_a = sample_sensed_power(sources, cfg.channel, streams.channel_a);
      history_a.push_back(r.sensed_a);
    }
    if (sensing_attack) r.attack_action = act_sensing_phase(adversary, window_of(history_a));

    // 3. T senses; a sensing-phase attack adds A's power at T's sensor.
    {
      std::vector<std::pair<double, double>> sources;
      if (busy) sources.emplace_back(cfg.channel.power_background, gain_bt);
      if (r.attack_action == AttackAction::poison_sense ||
          r.attack_action == AttackAction::replay_priority)
        sources.emplace_back(cfg.channel.power_adversary, gain_at);
      r.sensed_t = sample_sensed_power(sources, cfg.channel, streams.channel_t);
      history_t.push_back(r.sensed_t);
    }

    // 4. T decides. Warm-up slots (incomplete window) and the training phase
    //    hold without consulting the classifier.
    std::optional<Eigen::VectorXd> window_t = window_of(history_t);
    if (spec.transmitter_decides && window_t) {
      DecideResult d = decide(transmitter, *window_t, streams.defense);
      r.t_decision = d.decision;
      r.defense_flip = d.defense_flip;
    } else {
      r.t_decision = Decision::hold;
    }

    // 5. Jamming targets the data phase; energy is spent whether or not T
    //    actually transmits this slot.
    if (data_attack) r.attack_action = act_data_phase(adversary, window_of(history_a));

    // 6. Transmission outcome over the receiver's channel.
    if (r.t_decision == Decision::transmit) {
      std::vector<double> interferers;
      if (busy) interferers.push_back(cfg.channel.power_background * gain_br);
      const bool jammed = r.attack_action == AttackAction::jam_data;
      if (jammed) interferers.push_back(cfg.channel.power_adversary * gain_ar);
      const bool ok = transmission_success(cfg.channel.power_transmitter * gain_tr, interferers,
                                           cfg.channel, streams.channel_r);
      r.outcome = ok ? Outcome::success : (jammed ? Outcome::jammed_fail : Outcome::collision_fail);
    } else {
      r.outcome = Outcome::no_attempt;
    }
    r.ack = r.outcome == Outcome::success;

    // 7. Feedback: A hears the ACK broadcast and updates its replay bookkeeping.
    if (sensing_attack) observe_feedback(adversary, r.attack_action, r.ack);

    records.push_back(r);
  }
  return records;
}

// First n_new-1 slots of a phase have no complete window; drop them before
// computing error rates or throughput.
inline std::vector<SlotRecord> strip_warmup(const std::vector<SlotRecord>& records, int n_new) {
  const auto skip = static_cast<std::size_t>(n_new - 1);
  if (records.size() <= skip) return {};
  return std::vector<SlotRecord>(records.begin() + static_cast<std::ptrdiff_t>(skip),
                                 records.end());
}

}  // namespace detail

struct RunResult {
  Metrics metrics;  // error rates and throughput from the test phase,
                    // attack count/energy totaled over the whole run
  std::vector<SlotRecord> training_records;
  std::vector<SlotRecord> observation_records;
  std::vector<SlotRecord> retraining_records;
  std::vector<SlotRecord> test_records;
  Transmitter transmitter;
  Adversary adversary;
  bool retrained = false;
};

// Full pipeline: train C, let A observe and fit its surrogate, optionally run
// a feedback-retraining round, then measure the test phase.
inline RunResult run_scenario(const ScenarioConfig& cfg) {
  validate_config(cfg);
  RunResult result;
  Rng master(cfg.master_seed);

  Transmitter& t = result.transmitter;
  Adversary& a = result.adversary;
  a.config = cfg.attack;
  a.backoff_len = cfg.priority.backoff_len;

  const bool attacking = cfg.attack.kind != AttackKind::none;
  const std::vector<Hyperparams> grid = hyper_grid(cfg.nnet);

  // Training phase: T holds and learns the channel.
  {
    detail::PhaseSpec spec{Phase::training, cfg.train_slots, false, false};
    result.training_records = detail::run_phase(cfg, spec, t, a);
    Rng rng = master.derive(stream::nnet_t).derive(static_cast<std::uint64_t>(Phase::training));
    DefensePolicy defense = cfg.defense;  // train_initial fills tau0/tau1
    t = train_initial(result.training_records, cfg.n_new, grid, rng);
    t.defense.enabled = defense.enabled;
    t.defense.p_d = defense.p_d;
    t.backoff_enabled = cfg.priority.enabled;
    t.backoff_len = cfg.priority.backoff_len;
  }

  // Observation phase: T operates normally, A listens and fits its surrogate.
  if (attacking) {
    detail::PhaseSpec spec{Phase::observation, cfg.attack.observe_slots, true, false};
    result.observation_records = detail::run_phase(cfg, spec, t, a);
    Rng rng = master.derive(stream::nnet_a).derive(static_cast<std::uint64_t>(Phase::observation));
    exploratory_train(a, result.observation_records, cfg.n_new, grid, rng);
  }

  // Retraining phase: collect a feedback-labeled window (attacked when the
  // attack targets retraining) and update C from it.
  if (cfg.retrain_enabled) {
    const bool attacks_now = attacking && cfg.attack.phase == AttackPhase::retraining;
    detail::PhaseSpec spec{Phase::retraining, cfg.retrain_slots, true, attacks_now};
    result.retraining_records = detail::run_phase(cfg, spec, t, a);
    Rng rng = master.derive(stream::nnet_t).derive(static_cast<std::uint64_t>(Phase::retraining));
    result.retrained = retrain(t, result.retraining_records, rng);
  }

  // Test phase.
  {
    const bool attacks_now = attacking && cfg.attack.phase == AttackPhase::test;
    detail::PhaseSpec spec{Phase::test, cfg.test_slots, true, attacks_now};
    result.test_records = detail::run_phase(cfg, spec, t, a);
  }

  const std::vector<SlotRecord> scored = detail::strip_warmup(result.test_records, cfg.n_new);
  auto [e_fa, e_md] = confusion(scored);
  result.metrics.e_fa = e_fa;
  result.metrics.e_md = e_md;
  result.metrics.normalized_throughput = normalized_throughput(scored);
  result.metrics.success_ratio = try_success_ratio(scored);

  std::vector<SlotRecord> all;
  all.reserve(result.training_records.size() + result.observation_records.size() +
              result.retraining_records.size() + result.test_records.size());
  for (const auto* phase_records : {&result.training_records, &result.observation_records,
                                    &result.retraining_records, &result.test_records})
    all.insert(all.end(), phase_records->begin(), phase_records->end());
  result.metrics.attack_count = attack_count(all);
  result.metrics.attack_energy =
      attack_energy(all, cfg.sensing_to_transmission_ratio, cfg.channel.power_adversary);

  return result;
}

}  // namespace advspec
