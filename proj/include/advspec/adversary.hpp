// The adversary: exploratory surrogate training plus the per-slot attack
// primitives, all gated on the surrogate's ACK prediction.
#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "nnet.hpp"
#include "protocol.hpp"
#include "rng.hpp"

namespace advspec {

enum class AttackKind { none, jamming, spectrum_poisoning, priority_violation };
enum class AttackPhase { test, retraining };

struct AttackConfig {
  AttackKind kind = AttackKind::none;
  AttackPhase phase = AttackPhase::test;
  int observe_slots = 1000;
};

inline const char* to_string(AttackKind k) {
  switch (k) {
    case AttackKind::none: return "none";
    case AttackKind::jamming: return "jamming";
    case AttackKind::spectrum_poisoning: return "spectrum_poisoning";
    case AttackKind::priority_violation: return "priority_violation";
  }
  return "?";
}

inline const char* to_string(AttackPhase p) {
  return p == AttackPhase::test ? "test" : "retraining";
}

struct Adversary {
  AttackConfig config;
  DenseNet net;               // surrogate classifier, valid once trained
  bool trained = false;
  Hyperparams hyper;
  int backoff_len = 2;        // T's backoff length, for replay suppression
  int skip_remaining = 0;     // slots covered by a backoff this agent induced
};

// Surrogate classifier from passive observation: windows of A's own sensed
// powers against overheard ACKs, fitted with the same grid-search scheme.
inline void exploratory_train(Adversary& a, std::span<const SlotRecord> observation, int n_new,
                              const std::vector<Hyperparams>& grid, Rng& rng) {
  Dataset d = collect_dataset(observation, n_new, DatasetOwner::adversary);
  bool has0 = false, has1 = false;
  for (int i = 0; i < d.size(); ++i) (d.label(i) ? has1 : has0) = true;
  if (!has0 || !has1)
    throw std::invalid_argument("exploratory_train: observation yields a single label");
  auto [train_set, validation] = split_tail(d, 0.2);
  HyperSearchResult r = hyper_search(grid, train_set, validation, rng);
  a.net = std::move(r.net);
  a.hyper = r.best;
  a.trained = true;
}

inline bool predicts_ack(const Adversary& a, const Eigen::Ref<const Eigen::VectorXd>& window) {
  if (!a.trained) throw std::logic_error("adversary: surrogate not trained");
  return classify(a.net, window, a.hyper.tau).label == 1;
}

// Sensing-phase primitive (spectrum poisoning / priority replay). A skips
// slots still covered by a backoff it induced; otherwise it transmits
// whenever the surrogate predicts an ACK would follow. No window (warm-up)
// means no prediction and no action.
inline AttackAction act_sensing_phase(Adversary& a,
                                      const std::optional<Eigen::VectorXd>& window) {
  if (a.config.kind != AttackKind::spectrum_poisoning &&
      a.config.kind != AttackKind::priority_violation)
    throw std::logic_error("act_sensing_phase: attack kind is not a sensing-phase attack");
  if (a.config.kind == AttackKind::priority_violation && a.skip_remaining > 0) {
    --a.skip_remaining;
    return AttackAction::none;
  }
  if (!window || !predicts_ack(a, *window)) return AttackAction::none;
  return a.config.kind == AttackKind::priority_violation ? AttackAction::replay_priority
                                                         : AttackAction::poison_sense;
}

// End-of-slot feedback. A hears every ACK, so after a replay it knows whether
// T actually backed off: no ACK means the replay registered as busy and the
// next backoff_len slots need no attack; an ACK means the replay failed to
// flip T and A stays engaged. An ACK heard mid-skip means T is transmitting
// after all (the silence came from T's own backoff, already over), so the
// rest of the skip is dropped.
inline void observe_feedback(Adversary& a, AttackAction action, bool ack) {
  if (action == AttackAction::replay_priority)
    a.skip_remaining = ack ? 0 : a.backoff_len;
  else if (ack)
    a.skip_remaining = 0;
}

// Data-phase primitive (jamming): jam iff the surrogate predicts an ACK.
inline AttackAction act_data_phase(const Adversary& a,
                                   const std::optional<Eigen::VectorXd>& window) {
  if (a.config.kind != AttackKind::jamming)
    throw std::logic_error("act_data_phase: attack kind is not jamming");
  if (!window || !predicts_ack(a, *window)) return AttackAction::none;
  return AttackAction::jam_data;
}

}  // namespace advspec
