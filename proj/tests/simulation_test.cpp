#include <gtest/gtest.h>

#include <vector>

#include "advspec/presets.hpp"
#include "advspec/simulation.hpp"

using namespace advspec;

namespace {

ScenarioConfig tiny_base() {
  ScenarioConfig c;
  c.master_seed = 13;
  c.n_new = 3;
  c.train_slots = 120;
  c.test_slots = 80;
  c.retrain_slots = 100;
  c.background.activation_prob = 0.5;
  c.attack.observe_slots = 200;
  c.nnet.neurons_per_layer = 8;
  c.nnet.training_steps = 60;
  c.nnet.batch_size = 20;
  return c;
}

long actions(const std::vector<SlotRecord>& records) {
  long n = 0;
  for (const SlotRecord& r : records) n += r.attack_action != AttackAction::none;
  return n;
}

// Full-size paired runs shared across the retraining tests.
const RunResult& run_no_attack() {
  static RunResult r = [] {
    ScenarioConfig c = preset_no_attack();
    c.master_seed = 101;
    return run_scenario(c);
  }();
  return r;
}

const RunResult& run_clean_retrain() {
  static RunResult r = [] {
    ScenarioConfig c = preset_clean_retraining();
    c.master_seed = 101;
    return run_scenario(c);
  }();
  return r;
}

const RunResult& run_jamming_retrain() {
  static RunResult r = [] {
    ScenarioConfig c = preset_jamming_retraining();
    c.master_seed = 101;
    return run_scenario(c);
  }();
  return r;
}

}  // namespace

TEST(RunScenario, IdenticalSeedsReplayBitForBit) {
  ScenarioConfig c = tiny_base();
  c.attack.kind = AttackKind::jamming;
  RunResult a = run_scenario(c);
  RunResult b = run_scenario(c);
  auto compare = [](const std::vector<SlotRecord>& x, const std::vector<SlotRecord>& y) {
    ASSERT_EQ(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      EXPECT_EQ(x[i].truth, y[i].truth);
      EXPECT_EQ(x[i].sensed_t, y[i].sensed_t);
      EXPECT_EQ(x[i].sensed_a, y[i].sensed_a);
      EXPECT_EQ(x[i].t_decision, y[i].t_decision);
      EXPECT_EQ(x[i].attack_action, y[i].attack_action);
      EXPECT_EQ(x[i].outcome, y[i].outcome);
      EXPECT_EQ(x[i].ack, y[i].ack);
      EXPECT_EQ(x[i].defense_flip, y[i].defense_flip);
    }
  };
  compare(a.training_records, b.training_records);
  compare(a.observation_records, b.observation_records);
  compare(a.test_records, b.test_records);
  EXPECT_EQ(a.metrics.e_fa, b.metrics.e_fa);
  EXPECT_EQ(a.metrics.normalized_throughput, b.metrics.normalized_throughput);
}

TEST(RunScenario, NoAttackEmitsNoActions) {
  ScenarioConfig c = tiny_base();
  RunResult r = run_scenario(c);
  EXPECT_EQ(actions(r.training_records), 0);
  EXPECT_EQ(r.observation_records.size(), 0u);  // nothing to observe without an attack
  EXPECT_EQ(actions(r.test_records), 0);
  EXPECT_EQ(r.metrics.attack_count, 0);
  EXPECT_EQ(r.metrics.attack_energy, 0.0);
  EXPECT_FALSE(r.adversary.trained);
}

TEST(RunScenario, TestPhaseAttackStaysOutOfOtherPhases) {
  ScenarioConfig c = tiny_base();
  c.attack.kind = AttackKind::jamming;
  RunResult r = run_scenario(c);
  EXPECT_EQ(actions(r.training_records), 0);
  EXPECT_EQ(actions(r.observation_records), 0);  // A only listens before striking
  EXPECT_EQ(r.retraining_records.size(), 0u);
  EXPECT_GT(actions(r.test_records), 0);
  EXPECT_EQ(r.metrics.attack_count, actions(r.test_records));
}

TEST(RunScenario, RetrainingAttackStaysOutOfTestPhase) {
  ScenarioConfig c = tiny_base();
  c.retrain_enabled = true;
  c.attack.kind = AttackKind::jamming;
  c.attack.phase = AttackPhase::retraining;
  RunResult r = run_scenario(c);
  EXPECT_EQ(actions(r.observation_records), 0);
  EXPECT_GT(actions(r.retraining_records), 0);
  EXPECT_EQ(actions(r.test_records), 0);
  EXPECT_TRUE(r.retrained);
  EXPECT_EQ(r.metrics.attack_count, actions(r.retraining_records));
}

TEST(RunScenario, PriorityTrafficReplacesBackground) {
  ScenarioConfig c = tiny_base();
  c.priority.enabled = true;
  RunResult r = run_scenario(c);
  long priority_slots = 0;
  for (const SlotRecord& rec : r.training_records) {
    EXPECT_NE(rec.truth, Truth::busy_background);
    priority_slots += rec.truth == Truth::busy_priority;
  }
  EXPECT_GT(priority_slots, 0);

  RunResult plain = run_scenario(tiny_base());
  for (const SlotRecord& rec : plain.training_records)
    EXPECT_NE(rec.truth, Truth::busy_priority);
}

TEST(RunScenario, TrainingOccupancyTracksArrivalRate) {
  ScenarioConfig c = tiny_base();
  c.train_slots = 4000;
  RunResult r = run_scenario(c);
  long busy = 0;
  for (const SlotRecord& rec : r.training_records) busy += is_busy(rec.truth);
  EXPECT_NEAR(double(busy) / double(r.training_records.size()), c.background.arrival_rate, 0.03);
}

TEST(RunScenario, SensingAttackEnergyUsesTheRatio) {
  ScenarioConfig c = tiny_base();
  c.attack.kind = AttackKind::spectrum_poisoning;
  RunResult r = run_scenario(c);
  ASSERT_GT(r.metrics.attack_count, 0);
  double expect = (c.channel.power_adversary * double(r.metrics.attack_count)) *
                  c.sensing_to_transmission_ratio;
  EXPECT_EQ(r.metrics.attack_energy, expect);

  ScenarioConfig j = tiny_base();
  j.attack.kind = AttackKind::jamming;
  RunResult rj = run_scenario(j);
  ASSERT_GT(rj.metrics.attack_count, 0);
  EXPECT_EQ(rj.metrics.attack_energy,
            j.channel.power_adversary * double(rj.metrics.attack_count));
}

TEST(RunScenario, SilentReplaySuppressesTheInducedBackoffWindow) {
  ScenarioConfig c = tiny_base();
  c.priority.enabled = true;
  c.attack.kind = AttackKind::priority_violation;
  RunResult r = run_scenario(c);
  long replays = 0;
  const auto& recs = r.test_records;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (recs[i].attack_action != AttackAction::replay_priority) continue;
    ++replays;
    if (recs[i].ack) continue;  // failed replay: A re-engages immediately
    for (std::size_t k = i + 1; k < recs.size() && k <= i + std::size_t(c.priority.backoff_len);
         ++k)
      EXPECT_EQ(recs[k].attack_action, AttackAction::none) << "slot " << k;
  }
  EXPECT_GT(replays, 0);
}

TEST(RunScenario, DefenseFlipsAppearOnceDefended) {
  ScenarioConfig c = tiny_base();
  c.attack.kind = AttackKind::jamming;
  c.defense.enabled = true;
  c.defense.p_d = 0.5;
  RunResult r = run_scenario(c);
  long obs_flips = 0, test_flips = 0, train_flips = 0;
  for (const SlotRecord& rec : r.observation_records) obs_flips += rec.defense_flip;
  for (const SlotRecord& rec : r.test_records) test_flips += rec.defense_flip;
  for (const SlotRecord& rec : r.training_records) train_flips += rec.defense_flip;
  EXPECT_GT(obs_flips, 0);   // the defense is what A gets to observe
  EXPECT_GT(test_flips, 0);  // and T keeps it up while attacked
  EXPECT_EQ(train_flips, 0);
}

TEST(RunScenario, MetricsMatchStrippedTestRecords) {
  ScenarioConfig c = tiny_base();
  c.attack.kind = AttackKind::jamming;
  RunResult r = run_scenario(c);
  auto stripped = detail::strip_warmup(r.test_records, c.n_new);
  auto [fa, md] = confusion(stripped);
  EXPECT_EQ(r.metrics.e_fa, fa);
  EXPECT_EQ(r.metrics.e_md, md);
  EXPECT_EQ(r.metrics.normalized_throughput, normalized_throughput(stripped));
}

// Causative jamming flips the feedback labels T retrains on: on paired seeds
// the attacked run disagrees with the clean run's ACKs on most transmitted
// retraining slots.
TEST(Retraining, CausativeJammingFlipsTransmittedLabels) {
  const auto& clean = run_clean_retrain().retraining_records;
  const auto& attacked = run_jamming_retrain().retraining_records;
  ASSERT_EQ(clean.size(), attacked.size());
  long transmitted = 0, flipped = 0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    EXPECT_EQ(clean[i].t_decision, attacked[i].t_decision) << "slot " << i;
    if (clean[i].t_decision != Decision::transmit) continue;
    ++transmitted;
    flipped += clean[i].ack != attacked[i].ack;
  }
  ASSERT_GT(transmitted, 0);
  EXPECT_GE(double(flipped) / double(transmitted), 0.30);
}

TEST(Retraining, CleanRetrainingKeepsErrorsClose) {
  const Metrics& base = run_no_attack().metrics;
  const Metrics& clean = run_clean_retrain().metrics;
  EXPECT_TRUE(run_clean_retrain().retrained);
  EXPECT_LE(clean.e_fa, base.e_fa + 0.02);
  EXPECT_LE(clean.e_md, base.e_md + 0.02);
}

TEST(Retraining, CausativeJammingDegradesTheRetrainedClassifier) {
  const Metrics& base = run_no_attack().metrics;
  const Metrics& attacked = run_jamming_retrain().metrics;
  double worst_base = std::max(base.e_fa, base.e_md);
  double worst_attacked = std::max(attacked.e_fa, attacked.e_md);
  EXPECT_GE(worst_attacked, worst_base + 0.10);
  EXPECT_LT(attacked.normalized_throughput, run_clean_retrain().metrics.normalized_throughput);
}
