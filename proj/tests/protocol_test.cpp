#include <gtest/gtest.h>

#include <vector>

#include "advspec/protocol.hpp"

using namespace advspec;

namespace {
SlotRecord rec(int idx, Truth truth, double st, double sa, bool ack) {
  SlotRecord r;
  r.slot_index = idx;
  r.truth = truth;
  r.sensed_t = st;
  r.sensed_a = sa;
  r.ack = ack;
  return r;
}
}  // namespace

TEST(CollectDataset, WindowCountAndContent) {
  std::vector<SlotRecord> records;
  for (int i = 0; i < 10; ++i)
    records.push_back(rec(i, Truth::idle, double(i), 100.0 + i, false));
  Dataset d = collect_dataset(records, 10, DatasetOwner::transmitter);
  EXPECT_EQ(d.size(), 1);
  for (int k = 0; k < 10; ++k) EXPECT_DOUBLE_EQ(d.feature_col(0)(k), double(k));

  Dataset da = collect_dataset(records, 10, DatasetOwner::adversary);
  for (int k = 0; k < 10; ++k) EXPECT_DOUBLE_EQ(da.feature_col(0)(k), 100.0 + k);

  records.push_back(rec(10, Truth::idle, 10.0, 110.0, false));
  d = collect_dataset(records, 10, DatasetOwner::transmitter);
  EXPECT_EQ(d.size(), 2);
  EXPECT_DOUBLE_EQ(d.feature_col(1)(0), 1.0);
  EXPECT_DOUBLE_EQ(d.feature_col(1)(9), 10.0);
}

TEST(CollectDataset, TransmitterLabelsAreTruth) {
  std::vector<SlotRecord> records;
  records.push_back(rec(0, Truth::idle, 1.0, 1.0, true));
  records.push_back(rec(1, Truth::busy_background, 4.0, 4.0, false));
  records.push_back(rec(2, Truth::busy_priority, 4.0, 4.0, false));
  Dataset d = collect_dataset(records, 1, DatasetOwner::transmitter);
  EXPECT_EQ(d.label(0), 0);
  EXPECT_EQ(d.label(1), 1);
  EXPECT_EQ(d.label(2), 1);  // any busy state is class 1
}

TEST(CollectDataset, AdversaryLabelsAreAcksRegardlessOfTruth) {
  std::vector<SlotRecord> records;
  records.push_back(rec(0, Truth::busy_background, 4.0, 4.0, true));
  records.push_back(rec(1, Truth::idle, 1.0, 1.0, false));
  Dataset d = collect_dataset(records, 1, DatasetOwner::adversary);
  EXPECT_EQ(d.label(0), 1);
  EXPECT_EQ(d.label(1), 0);
}

TEST(CollectDataset, TooFewRecordsThrows) {
  std::vector<SlotRecord> records(9);
  for (int i = 0; i < 9; ++i) records[i] = rec(i, Truth::idle, 1.0, 1.0, false);
  EXPECT_THROW(collect_dataset(records, 10, DatasetOwner::transmitter), std::invalid_argument);
  EXPECT_THROW(collect_dataset(records, 0, DatasetOwner::transmitter), std::invalid_argument);
}

TEST(ClassifiedBusy, PreFlipSemantics) {
  SlotRecord r;
  r.t_decision = Decision::hold;
  EXPECT_TRUE(classified_busy(r));
  r.t_decision = Decision::transmit;
  EXPECT_FALSE(classified_busy(r));
  r.t_decision = Decision::backoff;
  EXPECT_TRUE(classified_busy(r));
  // flipped records report the classifier's original verdict
  r.t_decision = Decision::transmit;
  r.defense_flip = true;
  EXPECT_TRUE(classified_busy(r));
  r.t_decision = Decision::hold;
  EXPECT_FALSE(classified_busy(r));
}

TEST(EnumNames, RoundTripStrings) {
  EXPECT_STREQ(to_string(Truth::busy_priority), "busy_priority");
  EXPECT_STREQ(to_string(Decision::backoff), "backoff");
  EXPECT_STREQ(to_string(AttackAction::replay_priority), "replay_priority");
  EXPECT_STREQ(to_string(Outcome::jammed_fail), "jammed_fail");
}
