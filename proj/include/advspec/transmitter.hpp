// The IoT transmitter: classifier training, per-slot decisions with the
// probabilistic defense, priority backoff, and feedback-driven retraining.
#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "nnet.hpp"
#include "protocol.hpp"
#include "rng.hpp"

namespace advspec {

struct DefensePolicy {
  bool enabled = false;
  double p_d = 0.0;
  // confidence thresholds around tau; computed from training scores
  double tau0 = 0.0;
  double tau1 = 1.0;
};

inline void validate_defense(const DefensePolicy& d, double tau) {
  if (!(d.p_d >= 0.0 && d.p_d <= 1.0))
    throw std::invalid_argument("defense: p_d must lie in [0,1]");
  if (d.enabled && !(d.tau0 < tau && tau < d.tau1))
    throw std::invalid_argument("defense: thresholds must satisfy tau0 < tau < tau1");
}

namespace detail {
inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}
}  // namespace detail

// tau0 = median score among label-0 training samples, tau1 = median among
// label-1; clamped to keep tau strictly between them.
inline std::pair<double, double> compute_confidence_thresholds(std::span<const double> scores,
                                                               std::span<const int> labels,
                                                               double tau) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("confidence_thresholds: scores/labels size mismatch");
  std::vector<double> s0, s1;
  for (std::size_t i = 0; i < scores.size(); ++i)
    (labels[i] == 0 ? s0 : s1).push_back(scores[i]);
  if (s0.empty() || s1.empty())
    throw std::invalid_argument("confidence_thresholds: both labels required");
  const double eps = 1e-6;
  double tau0 = detail::median(std::move(s0));
  double tau1 = detail::median(std::move(s1));
  tau0 = std::min(tau0, tau - eps);
  tau1 = std::max(tau1, tau + eps);
  return {tau0, tau1};
}

struct Transmitter {
  DenseNet net;
  Hyperparams hyper;          // winning candidate, reused for retraining
  DefensePolicy defense;
  Dataset train_data;         // kept for the retraining union
  bool backoff_enabled = false;
  int backoff_len = 2;
  int backoff_remaining = 0;
};

// Builds classifier C from a training phase: windowed dataset, 80/20 tail
// validation split, grid search, then confidence thresholds over the full
// training scores.
inline Transmitter train_initial(std::span<const SlotRecord> records, int n_new,
                                 const std::vector<Hyperparams>& grid, Rng& rng) {
  Transmitter t;
  t.train_data = collect_dataset(records, n_new, DatasetOwner::transmitter);
  auto [train_set, validation] = split_tail(t.train_data, 0.2);
  HyperSearchResult r = hyper_search(grid, train_set, validation, rng);
  t.net = std::move(r.net);
  t.hyper = r.best;
  Eigen::VectorXd s = scores(t.net, t.train_data.features());
  auto [tau0, tau1] = compute_confidence_thresholds(
      std::span<const double>(s.data(), std::size_t(s.size())), t.train_data.labels(),
      t.hyper.tau);
  t.defense.tau0 = tau0;
  t.defense.tau1 = tau1;
  return t;
}

struct DecideResult {
  Decision decision = Decision::hold;
  bool defense_flip = false;
  bool classified_busy = false;
  double score = 0.0;
};

// Backoff wins outright; otherwise classify, maybe flip high-confidence
// decisions with probability p_d, and arm the backoff counter whenever the
// classifier reports busy in a priority scenario.
inline DecideResult decide(Transmitter& t, const Eigen::Ref<const Eigen::VectorXd>& window,
                           Rng& defense_rng) {
  if (t.backoff_remaining > 0) {
    --t.backoff_remaining;
    return {Decision::backoff, false, true, 0.0};
  }
  Classification c = classify(t.net, window, t.hyper.tau);
  bool busy = c.label == 1;
  DecideResult r;
  r.classified_busy = busy;
  r.score = c.score;
  r.decision = busy ? Decision::hold : Decision::transmit;
  if (t.defense.enabled &&
      (c.score <= t.defense.tau0 || c.score >= t.defense.tau1) &&
      defense_rng.bernoulli(t.defense.p_d)) {
    r.decision = r.decision == Decision::transmit ? Decision::hold : Decision::transmit;
    r.defense_flip = true;
  }
  if (busy && t.backoff_enabled) t.backoff_remaining = t.backoff_len;
  return r;
}

// Feedback-labeled dataset from a retraining window: transmitted slots are
// labeled by ACK absence, the rest fall back to ground truth.
inline Dataset feedback_dataset(std::span<const SlotRecord> records, int n_new) {
  Dataset d(n_new);
  if (int(records.size()) < n_new) return d;
  std::vector<double> window(static_cast<std::size_t>(n_new));
  for (std::size_t t = std::size_t(n_new) - 1; t < records.size(); ++t) {
    for (int k = 0; k < n_new; ++k)
      window[std::size_t(k)] = records[t - std::size_t(n_new) + 1 + std::size_t(k)].sensed_t;
    const SlotRecord& r = records[t];
    int label = r.t_decision == Decision::transmit ? int(!r.ack) : int(is_busy(r.truth));
    d.add(window, label);
  }
  return d;
}

// C~ = train() continuing from C's weights on original + feedback data.
// Returns false (classifier untouched) when the window yields no samples.
inline bool retrain(Transmitter& t, std::span<const SlotRecord> records, Rng& rng) {
  Dataset fresh = feedback_dataset(records, t.train_data.n_new());
  if (fresh.empty()) return false;
  Dataset merged = t.train_data;
  merged.append(fresh);
  train(t.net, merged, t.hyper, rng);
  return true;
}

}  // namespace advspec
