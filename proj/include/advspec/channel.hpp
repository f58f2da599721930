// Node geometry, d^-2 path loss, Gaussian power sensing, SINR outcomes.
#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>

#include "rng.hpp"

namespace advspec {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

struct NodeLayout {
  Position background{0.0, 15.0};
  Position transmitter{-10.0, 0.0};
  Position receiver{0.0, 0.0};
  Position adversary{10.0, 0.0};
};

struct ChannelModel {
  double pathloss_exponent = 2.0;
  double mean_noise_power = 1.0;
  double power_std = 1.0;
  double sinr_threshold = 3.0;
  double power_background = 1000.0;
  double power_transmitter = 1000.0;
  double power_adversary = 1000.0;
};

inline void validate_channel(const ChannelModel& m) {
  if (!(m.power_background > 0.0 && m.power_transmitter > 0.0 && m.power_adversary > 0.0))
    throw std::invalid_argument("channel: transmit powers must be strictly positive");
  if (!(m.sinr_threshold > 0.0))
    throw std::invalid_argument("channel: sinr_threshold must be strictly positive");
  if (!(m.power_std >= 0.0))
    throw std::invalid_argument("channel: power_std must be nonnegative");
}

inline double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

inline double channel_gain(const Position& a, const Position& b, const ChannelModel& m) {
  double d = distance(a, b);
  if (d <= 0.0)
    throw std::invalid_argument("channel_gain: coincident positions, gain undefined");
  return std::pow(d, -m.pathloss_exponent);
}

inline void validate_layout(const NodeLayout& l, const ChannelModel& m) {
  const Position* nodes[] = {&l.background, &l.transmitter, &l.receiver, &l.adversary};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (distance(*nodes[i], *nodes[j]) <= 0.0)
        throw std::invalid_argument("layout: two nodes share a position");
  (void)m;
}

// Received power draw: Gaussian around mean noise plus the sum of
// power x gain terms, clamped below at zero. Exactly one normal draw.
inline double sample_sensed_power(std::span<const std::pair<double, double>> active,
                                  const ChannelModel& m, Rng& rng) {
  double mean = m.mean_noise_power;
  for (const auto& [power, gain] : active) {
    if (!(power > 0.0 && gain > 0.0))
      throw std::invalid_argument("sample_sensed_power: powers and gains must be positive");
    mean += power * gain;
  }
  return std::max(0.0, rng.normal(mean, m.power_std));
}

// Signal and interference-plus-noise powers are sampled independently with
// the same clamp scheme (two normal draws per call, always), then compared
// as a SINR against the threshold.
inline bool transmission_success(double tx_power_gain, std::span<const double> interferer_power_gains,
                                 const ChannelModel& m, Rng& rng) {
  if (!(tx_power_gain > 0.0))
    throw std::invalid_argument("transmission_success: tx power*gain must be positive");
  double signal = std::max(0.0, rng.normal(tx_power_gain, m.power_std));
  double mean_denom = m.mean_noise_power;
  for (double pg : interferer_power_gains) mean_denom += pg;
  double denom = std::max(0.0, rng.normal(mean_denom, m.power_std));
  if (denom == 0.0) return signal > 0.0;
  return signal / denom >= m.sinr_threshold;
}

}  // namespace advspec
