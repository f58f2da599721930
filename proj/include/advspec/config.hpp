// Scenario configuration: one struct covering geometry, channel, traffic,
// attack, defense, and classifier settings, with JSON load/save that rejects
// unknown keys and echoes every field back out for reproducible replays.
#pragma once

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "adversary.hpp"
#include "channel.hpp"
#include "traffic.hpp"
#include "transmitter.hpp"

namespace advspec {

struct PriorityConfig {
  bool enabled = false;
  double start_prob = 0.2;
  int burst_len = 5;
  int backoff_len = 2;
};

struct NnetConfig {
  std::vector<double> learning_rates{0.1, 0.03, 0.01};
  int hidden_layers = 3;
  int neurons_per_layer = 100;
  int batch_size = 100;
  int training_steps = 1000;
  double tau = 0.5;
};

struct ScenarioConfig {
  std::uint64_t master_seed = 1;
  int n_new = 10;
  int train_slots = 1000;
  int test_slots = 500;
  int retrain_slots = 1000;
  bool retrain_enabled = false;
  double sensing_to_transmission_ratio = 1.0 / 9.0;
  NodeLayout layout;
  ChannelModel channel;
  BackgroundTraffic background;  // arrival_rate / activation_prob act as config
  PriorityConfig priority;
  AttackConfig attack;
  DefensePolicy defense;
  NnetConfig nnet;
};

inline std::vector<Hyperparams> hyper_grid(const NnetConfig& n) {
  std::vector<Hyperparams> grid;
  for (double lr : n.learning_rates) {
    Hyperparams h;
    h.learning_rate = lr;
    h.hidden_layers = n.hidden_layers;
    h.neurons_per_layer = n.neurons_per_layer;
    h.batch_size = n.batch_size;
    h.training_steps = n.training_steps;
    h.tau = n.tau;
    grid.push_back(h);
  }
  return grid;
}

inline void validate_config(const ScenarioConfig& c) {
  validate_channel(c.channel);
  validate_layout(c.layout, c.channel);
  validate_background(c.background);
  if (c.priority.enabled) {
    PriorityTraffic p;
    p.start_prob = c.priority.start_prob;
    p.burst_len = c.priority.burst_len;
    p.backoff_len = c.priority.backoff_len;
    validate_priority(p);
  }
  validate_defense(c.defense, c.nnet.tau);
  if (c.n_new < 1) throw std::invalid_argument("config: n_new must be positive");
  if (c.train_slots < 2 * c.n_new + 10)
    throw std::invalid_argument("config: train_slots too small for a training split");
  if (c.test_slots < c.n_new)
    throw std::invalid_argument("config: test_slots must cover at least one window");
  if (c.retrain_enabled && c.retrain_slots < c.n_new)
    throw std::invalid_argument("config: retrain_slots must cover at least one window");
  if (c.attack.kind != AttackKind::none && c.attack.observe_slots < 2 * c.n_new + 10)
    throw std::invalid_argument("config: attack.observe_slots too small for surrogate training");
  if (c.attack.kind != AttackKind::none && c.attack.phase == AttackPhase::retraining &&
      !c.retrain_enabled)
    throw std::invalid_argument(
        "config: attack.phase \"retraining\" requires retrain_enabled");
  if (!(c.sensing_to_transmission_ratio > 0.0 && c.sensing_to_transmission_ratio < 1.0))
    throw std::invalid_argument("config: sensing_to_transmission_ratio must lie in (0,1)");
  if (c.nnet.learning_rates.empty())
    throw std::invalid_argument("config: nnet.learning_rates must not be empty");
  for (const Hyperparams& h : hyper_grid(c.nnet)) validate_hyperparams(h);
}

inline AttackKind parse_attack_kind(const std::string& s) {
  if (s == "none") return AttackKind::none;
  if (s == "jamming") return AttackKind::jamming;
  if (s == "spectrum_poisoning") return AttackKind::spectrum_poisoning;
  if (s == "priority_violation") return AttackKind::priority_violation;
  throw std::invalid_argument("config: unknown attack.kind \"" + s + "\"");
}

inline AttackPhase parse_attack_phase(const std::string& s) {
  if (s == "test") return AttackPhase::test;
  if (s == "retraining") return AttackPhase::retraining;
  throw std::invalid_argument("config: unknown attack.phase \"" + s + "\"");
}

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& j, const std::string& path,
                                const std::set<std::string>& allowed) {
  if (!j.is_object())
    throw std::invalid_argument("config: expected an object at \"" + path + "\"");
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw std::invalid_argument("config: unknown key \"" +
                                  (path.empty() ? item.key() : path + "." + item.key()) + "\"");
}

template <typename T>
void read_field(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

inline void read_position(const nlohmann::json& j, const char* key, Position& out) {
  if (!j.contains(key)) return;
  const nlohmann::json& p = j.at(key);
  if (!p.is_array() || p.size() != 2)
    throw std::invalid_argument(std::string("config: layout.") + key + " must be [x, y]");
  out.x = p.at(0).get<double>();
  out.y = p.at(1).get<double>();
}

}  // namespace detail

inline ScenarioConfig config_from_json(const nlohmann::json& j) {
  using detail::read_field;
  detail::reject_unknown_keys(
      j, "",
      {"master_seed", "n_new", "train_slots", "test_slots", "retrain_slots", "retrain_enabled",
       "sensing_to_transmission_ratio", "layout", "channel", "background", "priority", "attack",
       "defense", "nnet"});
  ScenarioConfig c;
  read_field(j, "master_seed", c.master_seed);
  read_field(j, "n_new", c.n_new);
  read_field(j, "train_slots", c.train_slots);
  read_field(j, "test_slots", c.test_slots);
  read_field(j, "retrain_slots", c.retrain_slots);
  read_field(j, "retrain_enabled", c.retrain_enabled);
  read_field(j, "sensing_to_transmission_ratio", c.sensing_to_transmission_ratio);
  if (j.contains("layout")) {
    const auto& l = j.at("layout");
    detail::reject_unknown_keys(l, "layout",
                                {"background", "transmitter", "receiver", "adversary"});
    detail::read_position(l, "background", c.layout.background);
    detail::read_position(l, "transmitter", c.layout.transmitter);
    detail::read_position(l, "receiver", c.layout.receiver);
    detail::read_position(l, "adversary", c.layout.adversary);
  }
  if (j.contains("channel")) {
    const auto& ch = j.at("channel");
    detail::reject_unknown_keys(ch, "channel",
                                {"pathloss_exponent", "mean_noise_power", "power_std",
                                 "sinr_threshold", "power_background", "power_transmitter",
                                 "power_adversary"});
    read_field(ch, "pathloss_exponent", c.channel.pathloss_exponent);
    read_field(ch, "mean_noise_power", c.channel.mean_noise_power);
    read_field(ch, "power_std", c.channel.power_std);
    read_field(ch, "sinr_threshold", c.channel.sinr_threshold);
    read_field(ch, "power_background", c.channel.power_background);
    read_field(ch, "power_transmitter", c.channel.power_transmitter);
    read_field(ch, "power_adversary", c.channel.power_adversary);
  }
  if (j.contains("background")) {
    const auto& b = j.at("background");
    detail::reject_unknown_keys(b, "background", {"arrival_rate", "activation_prob"});
    read_field(b, "arrival_rate", c.background.arrival_rate);
    read_field(b, "activation_prob", c.background.activation_prob);
  }
  if (j.contains("priority")) {
    const auto& p = j.at("priority");
    detail::reject_unknown_keys(p, "priority",
                                {"enabled", "start_prob", "burst_len", "backoff_len"});
    read_field(p, "enabled", c.priority.enabled);
    read_field(p, "start_prob", c.priority.start_prob);
    read_field(p, "burst_len", c.priority.burst_len);
    read_field(p, "backoff_len", c.priority.backoff_len);
  }
  if (j.contains("attack")) {
    const auto& a = j.at("attack");
    detail::reject_unknown_keys(a, "attack", {"kind", "phase", "observe_slots"});
    if (a.contains("kind")) c.attack.kind = parse_attack_kind(a.at("kind").get<std::string>());
    if (a.contains("phase")) c.attack.phase = parse_attack_phase(a.at("phase").get<std::string>());
    read_field(a, "observe_slots", c.attack.observe_slots);
  }
  if (j.contains("defense")) {
    const auto& d = j.at("defense");
    detail::reject_unknown_keys(d, "defense", {"enabled", "p_d"});
    read_field(d, "enabled", c.defense.enabled);
    read_field(d, "p_d", c.defense.p_d);
  }
  if (j.contains("nnet")) {
    const auto& n = j.at("nnet");
    detail::reject_unknown_keys(n, "nnet",
                                {"learning_rates", "hidden_layers", "neurons_per_layer",
                                 "batch_size", "training_steps", "tau"});
    read_field(n, "learning_rates", c.nnet.learning_rates);
    read_field(n, "hidden_layers", c.nnet.hidden_layers);
    read_field(n, "neurons_per_layer", c.nnet.neurons_per_layer);
    read_field(n, "batch_size", c.nnet.batch_size);
    read_field(n, "training_steps", c.nnet.training_steps);
    read_field(n, "tau", c.nnet.tau);
  }
  validate_config(c);
  return c;
}

inline nlohmann::json config_to_json(const ScenarioConfig& c) {
  nlohmann::json j;
  j["master_seed"] = c.master_seed;
  j["n_new"] = c.n_new;
  j["train_slots"] = c.train_slots;
  j["test_slots"] = c.test_slots;
  j["retrain_slots"] = c.retrain_slots;
  j["retrain_enabled"] = c.retrain_enabled;
  j["sensing_to_transmission_ratio"] = c.sensing_to_transmission_ratio;
  j["layout"] = {{"background", {c.layout.background.x, c.layout.background.y}},
                 {"transmitter", {c.layout.transmitter.x, c.layout.transmitter.y}},
                 {"receiver", {c.layout.receiver.x, c.layout.receiver.y}},
                 {"adversary", {c.layout.adversary.x, c.layout.adversary.y}}};
  j["channel"] = {{"pathloss_exponent", c.channel.pathloss_exponent},
                  {"mean_noise_power", c.channel.mean_noise_power},
                  {"power_std", c.channel.power_std},
                  {"sinr_threshold", c.channel.sinr_threshold},
                  {"power_background", c.channel.power_background},
                  {"power_transmitter", c.channel.power_transmitter},
                  {"power_adversary", c.channel.power_adversary}};
  j["background"] = {{"arrival_rate", c.background.arrival_rate},
                     {"activation_prob", c.background.activation_prob}};
  j["priority"] = {{"enabled", c.priority.enabled},
                   {"start_prob", c.priority.start_prob},
                   {"burst_len", c.priority.burst_len},
                   {"backoff_len", c.priority.backoff_len}};
  j["attack"] = {{"kind", to_string(c.attack.kind)},
                 {"phase", to_string(c.attack.phase)},
                 {"observe_slots", c.attack.observe_slots}};
  j["defense"] = {{"enabled", c.defense.enabled}, {"p_d", c.defense.p_d}};
  j["nnet"] = {{"learning_rates", c.nnet.learning_rates},
               {"hidden_layers", c.nnet.hidden_layers},
               {"neurons_per_layer", c.nnet.neurons_per_layer},
               {"batch_size", c.nnet.batch_size},
               {"training_steps", c.nnet.training_steps},
               {"tau", c.nnet.tau}};
  return j;
}

inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open \"" + path + "\"");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("config: parse error in \"" + path + "\": " + e.what());
  }
  return config_from_json(j);
}

inline void save_config(const ScenarioConfig& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("config: cannot write \"" + path + "\"");
  out << config_to_json(c).dump(2) << '\n';
}

}  // namespace advspec
