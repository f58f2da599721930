// Stackelberg game over the defense level p_d. The leader (transmitter)
// commits to flipping high-confidence decisions with probability p_d; the
// follower (adversary) rebuilds its surrogate against the defended behavior;
// the leader's payoff is test-phase normalized throughput. The search is a
// coarse 5% sweep followed by a 1% sweep around the coarse winner.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "advspec/config.hpp"
#include "advspec/simulation.hpp"

namespace advspec {

struct GameGrids {
  double round1_start = 0.05;
  double round1_stop = 0.25;
  double round1_step = 0.05;
  double round2_step = 0.01;
  int round2_radius = 3;  // neighbors at winner +/- {1..radius} * round2_step
};

inline void validate_grids(const GameGrids& g) {
  if (!(g.round1_step > 0.0))
    throw std::invalid_argument("game grids: round1_step must be positive");
  if (!(g.round1_start >= 0.0 && g.round1_stop <= 1.0 && g.round1_start <= g.round1_stop))
    throw std::invalid_argument("game grids: round one range must satisfy 0 <= start <= stop <= 1");
  if (!(g.round2_step > 0.0))
    throw std::invalid_argument("game grids: round2_step must be positive");
  if (g.round2_radius < 0)
    throw std::invalid_argument("game grids: round2_radius must be non-negative");
}

struct GameResult {
  std::vector<std::pair<double, double>> evaluated;  // (p_d, throughput) in evaluation order
  double chosen_p_d = 0.0;
  double chosen_throughput = 0.0;
};

// One leader move: the whole pipeline (train, defended observation, surrogate
// fit, attacked and defended test) at defense level p_d. Each evaluation
// reseeds from (master_seed, p_d), so calls are independent but reproducible.
inline double evaluate_pd(const ScenarioConfig& scenario, double p_d) {
  if (!(p_d >= 0.0 && p_d <= 1.0))
    throw std::invalid_argument("evaluate_pd: p_d must lie in [0,1]");
  if (scenario.attack.kind == AttackKind::none)
    throw std::invalid_argument("evaluate_pd: scenario has no attack to defend against");
  ScenarioConfig c = scenario;
  c.defense.enabled = true;
  c.defense.p_d = p_d;
  c.master_seed = Rng(scenario.master_seed)
                      .derive(stream::defense)
                      .derive(std::uint64_t(std::llround(p_d * 10000.0)))
                      .seed();
  return run_scenario(c).metrics.normalized_throughput;
}

// Two-round maximization of the evaluator over p_d. Ties break toward the
// smaller p_d (cheaper defense). The evaluator form lets tests inject a
// synthetic payoff surface in place of full pipeline runs.
inline GameResult stackelberg_search(const std::function<double(double)>& evaluate,
                                     const GameGrids& grids = {}) {
  validate_grids(grids);
  GameResult result;
  auto run_point = [&](double p) {
    result.evaluated.emplace_back(p, evaluate(p));
    const auto& [pd, v] = result.evaluated.back();
    if (result.evaluated.size() == 1 || v > result.chosen_throughput ||
        (v == result.chosen_throughput && pd < result.chosen_p_d)) {
      result.chosen_p_d = pd;
      result.chosen_throughput = v;
    }
  };

  double round1_best_p = 0.0, round1_best_v = 0.0;
  bool have_round1 = false;
  const double eps = grids.round1_step * 1e-9;
  for (double p = grids.round1_start; p <= grids.round1_stop + eps; p += grids.round1_step) {
    run_point(p);
    const auto& [pd, v] = result.evaluated.back();
    if (!have_round1 || v > round1_best_v) {
      have_round1 = true;
      round1_best_p = pd;
      round1_best_v = v;
    }
  }
  if (!have_round1) throw std::invalid_argument("stackelberg_search: round one grid is empty");

  double last = -1.0;
  for (int j = -grids.round2_radius; j <= grids.round2_radius; ++j) {
    if (j == 0) continue;
    double p = round1_best_p + double(j) * grids.round2_step;
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    if (p == last) continue;  // clamping can fold neighbors together
    last = p;
    run_point(p);
  }
  return result;
}

inline GameResult stackelberg_search(const ScenarioConfig& scenario, const GameGrids& grids = {}) {
  return stackelberg_search([&](double p) { return evaluate_pd(scenario, p); }, grids);
}

}  // namespace advspec
