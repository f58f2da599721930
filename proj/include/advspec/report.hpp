// CSV reporting: per-repetition metric rows with mean/std summaries, per-slot
// traces, and the preset result tables plus defense-search trace.
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "advspec/config.hpp"
#include "advspec/defense_game.hpp"
#include "advspec/presets.hpp"
#include "advspec/simulation.hpp"

namespace advspec {

struct RepetitionRow {
  std::uint64_t seed = 0;
  Metrics metrics;
};

// Serial repetitions, one derived seed per index, so a report is a pure
// function of (config, reps).
inline std::vector<RepetitionRow> run_repetitions(const ScenarioConfig& cfg, int reps) {
  if (reps < 1) throw std::invalid_argument("run_repetitions: reps must be positive");
  std::vector<RepetitionRow> rows;
  rows.reserve(static_cast<std::size_t>(reps));
  for (int i = 0; i < reps; ++i) {
    ScenarioConfig c = cfg;
    c.master_seed = Rng(cfg.master_seed).derive(std::uint64_t(i)).seed();
    rows.push_back({c.master_seed, run_scenario(c).metrics});
  }
  return rows;
}

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct ColumnStats {
  double mean = 0.0, stddev = 0.0;
  bool defined = false;
};

// Population standard deviation; a single repetition reports spread 0.
inline ColumnStats column_stats(const std::vector<double>& xs) {
  ColumnStats s;
  if (xs.empty()) return s;
  s.defined = true;
  for (double x : xs) s.mean += x;
  s.mean /= double(xs.size());
  for (double x : xs) s.stddev += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(s.stddev / double(xs.size()));
  return s;
}

}  // namespace detail

inline constexpr const char* kRunCsvHeader =
    "seed,attack_kind,attack_phase,p_d,e_fa,e_md,norm_throughput,success_ratio,"
    "attack_count,attack_energy";

// One row per repetition, then labeled mean and std rows. success_ratio rows
// without any transmission attempt print nan and stay out of the summary.
inline void write_run_csv(std::ostream& out, const ScenarioConfig& cfg,
                          std::span<const RepetitionRow> rows) {
  using detail::fmt;
  out << kRunCsvHeader << "\n";
  const std::string kind = to_string(cfg.attack.kind);
  const std::string phase = to_string(cfg.attack.phase);
  const double p_d = cfg.defense.enabled ? cfg.defense.p_d : 0.0;
  const std::string prefix = "," + kind + "," + phase + "," + fmt(p_d) + ",";

  std::vector<double> fa, md, thr, succ, count, energy;
  for (const RepetitionRow& r : rows) {
    const Metrics& m = r.metrics;
    out << r.seed << prefix << fmt(m.e_fa) << "," << fmt(m.e_md) << ","
        << fmt(m.normalized_throughput) << ","
        << (m.success_ratio ? fmt(*m.success_ratio) : "nan") << "," << m.attack_count << ","
        << fmt(m.attack_energy) << "\n";
    fa.push_back(m.e_fa);
    md.push_back(m.e_md);
    thr.push_back(m.normalized_throughput);
    if (m.success_ratio) succ.push_back(*m.success_ratio);
    count.push_back(double(m.attack_count));
    energy.push_back(double(m.attack_energy));
  }

  auto summary = [&](const char* label, auto pick) {
    out << label << prefix;
    auto cell = [&](const std::vector<double>& xs) {
      detail::ColumnStats s = detail::column_stats(xs);
      out << (s.defined ? fmt(pick(s)) : "nan");
    };
    cell(fa); out << ",";
    cell(md); out << ",";
    cell(thr); out << ",";
    cell(succ); out << ",";
    cell(count); out << ",";
    cell(energy); out << "\n";
  };
  summary("mean", [](const detail::ColumnStats& s) { return s.mean; });
  summary("std", [](const detail::ColumnStats& s) { return s.stddev; });
}

inline std::string run_csv(const ScenarioConfig& cfg, std::span<const RepetitionRow> rows) {
  std::ostringstream out;
  write_run_csv(out, cfg, rows);
  return std::move(out).str();
}

// Per-slot dump of one phase, mostly for eyeballing attack timing.
inline void write_trace_csv(std::ostream& out, const RunResult& result) {
  out << "phase,slot,truth,sensed_t,sensed_a,t_decision,attack_action,outcome,ack,defense_flip\n";
  auto dump = [&](const char* phase, const std::vector<SlotRecord>& records) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      const SlotRecord& r = records[i];
      out << phase << "," << i << "," << to_string(r.truth) << "," << detail::fmt(r.sensed_t)
          << "," << detail::fmt(r.sensed_a) << "," << to_string(r.t_decision) << ","
          << to_string(r.attack_action) << "," << to_string(r.outcome) << "," << int(r.ack)
          << "," << int(r.defense_flip) << "\n";
    }
  };
  dump("training", result.training_records);
  dump("observation", result.observation_records);
  dump("retraining", result.retraining_records);
  dump("test", result.test_records);
}

// Result tables in the shape of the scenario families: one CSV per family
// (baseline, test-phase attack, retraining attack), metrics averaged over
// `reps` derived seeds, plus the defense-search trace on the poisoning and
// priority scenarios.
inline void write_table_csv(std::ostream& out,
                            std::span<const std::pair<std::string, ScenarioConfig>> rows,
                            int reps) {
  using detail::fmt;
  out << "scenario,e_fa,e_md,norm_throughput,success_ratio\n";
  for (const auto& [name, cfg] : rows) {
    std::vector<double> fa, md, thr, succ;
    for (const RepetitionRow& r : run_repetitions(cfg, reps)) {
      fa.push_back(r.metrics.e_fa);
      md.push_back(r.metrics.e_md);
      thr.push_back(r.metrics.normalized_throughput);
      if (r.metrics.success_ratio) succ.push_back(*r.metrics.success_ratio);
    }
    auto mean = [&](const std::vector<double>& xs) {
      detail::ColumnStats s = detail::column_stats(xs);
      return s.defined ? fmt(s.mean) : std::string("nan");
    };
    out << name << "," << mean(fa) << "," << mean(md) << "," << mean(thr) << "," << mean(succ)
        << "\n";
  }
}

inline void write_defense_trace_csv(std::ostream& out, const GameResult& game) {
  out << "point,p_d,norm_throughput\n";
  for (std::size_t i = 0; i < game.evaluated.size(); ++i)
    out << (i + 1) << "," << detail::fmt(game.evaluated[i].first) << ","
        << detail::fmt(game.evaluated[i].second) << "\n";
  out << "chosen," << detail::fmt(game.chosen_p_d) << "," << detail::fmt(game.chosen_throughput)
      << "\n";
}

namespace detail {

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace detail

// Reproduces the headline experiment grid: three per-family tables plus one
// defense-search trace, written under outdir.
inline std::vector<std::string> replicate_results(const std::string& outdir, int reps = 5,
                                                  std::uint64_t master_seed = 1) {
  auto preset_at = [&](ScenarioConfig cfg) {
    cfg.master_seed = master_seed;
    return cfg;
  };
  using Row = std::pair<std::string, ScenarioConfig>;
  const std::vector<std::pair<std::string, std::vector<Row>>> tables = {
      {"jamming_attacks.csv",
       {{"no_attack", preset_at(preset_no_attack())},
        {"jamming_test", preset_at(preset_jamming_test())},
        {"jamming_retraining", preset_at(preset_jamming_retraining())}}},
      {"poisoning_attacks.csv",
       {{"no_attack", preset_at(preset_no_attack())},
        {"poisoning_test", preset_at(preset_poisoning_test())},
        {"poisoning_retraining", preset_at(preset_poisoning_retraining())}}},
      {"priority_attacks.csv",
       {{"priority_no_attack", preset_at(preset_priority_no_attack())},
        {"priority_violation_test", preset_at(preset_priority_violation_test())},
        {"priority_violation_retraining", preset_at(preset_priority_violation_retraining())}}},
  };
  std::vector<std::string> written;
  for (const auto& [file, rows] : tables) {
    const std::string path = outdir + "/" + file;
    auto out = detail::open_out(path);
    write_table_csv(out, rows, reps);
    written.push_back(path);
  }
  const std::string path = outdir + "/defense_search.csv";
  auto out = detail::open_out(path);
  write_defense_trace_csv(out, stackelberg_search(preset_at(preset_priority_violation_test())));
  written.push_back(path);
  return written;
}

}  // namespace advspec
