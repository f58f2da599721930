// Command-line front end: run a scenario config for N repetitions, reproduce
// the headline result tables, or run the defense search. CSV goes to stdout
// unless --out names a directory.
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "advspec/config.hpp"
#include "advspec/defense_game.hpp"
#include "advspec/report.hpp"
#include "advspec/simulation.hpp"

namespace {

std::filesystem::path prepare_outdir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::filesystem::create_directories(p);
  return p;
}

int cmd_run(const std::string& config_path, int reps, const std::string& outdir, bool trace) {
  advspec::ScenarioConfig cfg = advspec::load_config(config_path);
  std::vector<advspec::RepetitionRow> rows;
  std::vector<advspec::RunResult> results;
  for (int i = 0; i < reps; ++i) {
    advspec::ScenarioConfig c = cfg;
    c.master_seed = advspec::Rng(cfg.master_seed).derive(std::uint64_t(i)).seed();
    advspec::RunResult r = advspec::run_scenario(c);
    rows.push_back({c.master_seed, r.metrics});
    if (trace) results.push_back(std::move(r));
  }
  if (outdir.empty()) {
    advspec::write_run_csv(std::cout, cfg, rows);
    if (trace) {
      for (std::size_t i = 0; i < results.size(); ++i)
        advspec::write_trace_csv(std::cout, results[i]);
    }
  } else {
    auto dir = prepare_outdir(outdir);
    {
      std::ofstream out(dir / "results.csv");
      if (!out) throw std::runtime_error("cannot write " + (dir / "results.csv").string());
      advspec::write_run_csv(out, cfg, rows);
      std::cout << (dir / "results.csv").string() << "\n";
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
      auto path = dir / ("trace_" + std::to_string(rows[i].seed) + ".csv");
      std::ofstream out(path);
      if (!out) throw std::runtime_error("cannot write " + path.string());
      advspec::write_trace_csv(out, results[i]);
      std::cout << path.string() << "\n";
    }
  }
  return 0;
}

int cmd_replicate(const std::string& outdir) {
  auto dir = prepare_outdir(outdir.empty() ? "." : outdir);
  for (const std::string& path : advspec::replicate_results(dir.string()))
    std::cout << path << "\n";
  return 0;
}

int cmd_defense_search(const std::string& config_path, const std::string& outdir) {
  advspec::ScenarioConfig cfg = advspec::load_config(config_path);
  advspec::GameResult game = advspec::stackelberg_search(cfg);
  if (outdir.empty()) {
    advspec::write_defense_trace_csv(std::cout, game);
  } else {
    auto dir = prepare_outdir(outdir);
    auto path = dir / "defense_search.csv";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    advspec::write_defense_trace_csv(out, game);
    std::cout << path.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning-based channel access under adversarial attacks"};
  app.require_subcommand(1);

  std::string config_path, outdir;
  int reps = 1;
  bool trace = false;

  CLI::App* run = app.add_subcommand("run", "Run a scenario config and emit metric CSV");
  run->add_option("config", config_path, "Scenario config (JSON)")->required();
  run->add_option("--reps", reps, "Repetitions with derived seeds")->check(CLI::PositiveNumber);
  run->add_option("--out", outdir, "Output directory (default: CSV to stdout)");
  run->add_flag("--trace", trace, "Also emit per-slot traces");

  CLI::App* rep = app.add_subcommand("replicate", "Write the headline result tables");
  rep->add_option("--out", outdir, "Output directory (default: current directory)");

  CLI::App* def = app.add_subcommand("defense-search",
                                     "Two-round defense level search for a config");
  def->add_option("config", config_path, "Scenario config (JSON)")->required();
  def->add_option("--out", outdir, "Output directory (default: CSV to stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, reps, outdir, trace);
    if (rep->parsed()) return cmd_replicate(outdir);
    return cmd_defense_search(config_path, outdir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
