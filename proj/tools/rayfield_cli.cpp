// Experiment runner: reads a key-value config, executes the named
// experiment, writes CSV series plus a summary record, and exits nonzero
// when any audit fails.
//
// Exit codes: 0 all audits passed, 1 an audit failed, 2 configuration
// error, 3 runtime failure inside the experiment.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "rayfield/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"rayfield experiment runner"};

  std::string config_path;
  std::string output_dir;
  std::uint64_t seed = 0;
  bool verbose = false;
  app.add_option("-c,--config", config_path, "experiment config file")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("-o,--output-dir", output_dir,
                 "output directory (overrides the config's output_dir)");
  auto* seed_opt = app.add_option("-s,--seed", seed, "seed override for randomized profiles");
  app.add_flag("-v,--verbose", verbose, "print per-audit detail");

  CLI11_PARSE(app, argc, argv);

  rayfield::ExperimentConfig cfg;
  try {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot read config '" << config_path << "'\n";
      return 2;
    }
    std::ostringstream text;
    text << in.rdbuf();
    std::optional<std::uint64_t> seed_override;
    if (seed_opt->count() > 0) seed_override = seed;
    cfg = rayfield::parse_experiment_config(text.str(), seed_override);
  } catch (const rayfield::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (!output_dir.empty()) cfg.output_dir = output_dir;

  try {
    const rayfield::ExperimentResult res = rayfield::run_experiment(cfg, cfg.output_dir);
    std::cout << cfg.name << " [" << rayfield::experiment_name(cfg.experiment) << "]: "
              << (res.all_passed() ? "PASS" : "FAIL") << " (" << res.audits.size()
              << " audits, " << res.wall_ms << " ms)\n";
    if (verbose) {
      for (const rayfield::AuditRecord& a : res.audits)
        std::cout << "  audit " << a.name << ": " << (a.passed ? "PASS" : "FAIL")
                  << " value=" << rayfield::format_double(a.value)
                  << " threshold=" << rayfield::format_double(a.threshold) << "\n";
      for (const std::string& f : res.outputs) std::cout << "  wrote " << f << "\n";
      std::cout << "  wrote " << res.summary_path << "\n";
    }
    return res.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
