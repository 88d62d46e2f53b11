// Copyright 2026 The qpair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qpair: batch runner for the pairing simulations.
//
//   qpair run <config>        run one scenario, write CSVs and a summary
//   qpair validate <config>   parse and check a config, print the normalized form
//   qpair goldens [--update]  compare (or rewrite) the golden outputs
//
// Exit codes: 0 ok, 1 assertion failure or golden mismatch, 2 runtime or
// config error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qpair/errors.hpp"
#include "qpair/runner/config.hpp"
#include "qpair/runner/csv.hpp"
#include "qpair/runner/goldens.hpp"
#include "qpair/runner/scenario.hpp"

namespace {

void print_config_error(const qpair::ConfigError& e) {
  std::cerr << "invalid config (" << e.violations().size() << " problem"
            << (e.violations().size() == 1 ? "" : "s") << "):\n";
  for (const auto& v : e.violations()) std::cerr << "  - " << v << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qpair: exact simulation of paired-qubit storage and gates"};
  app.require_subcommand(1);
  app.fallthrough();

  int workers = 1;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  app.add_option("--workers", workers, "Parallel runs within a sweep")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out", out_dir, "Output directory (overrides the config)");
  app.add_option("--seed", seed, "Seed for random logical states and gate angles");

  std::string run_path;
  auto* run = app.add_subcommand("run", "Run the scenario described by a config file");
  run->add_option("config", run_path, "Config file")->required()->check(CLI::ExistingFile);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a config file without running it");
  validate->add_option("config", validate_path, "Config file")->required()->check(CLI::ExistingFile);

  bool update = false;
  std::string golden_dir = "tests/goldens";
  auto* goldens = app.add_subcommand("goldens", "Check or regenerate golden outputs");
  goldens->add_flag("--update", update, "Rewrite the stored CSVs");
  goldens->add_option("--dir", golden_dir, "Golden directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      const auto cfg = qpair::runner::load_config(validate_path);
      std::cout << qpair::runner::config_to_json(cfg) << '\n';
      return 0;
    }
    if (*run) {
      const auto cfg = qpair::runner::load_config(run_path);
      qpair::runner::RunOptions opts;
      opts.workers = workers;
      if (!out_dir.empty()) opts.out_dir = out_dir;
      opts.seed = seed;
      const auto outcome = qpair::runner::run_scenario(cfg, opts);
      for (const auto& f : outcome.files) std::cout << "wrote " << f.string() << '\n';
      if (outcome.summary) std::cout << "wrote " << outcome.summary->string() << '\n';
      for (const auto& a : outcome.assertions) {
        std::cout << (a.pass ? "PASS " : "FAIL ") << a.name << ": ";
        if (a.comparison == "increasing") {
          std::cout << "smallest step " << qpair::runner::format_double(a.value) << " > 0\n";
        } else {
          std::cout << qpair::runner::format_double(a.value) << ' ' << a.comparison << ' '
                    << qpair::runner::format_double(a.threshold) << '\n';
        }
      }
      if (!outcome.error.empty()) {
        std::cerr << "error: " << outcome.error << (outcome.partial ? " (partial outputs)" : "")
                  << '\n';
      }
      return outcome.exit_code();
    }
    if (*goldens) {
      const auto report = update ? qpair::runner::update_goldens(golden_dir, workers)
                                 : qpair::runner::check_goldens(golden_dir, workers);
      std::cout << (update ? "updated " : "checked ") << report.configs.size()
                << " golden config(s)\n";
      for (const auto& m : report.mismatches) std::cerr << "  " << m << '\n';
      if (!report.ok()) return update ? 2 : 1;
      return 0;
    }
  } catch (const qpair::ConfigError& e) {
    print_config_error(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
