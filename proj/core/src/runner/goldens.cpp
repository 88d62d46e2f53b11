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

#include "qpair/runner/goldens.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "qpair/runner/config.hpp"
#include "qpair/runner/csv.hpp"
#include "qpair/runner/scenario.hpp"
#include "qpair/tolerances.hpp"

namespace qpair::runner {

namespace fs = std::filesystem;

namespace {

std::vector<fs::path> golden_configs(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error("goldens: no directory " + dir.string());
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::string> csv_names(const fs::path& dir) {
  std::set<std::string> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      out.insert(entry.path().filename().string());
    }
  }
  return out;
}

fs::path scratch_dir() {
  const auto ticks = std::chrono::steady_clock::now().time_since_epoch().count();
  fs::path p = fs::temp_directory_path() / ("qpair-goldens-" + std::to_string(ticks));
  fs::create_directories(p);
  return p;
}

RunOptions options_for(const fs::path& out, int workers) {
  RunOptions o;
  o.workers = workers;
  o.out_dir = out;
  o.write_summary = false;
  return o;
}

}  // namespace

GoldenReport update_goldens(const fs::path& dir, int workers) {
  GoldenReport report;
  report.configs = golden_configs(dir);
  for (const auto& config : report.configs) {
    const std::string name = config.stem().string();
    const fs::path target = dir / name;
    try {
      const ExperimentConfig cfg = load_config(config);
      for (const auto& old : csv_names(target)) fs::remove(target / old);
      const ScenarioOutcome outcome = run_scenario(cfg, options_for(target, workers));
      if (!outcome.error.empty()) report.mismatches.push_back(name + ": " + outcome.error);
    } catch (const std::exception& e) {
      report.mismatches.push_back(name + ": " + e.what());
    }
  }
  return report;
}

GoldenReport check_goldens(const fs::path& dir, int workers) {
  GoldenReport report;
  report.configs = golden_configs(dir);
  const fs::path scratch = scratch_dir();
  for (const auto& config : report.configs) {
    const std::string name = config.stem().string();
    const fs::path expected_dir = dir / name;
    const fs::path actual_dir = scratch / name;
    try {
      const ExperimentConfig cfg = load_config(config);
      const ScenarioOutcome outcome = run_scenario(cfg, options_for(actual_dir, workers));
      if (!outcome.error.empty()) {
        report.mismatches.push_back(name + ": " + outcome.error);
        continue;
      }
      const auto expected = csv_names(expected_dir);
      const auto actual = csv_names(actual_dir);
      if (expected.empty()) report.mismatches.push_back(name + ": no stored golden CSVs");
      for (const auto& f : actual) {
        if (!expected.count(f)) report.mismatches.push_back(name + "/" + f + ": not in goldens");
      }
      for (const auto& f : expected) {
        if (!actual.count(f)) {
          report.mismatches.push_back(name + "/" + f + ": not produced");
          continue;
        }
        csv_equivalent(read_csv(expected_dir / f), read_csv(actual_dir / f), tol::kGolden,
                       report.mismatches, name + "/" + f);
      }
    } catch (const std::exception& e) {
      report.mismatches.push_back(name + ": " + e.what());
    }
  }
  std::error_code ec;
  fs::remove_all(scratch, ec);
  return report;
}

}  // namespace qpair::runner
