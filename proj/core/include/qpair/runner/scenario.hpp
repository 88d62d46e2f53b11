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

#pragma once

// Executes one configured scenario: independent runs go to a worker pool,
// and a single collector writes CSVs and the JSON summary in configuration
// order so outputs do not depend on scheduling.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qpair/runner/config.hpp"

namespace qpair::runner {

struct RunOptions {
  int workers = 1;
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::uint64_t> seed;
  bool write_summary = true;
};

struct Assertion {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  /// One of "<=", ">=", "==", "<", "increasing".
  std::string comparison;
  bool pass = false;
};

struct ScenarioOutcome {
  bool passed = false;
  /// Set when a runtime error stopped the scenario after some files were written.
  bool partial = false;
  std::string error;
  std::vector<Assertion> assertions;
  std::vector<std::filesystem::path> files;
  std::optional<std::filesystem::path> summary;

  /// 0 on success, 1 on a failed assertion, 2 on a runtime error.
  int exit_code() const noexcept;
};

ScenarioOutcome run_scenario(ExperimentConfig cfg, const RunOptions& options);

}  // namespace qpair::runner
