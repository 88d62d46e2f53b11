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

// Experiment configuration: a strict JSON schema (unknown keys are errors)
// plus the physics checks that must pass before anything is allocated.
// The schema is documented in docs/config.md.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpair/dfs.hpp"
#include "qpair/evolve.hpp"
#include "qpair/gates.hpp"
#include "qpair/model.hpp"

namespace qpair::runner {

enum class Scenario {
  storage,
  gate,
  efficiency_table,
  subspace_dims,
  collectivity_sweep,
  asymmetry_sweep,
};

std::string_view to_string(Scenario s);
std::optional<Scenario> scenario_from_string(std::string_view name);

/// One bath coupling entry. Entries naming the same id refer to the same
/// physical mode and must agree on frequency and cutoff.
struct ModeEntry {
  std::string id;
  double frequency = 1.0;
  int cutoff = 2;
  double g = 0.0;
  /// Pairs coupled through this entry; empty means every pair.
  std::vector<int> pairs;
};

struct TimeGrid {
  double start = 0.0;
  double stop = 1.0;
  int count = 11;

  /// Inclusive linspace.
  std::vector<double> points() const;
};

/// Partial mode sharing between pairs: each pair couples to modes_per_pair
/// modes, round(fraction * modes_per_pair) of which are common to all pairs.
struct CollectivitySpec {
  int modes_per_pair = 2;
  double frequency = 1.0;
  int cutoff = 2;
  double g = 0.2;
  std::vector<double> fractions{0.0, 0.5, 1.0};
};

struct OutputSpec {
  std::string dir = "out";
  /// Defaults to the scenario name.
  std::string prefix;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::storage;
  NoiseModel noise{{0.0, 0.0, 1.0}, 0.0};
  int pairs = 1;
  std::vector<ModeEntry> modes;
  BathInit bath_init;
  /// Logical amplitudes; drawn from `seed` when absent.
  std::optional<std::vector<Complex>> logical;
  TimeGrid times;
  std::vector<double> epsilon{0.0};
  /// Drawn from `seed` when absent.
  std::optional<GateParams> gate;
  std::uint64_t seed = 0;
  int efficiency_m_max = 6;
  std::vector<int> subspace_m{1, 2, 3};
  CollectivitySpec collectivity;
  OutputSpec output;

  std::string prefix() const;
};

/// Parses and validates. Throws ConfigError listing every violation found.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Physics and consistency checks on an already-typed config; empty when
/// valid. parse_config runs this too.
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

/// Normalized config (defaults filled in) as JSON text with stable key order.
std::string config_to_json(const ExperimentConfig& cfg);

struct ResolvedBath {
  BathSpec spec;
  /// Mode id per mode index.
  std::vector<std::string> mode_ids;
};

/// Merges entries by id (first appearance fixes the mode index).
ResolvedBath resolve_bath(const std::vector<ModeEntry>& modes, int pairs);

/// Logical input: the configured amplitudes, or a seeded random state.
LogicalState resolve_logical(const ExperimentConfig& cfg);
/// Gate angles: the configured ones, or seeded uniform draws in [0, 2 pi).
GateParams resolve_gate(const ExperimentConfig& cfg);

}  // namespace qpair::runner
