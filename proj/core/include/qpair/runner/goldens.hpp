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

// Golden outputs: every <name>.json config in a directory has its expected
// CSVs stored under <name>/ next to it.

#include <filesystem>
#include <string>
#include <vector>

namespace qpair::runner {

struct GoldenReport {
  std::vector<std::filesystem::path> configs;
  std::vector<std::string> mismatches;
  bool ok() const noexcept { return mismatches.empty(); }
};

/// Reruns every golden config and rewrites its expected CSVs.
GoldenReport update_goldens(const std::filesystem::path& dir, int workers = 1);

/// Reruns every golden config into a scratch directory and compares against
/// the stored CSVs at tol::kGolden.
GoldenReport check_goldens(const std::filesystem::path& dir, int workers = 1);

}  // namespace qpair::runner
