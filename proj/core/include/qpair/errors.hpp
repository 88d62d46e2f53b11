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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qpair {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class InvalidNoise : public Error {
 public:
  using Error::Error;
};

/// The drive ratio g1:g2:omega0 = lambda1:lambda2:lambda3 has no finite
/// solution (lambda3 = 0 while omega0 != 0).
class UndrivableModel : public Error {
 public:
  using Error::Error;
};

class LayoutMismatch : public Error {
 public:
  using Error::Error;
};

class NonHermitian : public Error {
 public:
  using Error::Error;
};

class NonUnitary : public Error {
 public:
  using Error::Error;
};

/// Raised by decode when the input carries weight outside the pair subspace.
class LeakageError : public Error {
 public:
  LeakageError(const std::string& what, double leaked_norm)
      : Error(what), leaked_norm_(leaked_norm) {}
  double leaked_norm() const noexcept { return leaked_norm_; }

 private:
  double leaked_norm_;
};

/// Carries every schema or physics violation found in a config, not just the
/// first one.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const noexcept {
    return violations_;
  }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
      if (!out.empty()) out += "; ";
      out += s;
    }
    return out;
  }
  std::vector<std::string> violations_;
};

}  // namespace qpair
