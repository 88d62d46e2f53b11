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

// Coherence-preserving subspaces, logical encodings and the rotated-CNOT
// encode/decode circuit.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qpair/qops.hpp"

namespace qpair {

/// Zero-eigenvalue eigenspace of S_1 + ... + S_2m on a 2m-qubit cluster.
struct DfsSubspace {
  int cluster_size = 0;
  /// Orthonormal columns of dimension 2^cluster_size.
  Matrix basis;
  double eigenvalue = 0.0;

  int logical_dim() const noexcept { return static_cast<int>(basis.cols()); }
};

inline constexpr int kMaxClusterHalf = 6;

/// Built in the S eigenbasis: the zero eigenspace is spanned by the product
/// states with exactly m factors in |+1> and m in |-1>. Ordered by ascending
/// S-frame bit pattern. Throws InvalidDimension unless 1 <= m <= 6.
DfsSubspace coherence_preserving_subspace(const NoiseVector& nv, int m);

/// C(2m, m); exact for m <= 33, throws std::overflow_error beyond.
std::uint64_t central_binomial(int m);
double log2_central_binomial(int m);

struct Efficiency {
  double eta_exact = 0.0;   // log2 C(2m,m) / (2m)
  double eta_approx = 0.0;  // 1 - log2(pi m) / (4m)
};

Efficiency efficiency(int m);

struct Gate {
  enum class Kind { rotation, cnot };

  Kind kind = Kind::rotation;
  /// rotation: {qubit}; cnot: {control, target}.
  std::vector<int> targets;
  /// Single-qubit unitary (rotation only).
  Matrix matrix;
  /// Basis index of the control that triggers the flip (cnot only).
  int control_state = 1;
};

/// Ordered gate list on `width` leading qubits of a state vector. Any factors
/// after the register (bath modes) are left untouched.
class Circuit {
 public:
  explicit Circuit(int width);

  int width() const noexcept { return width_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }

  void add_rotation(int qubit, const Matrix& u);
  void add_cnot(int control, int target, int control_state);

  /// Applies the gates in order. The state dimension must be a multiple of
  /// 2^width.
  Vector apply(Vector state) const;
  Matrix unitary() const;

  /// One gate per line: "qubits <w>" header, then
  ///   rotation <q> <re00> <im00> <re01> <im01> <re10> <im10> <re11> <im11>
  ///   cnot <control> <target> <control_state>
  std::string to_text() const;
  static Circuit from_text(std::string_view text);

 private:
  void check_qubit(int q) const;

  int width_;
  std::vector<Gate> gates_;
};

/// Conjugated CNOT per pair: rotate both qubits out of the S eigenbasis,
/// CNOT from data to ancilla firing on |+1>, rotate back.
Circuit build_encode_circuit(int pairs, const NoiseVector& nv);

/// Amplitudes over L logical qubits in the S eigenbasis; index bit 0 means
/// |+1>, logical qubit 0 is the most significant bit.
struct LogicalState {
  Vector amplitudes;

  int qubits() const;
  /// Normalizes; throws InvalidDimension if the length is not a power of two
  /// or the vector is zero.
  static LogicalState from_amplitudes(Vector amplitudes);
  static LogicalState random(int qubits, std::mt19937_64& rng);
};

/// Data qubits in the logical state, ancillas in |+1>, then the circuit.
Vector encode(const LogicalState& state, const NoiseVector& nv, int pairs);

/// Inverse of encode. Throws LeakageError when the input has norm above
/// tol::kDecodeLeakage outside the pair subspace.
LogicalState decode(const Vector& encoded, const NoiseVector& nv, int pairs);

/// Columns are encode(|k>) for k = 0 .. 2^pairs - 1.
Matrix pair_dfs_basis(const NoiseVector& nv, int pairs);

/// Norm of the component of `state` outside span(basis) (x) bath, where the
/// register occupies the leading factors of `state`.
double dfs_leakage(const Vector& state, const Matrix& basis);

}  // namespace qpair
