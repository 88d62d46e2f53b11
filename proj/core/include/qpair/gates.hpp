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

// The controlled-V gate family, its lift onto two qubit pairs, commutation
// checks against the pair S-sums and principal-log gate Hamiltonians.
//
// The 2x2 V literal is written in the basis order (|-1>, |+1>) and the 4x4
// pair form in (|-1,-1>, |-1,+1>, |+1,-1>, |+1,+1>). Internally index 0 is
// |+1>, so both are reversed before they are placed in an operator.

#include <span>
#include <utility>
#include <vector>

#include "qpair/qops.hpp"

namespace qpair {

/// Universality needs the three angles to be irrational multiples of pi and
/// of each other; that is not checked.
struct GateParams {
  double alpha = 0.0;
  double theta_gate = 0.0;
  double phi = 0.0;
};

/// [[e^{ia} cos t, -i e^{i(a-p)} sin t], [-i e^{i(a+p)} sin t, e^{ia} cos t]].
Matrix v_matrix(const GateParams& p);

/// |-1><-1| (x) I + |+1><+1| (x) V in logical (S-frame) coordinates.
Matrix u_bare_gate(const GateParams& p);
/// Same gate on two physical qubits for noise direction nv.
Matrix u_bare_gate(const GateParams& p, const NoiseVector& nv);

/// Two-pair gate in S-frame coordinates (16x16, pair 1 on the leading two
/// qubits). Control pair in |+1,-1> applies V to pair 2's {|-1,+1>, |+1,-1>}
/// block; every other control state applies the identity.
Matrix u_pair_gate(const GateParams& p);
/// Same gate on four physical qubits for noise direction nv.
Matrix u_pair_gate(const GateParams& p, const NoiseVector& nv);

struct PairCommutator {
  std::pair<int, int> qubits;
  /// Best scalar fit n with C ~ n I (tr C / dim).
  Complex scalar{0.0, 0.0};
  /// max |C - n I|.
  double residual = 0.0;
  /// Frobenius norm of C = [op, S_l + S_l'].
  double norm = 0.0;
  bool is_scalar = false;
};

struct CommutationReport {
  std::vector<PairCommutator> pairs;
  bool ok() const noexcept;
};

/// For each (l, l') computes [op, S_l + S_l'] on the register op acts on.
/// Throws InvalidDimension if op is not 2^n x 2^n or a qubit index is >= n.
CommutationReport check_gate_commutation(const Matrix& op, const NoiseVector& nv,
                                         std::span<const std::pair<int, int>> pairs);

struct GateHamiltonian {
  Matrix hamiltonian;
  /// Set when some eigenvalue of U sat on -1; its phase was taken as +pi.
  bool branch_ambiguous = false;
};

/// H_g = i log U with eigenphases in (-pi, pi], so exp(-i H_g) = U.
/// Throws NonUnitary if U is not unitary to tol::kGateLogRoundTrip.
GateHamiltonian gate_hamiltonian(const Matrix& u);

}  // namespace qpair
