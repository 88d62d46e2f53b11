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

// Numerical thresholds shared by the library checks, the scenario runner's
// built-in assertions and the acceptance suite. Change them here only.

namespace qpair::tol {

// Hermiticity / unitarity / identity residuals on assembled operators.
inline constexpr double kOperator = 1e-12;
// Rejection threshold for a Hamiltonian passed to the propagator.
inline constexpr double kHermitianInput = 1e-10;
// Zero-eigenvalue residual for subspace basis vectors.
inline constexpr double kSubspaceResidual = 1e-12;
// Scalar-commutator check in check_gate_commutation.
inline constexpr double kCommutatorScalar = 1e-10;
// Commutator norm for the paired gate against the pair S-sums.
inline constexpr double kGateCommutator = 1e-12;
// exp(-i H_g) versus U.
inline constexpr double kGateLogRoundTrip = 1e-10;
// Decode refuses inputs whose out-of-subspace norm exceeds this.
inline constexpr double kDecodeLeakage = 1e-9;
// Encoded storage: reduced-state fidelity floor is 1 - kStorageFidelity.
inline constexpr double kStorageFidelity = 1e-9;
// Bare storage must fall below this fidelity somewhere in the window.
inline constexpr double kBareFidelityCeiling = 0.99;
// Encode/decode round trip and S-sum annihilation.
inline constexpr double kRoundTrip = 1e-12;
// Gate run: fidelity floor is 1 - kGateFidelity, leakage ceiling kGateLeakage.
inline constexpr double kGateFidelity = 1e-8;
inline constexpr double kGateLeakage = 1e-9;
// decode(U encode(s)) versus the bare gate.
inline constexpr double kLogicalAction = 1e-10;
// State norm and density-matrix validity along a trajectory.
inline constexpr double kStateNorm = 1e-10;
// Efficiency table versus the closed form, and the large-m Stirling gap.
inline constexpr double kEfficiencyTable = 1e-12;
inline constexpr double kStirlingGap = 1e-3;
inline constexpr int kStirlingCheckM = 64;
// Top Fock level population above which a run is flagged as truncated.
inline constexpr double kTruncationFlag = 1e-4;
// Golden CSV comparison (absolute, per numeric cell).
inline constexpr double kGolden = 1e-8;
// Allowed overshoot of emitted fidelities above one.
inline constexpr double kFidelityOvershoot = 1e-9;

}  // namespace qpair::tol
