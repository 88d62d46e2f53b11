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

// System-bath Hamiltonians for bare qubits, qubit pairs, the classical drive
// that removes the free qubit Hamiltonian, and the combined pair Hamiltonian.

#include <map>
#include <utility>
#include <vector>

#include "qpair/qops.hpp"

namespace qpair {

struct NoiseModel {
  NoiseVector noise;
  /// Qubit level splitting (hbar = 1).
  double omega0 = 0.0;

  void validate() const;
};

struct BathMode {
  double frequency = 1.0;
  int fock_dim = 2;
};

/// Truncated bosonic modes plus the couplings g between sites and modes. A
/// site is a pair index for pair Hamiltonians and a qubit index for bare
/// ones. Two sites share a physical mode iff they name the same mode index,
/// so the free energy of a shared mode enters once.
struct BathSpec {
  std::vector<BathMode> modes;
  std::map<std::pair<int, int>, double> coupling;  // (site, mode) -> g

  int add_mode(double frequency, int fock_dim);
  void couple(int site, int mode, double g);

  std::vector<int> mode_dims() const;
  /// (mode, g) pairs for one site, ascending mode index.
  std::vector<std::pair<int, double>> couplings_of(int site) const;
  /// Checks mode parameters and that every coupling names an existing mode
  /// and a site below site_count.
  void validate(int site_count) const;
};

/// Ancilla couplings are scaled to g (1 + epsilon). Zero is exact pairing.
struct AsymmetryKnob {
  double epsilon = 0.0;
};

/// (g1, g2, omega0) = kappa (lambda1, lambda2, lambda3).
struct DriveField {
  double g1 = 0.0;
  double g2 = 0.0;
  double kappa = 0.0;
};

HilbertLayout bare_layout(int qubits, const BathSpec& bath);
/// 2L qubits (pair l occupies qubits 2l and 2l+1) followed by the modes.
HilbertLayout pair_layout(int pairs, const BathSpec& bath);

inline constexpr int data_qubit(int pair) { return 2 * pair; }
inline constexpr int ancilla_qubit(int pair) { return 2 * pair + 1; }

/// omega0 sum sigma^z + sum_modes omega a+a + sum_l sum_w (lambda.sigma)_l g (a+ + a).
Matrix assemble_h_bare(int qubits, const NoiseModel& nm, const BathSpec& bath,
                       const HilbertLayout& layout);

/// Paired form: both members of pair l carry the same coupling (the ancilla's
/// scaled by 1 + epsilon).
Matrix assemble_h_pairs(int pairs, const NoiseModel& nm, const BathSpec& bath,
                        AsymmetryKnob asym, const HilbertLayout& layout);

/// Throws UndrivableModel when lambda3 = 0 and omega0 != 0.
DriveField drive_field(const NoiseModel& nm);

/// sum_l [g1 (sigma^x_l + sigma^x_l') + g2 (sigma^y_l + sigma^y_l')].
Matrix assemble_h_drive(int pairs, const DriveField& df, const HilbertLayout& layout);

/// H_pairs + H_drive. At epsilon = 0 the result is cross-checked against the
/// independently assembled S-form and a std::logic_error is thrown if the two
/// disagree by more than tol::kOperator.
Matrix assemble_h_total(int pairs, const NoiseModel& nm, const BathSpec& bath,
                        AsymmetryKnob asym, const HilbertLayout& layout);

/// sum_l (S_l + S_l') (x) [kappa + sum_w g (a+ + a)] + sum_w omega a+a.
Matrix assemble_h_total_s_form(int pairs, const NoiseModel& nm, const BathSpec& bath,
                               const HilbertLayout& layout);

/// sum_l (S_l + S_l') on the 2L-qubit register, for a single pair index.
Matrix pair_s_sum(const NoiseVector& nv, int pair, int qubits);

/// Bath-free part of the bare Hamiltonian on the qubit register alone.
Matrix bare_system_hamiltonian(int qubits, const NoiseModel& nm);
/// Bath-free part of H_total on the 2L-qubit register alone.
Matrix pair_system_hamiltonian(int pairs, const NoiseModel& nm);

}  // namespace qpair
