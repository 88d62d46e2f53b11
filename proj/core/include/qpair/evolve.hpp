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

// Exact unitary evolution of register (x) bath states, reduced density
// matrices and the storage / gate experiments.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpair/dfs.hpp"
#include "qpair/gates.hpp"
#include "qpair/model.hpp"
#include "qpair/qops.hpp"

namespace qpair {

/// exp(-i H t) from one eigendecomposition of H.
class SpectralPropagator {
 public:
  /// Throws NonHermitian if max|H - H^dagger| exceeds tol::kHermitianInput.
  explicit SpectralPropagator(const Matrix& h);

  Index dim() const noexcept { return vectors_.rows(); }
  Vector evolve(const Vector& psi0, double t) const;
  Matrix unitary(double t) const;
  const Eigen::VectorXd& energies() const noexcept { return energies_; }

 private:
  Eigen::VectorXd energies_;
  Matrix vectors_;
};

struct MetricRecord {
  double time = 0.0;
  /// <ref(t)| rho_sys |ref(t)> with ref(t) = exp(-i H_sys t) ref(0).
  double fidelity = 0.0;
  /// Sum of |off-diagonal| entries of the system state in the logical basis,
  /// taken in the frame of the bath-free system Hamiltonian.
  double coherence = 0.0;
  /// Norm of the state outside the pair subspace (0 when not tracked).
  double leakage = 0.0;
  /// Population of each mode's highest Fock level.
  std::vector<double> top_fock_population;
};

struct EvolutionResult {
  std::vector<double> times;
  /// Full register (x) bath states. Only kept when the initial state is pure.
  std::vector<Vector> states;
  /// Register density matrices (lab frame).
  std::vector<Matrix> reduced;
  std::vector<MetricRecord> metrics;

  double min_fidelity() const;
  double max_infidelity() const { return 1.0 - min_fidelity(); }
  double max_leakage() const;
  double max_top_fock_population() const;
  bool truncation_flagged() const;
};

/// States only; reduced and metrics are left empty. Times must be sorted and
/// nonnegative.
EvolutionResult evolve_exact(const Matrix& h, const Vector& psi0, std::span<const double> times);

/// Reduced density matrix over the factors in `keep` (ascending order kept).
Matrix partial_trace(const Vector& psi, const HilbertLayout& layout, std::span<const int> keep);
Matrix partial_trace(const Matrix& rho, const HilbertLayout& layout, std::span<const int> keep);

double state_fidelity(const Matrix& rho, const Vector& reference);
double purity(const Matrix& rho);

/// Violations of the trajectory invariants (unit-norm states, Hermitian
/// unit-trace PSD reduced states) at tolerance `tol`.
std::vector<std::string> check_invariants(const EvolutionResult& result, double tol);

struct BathInit {
  enum class Kind { vacuum, thermal, coherent };

  Kind kind = Kind::vacuum;
  /// Gibbs temperature over the truncated ladder (thermal only).
  double temperature = 0.0;
  /// Real coherent amplitude per mode (coherent only).
  std::vector<double> amplitudes;

  static BathInit vacuum() { return {}; }
  static BathInit thermal(double temperature) { return {Kind::thermal, temperature, {}}; }
  static BathInit coherent(std::vector<double> amps) {
    return {Kind::coherent, 0.0, std::move(amps)};
  }
};

struct BathComponent {
  double weight = 1.0;
  Vector state;
};

/// Pure-state decomposition of the initial bath: one component for vacuum
/// and coherent states, one Fock configuration per component for thermal.
std::vector<BathComponent> bath_ensemble(const BathSpec& bath, const BathInit& init);

/// What to measure along a run. The register occupies the leading factors.
struct RunProbe {
  HilbertLayout layout{0, {}};
  Matrix system_hamiltonian;
  Vector system_initial;
  /// Orthonormal columns; coherence is read in this basis.
  Matrix logical_basis;
  std::optional<Matrix> dfs_basis;
};

/// Evolves system_initial (x) each bath component under h and records the
/// probe's metrics at every time.
EvolutionResult evolve_observed(const Matrix& h, const RunProbe& probe,
                                std::span<const BathComponent> bath,
                                std::span<const double> times);

struct StorageConfig {
  int pairs = 1;
  NoiseModel noise;
  BathSpec bath;
  BathInit bath_init;
  LogicalState logical;
  std::vector<double> times;
  AsymmetryKnob asymmetry;
};

struct StorageResult {
  /// Encoded pairs under H_pairs + H_drive.
  EvolutionResult encoded;
  /// Unencoded data qubits under the bare Hamiltonian, same bath.
  EvolutionResult bare;
};

StorageResult run_storage_experiment(const StorageConfig& cfg);

struct GateConfig {
  StorageConfig storage;
  GateParams params;
  double duration = 1.0;
};

struct GateResult {
  EvolutionResult run;
  /// Metrics at t = duration against exp(-i H_g duration) encode(s).
  double reference_fidelity = 0.0;
  double leakage = 0.0;
  /// Decoded final register versus u_bare_gate applied to the logical input.
  double logical_fidelity = 0.0;
  /// max |decode(U encode(e_k)) - u_bare_gate e_k| over logical basis states.
  double logical_action_error = 0.0;
  bool branch_ambiguous = false;
};

/// Requires two pairs. H_g = i log U / duration is added on the register.
GateResult run_gate_experiment(const GateConfig& cfg);

}  // namespace qpair
