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

#include "qpair/gates.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qpair/errors.hpp"
#include "qpair/tolerances.hpp"

namespace qpair {

namespace {

// Exchange matrix: reverses basis order.
Matrix reversal(Index dim) {
  Matrix j = Matrix::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) j(i, dim - 1 - i) = 1.0;
  return j;
}

// Eigenphases this close to -pi are snapped to +pi.
constexpr double kBranchSnap = 1e-9;

}  // namespace

Matrix v_matrix(const GateParams& p) {
  const double c = std::cos(p.theta_gate);
  const double s = std::sin(p.theta_gate);
  Matrix v(2, 2);
  v(0, 0) = std::polar(c, p.alpha);
  v(0, 1) = -kI * std::polar(s, p.alpha - p.phi);
  v(1, 0) = -kI * std::polar(s, p.alpha + p.phi);
  v(1, 1) = std::polar(c, p.alpha);
  return v;
}

Matrix u_bare_gate(const GateParams& p) {
  const Matrix j2 = reversal(2);
  Matrix u = Matrix::Identity(4, 4);
  u.topLeftCorner(2, 2) = j2 * v_matrix(p) * j2;  // control |+1> (index 0)
  return u;
}

Matrix u_bare_gate(const GateParams& p, const NoiseVector& nv) {
  const Matrix r2 = tensor_power(s_eigenbasis(nv).rotation, 2);
  return r2 * u_bare_gate(p) * r2.adjoint();
}

Matrix u_pair_gate(const GateParams& p) {
  // V embedded on a pair in the literal (|-1,-1>, |-1,+1>, |+1,-1>, |+1,+1>)
  // order, then reversed into S-frame index order (|+1,+1>, |+1,-1>, ...).
  Matrix v_pair = Matrix::Identity(4, 4);
  v_pair.block(1, 1, 2, 2) = v_matrix(p);
  const Matrix j4 = reversal(4);
  const Matrix v_frame = j4 * v_pair * j4;

  constexpr Index kControlActive = 1;  // |+1,-1> in S-frame index order
  Matrix u = Matrix::Identity(16, 16);
  u.block(4 * kControlActive, 4 * kControlActive, 4, 4) = v_frame;
  return u;
}

Matrix u_pair_gate(const GateParams& p, const NoiseVector& nv) {
  const Matrix r4 = tensor_power(s_eigenbasis(nv).rotation, 4);
  return r4 * u_pair_gate(p) * r4.adjoint();
}

bool CommutationReport::ok() const noexcept {
  for (const auto& p : pairs) {
    if (!p.is_scalar) return false;
  }
  return true;
}

CommutationReport check_gate_commutation(const Matrix& op, const NoiseVector& nv,
                                         std::span<const std::pair<int, int>> pairs) {
  const auto dim = static_cast<std::uint64_t>(op.rows());
  if (op.rows() != op.cols() || dim < 2 || !std::has_single_bit(dim)) {
    throw InvalidDimension("check_gate_commutation: operator must be 2^n x 2^n");
  }
  const int n = std::countr_zero(dim);
  const HilbertLayout reg(n, {});
  const Matrix s = build_s(nv);

  CommutationReport report;
  for (const auto& [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
      throw InvalidDimension("check_gate_commutation: pair (" + std::to_string(a) + ", " +
                             std::to_string(b) + ") does not fit a " + std::to_string(n) +
                             "-qubit operator");
    }
    const Matrix s_sum = embed(s, a, reg) + embed(s, b, reg);
    const Matrix c = commutator(op, s_sum);
    PairCommutator pc;
    pc.qubits = {a, b};
    pc.scalar = c.trace() / static_cast<double>(dim);
    pc.residual = max_abs(c - pc.scalar * identity(op.rows()));
    pc.norm = c.norm();
    pc.is_scalar = pc.residual <= tol::kCommutatorScalar;
    report.pairs.push_back(pc);
  }
  return report;
}

GateHamiltonian gate_hamiltonian(const Matrix& u) {
  if (unitary_residual(u) > tol::kGateLogRoundTrip) {
    throw NonUnitary("gate_hamiltonian: input is not unitary");
  }
  // A unitary is normal, so its complex Schur form is diagonal up to rounding
  // and the Schur vectors are an orthonormal eigenbasis.
  Eigen::ComplexSchur<Matrix> schur(u);
  const Matrix& q = schur.matrixU();
  const Matrix& t = schur.matrixT();

  GateHamiltonian out;
  Eigen::VectorXd h_diag(u.rows());
  for (Index i = 0; i < u.rows(); ++i) {
    double phase = std::arg(t(i, i));
    if (std::abs(phase + std::numbers::pi) <= kBranchSnap ||
        std::abs(phase - std::numbers::pi) <= kBranchSnap) {
      out.branch_ambiguous = true;
      phase = std::numbers::pi;
    }
    h_diag(i) = -phase;
  }
  const Matrix h = q * h_diag.asDiagonal() * q.adjoint();
  out.hamiltonian = 0.5 * (h + h.adjoint());
  return out;
}

}  // namespace qpair
