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

// Finite-dimensional operator algebra: Pauli and ladder matrices, the
// canonical tensor layout (qubits first, each ancilla right after its
// partner, then bath modes ascending) and the per-qubit noise operator S.

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace qpair {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

enum class PauliAxis { x, y, z, plus, minus };

/// Basis index 0 is |+> (sigma^z = +1), index 1 is |->.
Matrix pauli(PauliAxis axis);

/// Truncated annihilation operator with sqrt(n) on the superdiagonal.
/// Throws InvalidDimension for dim < 2.
Matrix ladder(int dim);

Matrix identity(Index dim);
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

double max_abs(const Matrix& m);
double hermitian_residual(const Matrix& m);
double unitary_residual(const Matrix& m);
Matrix commutator(const Matrix& a, const Matrix& b);

/// Tensor-factor layout of a qubit register followed by truncated bosonic
/// modes. Factor i < qubit_count() is qubit i; factor qubit_count() + k is
/// mode k.
class HilbertLayout {
 public:
  HilbertLayout(int qubit_count, std::vector<int> mode_dims);

  int qubit_count() const noexcept { return qubit_count_; }
  const std::vector<int>& mode_dims() const noexcept { return mode_dims_; }
  int mode_count() const noexcept { return static_cast<int>(mode_dims_.size()); }
  int factor_count() const noexcept { return qubit_count_ + mode_count(); }
  int factor_dim(int factor) const;
  int mode_factor(int mode) const;

  Index dim() const noexcept { return system_dim() * bath_dim(); }
  Index system_dim() const noexcept { return Index{1} << qubit_count_; }
  Index bath_dim() const noexcept;

  std::vector<int> dims() const;

  friend bool operator==(const HilbertLayout&, const HilbertLayout&) = default;

 private:
  int qubit_count_;
  std::vector<int> mode_dims_;
};

/// I (x) ... (x) op (x) ... (x) I with op on `factor`.
Matrix embed(const Matrix& op, int factor, const HilbertLayout& layout);

struct FactorOp {
  int factor;
  Matrix op;
};

/// Tensor product of operators acting on distinct factors, identity elsewhere.
/// Built directly as one Kronecker chain rather than as a matrix product.
Matrix embed_product(std::span<const FactorOp> ops, const HilbertLayout& layout);

/// Noise direction (lambda1, lambda2, lambda3) weighting sigma^x, sigma^y,
/// sigma^z in the system-bath coupling.
struct NoiseVector {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;

  double magnitude() const noexcept;
  /// Throws InvalidNoise for the zero vector or non-finite entries.
  void validate() const;

  friend bool operator==(const NoiseVector&, const NoiseVector&) = default;
};

/// S = lambda1 sigma^x + lambda2 sigma^y + lambda3 sigma^z.
Matrix build_s(const NoiseVector& nv);

struct SEigenbasis {
  /// Columns are the +a and -a eigenvectors of S, in that order. The first
  /// nonzero component of each column is real and positive.
  Matrix rotation;
  double eigenvalue = 0.0;
  /// When lambda2 == 0 the basis change is a y-rotation by this angle,
  /// atan2(lambda1, lambda3). Empty otherwise.
  std::optional<double> y_angle;
};

SEigenbasis s_eigenbasis(const NoiseVector& nv);

/// R (x) R (x) ... (x) R over `count` qubits.
Matrix tensor_power(const Matrix& single, int count);

}  // namespace qpair
