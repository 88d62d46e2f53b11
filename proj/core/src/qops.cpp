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

#include "qpair/qops.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qpair/errors.hpp"

namespace qpair {

Matrix pauli(PauliAxis axis) {
  Matrix m = Matrix::Zero(2, 2);
  switch (axis) {
    case PauliAxis::x:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case PauliAxis::y:
      m(0, 1) = -kI;
      m(1, 0) = kI;
      break;
    case PauliAxis::z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    case PauliAxis::plus:  // |+><-|
      m(0, 1) = 1.0;
      break;
    case PauliAxis::minus:  // |-><+|
      m(1, 0) = 1.0;
      break;
  }
  return m;
}

Matrix ladder(int dim) {
  if (dim < 2) {
    throw InvalidDimension("ladder: Fock cutoff must be >= 2, got " +
                           std::to_string(dim));
  }
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix identity(Index dim) { return Matrix::Identity(dim, dim); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out = Eigen::kroneckerProduct(a, b);
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermitian_residual(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m - m.adjoint());
}

double unitary_residual(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m.adjoint() * m - identity(m.rows()));
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

HilbertLayout::HilbertLayout(int qubit_count, std::vector<int> mode_dims)
    : qubit_count_(qubit_count), mode_dims_(std::move(mode_dims)) {
  if (qubit_count_ < 0 || qubit_count_ > 20) {
    throw InvalidDimension("HilbertLayout: qubit count out of range: " +
                           std::to_string(qubit_count_));
  }
  for (int d : mode_dims_) {
    if (d < 2) {
      throw InvalidDimension("HilbertLayout: mode dimension must be >= 2, got " +
                             std::to_string(d));
    }
  }
}

int HilbertLayout::factor_dim(int factor) const {
  if (factor < 0 || factor >= factor_count()) {
    throw std::out_of_range("HilbertLayout: factor index " + std::to_string(factor) +
                            " out of range");
  }
  return factor < qubit_count_ ? 2 : mode_dims_[factor - qubit_count_];
}

int HilbertLayout::mode_factor(int mode) const {
  if (mode < 0 || mode >= mode_count()) {
    throw std::out_of_range("HilbertLayout: mode index " + std::to_string(mode) +
                            " out of range");
  }
  return qubit_count_ + mode;
}

Index HilbertLayout::bath_dim() const noexcept {
  Index d = 1;
  for (int m : mode_dims_) d *= m;
  return d;
}

std::vector<int> HilbertLayout::dims() const {
  std::vector<int> out(static_cast<std::size_t>(qubit_count_), 2);
  out.insert(out.end(), mode_dims_.begin(), mode_dims_.end());
  return out;
}

Matrix embed(const Matrix& op, int factor, const HilbertLayout& layout) {
  const FactorOp single{factor, op};
  return embed_product(std::span<const FactorOp>(&single, 1), layout);
}

Matrix embed_product(std::span<const FactorOp> ops, const HilbertLayout& layout) {
  std::vector<const Matrix*> slot(static_cast<std::size_t>(layout.factor_count()), nullptr);
  for (const auto& f : ops) {
    const int d = layout.factor_dim(f.factor);
    if (f.op.rows() != d || f.op.cols() != d) {
      throw InvalidDimension("embed: operator is " + std::to_string(f.op.rows()) + "x" +
                             std::to_string(f.op.cols()) + " but factor " +
                             std::to_string(f.factor) + " has dimension " +
                             std::to_string(d));
    }
    if (slot[static_cast<std::size_t>(f.factor)] != nullptr) {
      throw std::invalid_argument("embed: factor " + std::to_string(f.factor) +
                                  " given twice");
    }
    slot[static_cast<std::size_t>(f.factor)] = &f.op;
  }

  // Fold runs of identities into a single identity block.
  Matrix out = Matrix::Identity(1, 1);
  Index pending_identity = 1;
  for (int i = 0; i < layout.factor_count(); ++i) {
    const Matrix* op = slot[static_cast<std::size_t>(i)];
    if (op == nullptr) {
      pending_identity *= layout.factor_dim(i);
      continue;
    }
    if (pending_identity > 1) out = kron(out, identity(pending_identity));
    pending_identity = 1;
    out = kron(out, *op);
  }
  if (pending_identity > 1) out = kron(out, identity(pending_identity));
  return out;
}

double NoiseVector::magnitude() const noexcept {
  return std::sqrt(lambda1 * lambda1 + lambda2 * lambda2 + lambda3 * lambda3);
}

void NoiseVector::validate() const {
  if (!std::isfinite(lambda1) || !std::isfinite(lambda2) || !std::isfinite(lambda3)) {
    throw InvalidNoise("noise vector has non-finite components");
  }
  if (magnitude() == 0.0) throw InvalidNoise("noise vector must not be zero");
}

Matrix build_s(const NoiseVector& nv) {
  nv.validate();
  return nv.lambda1 * pauli(PauliAxis::x) + nv.lambda2 * pauli(PauliAxis::y) +
         nv.lambda3 * pauli(PauliAxis::z);
}

namespace {

// Unit eigenvector of S for eigenvalue mu (= +-a). Both candidate null
// vectors of (S - mu) are formed and the better-conditioned one is kept.
Eigen::Vector2cd eigenvector(const NoiseVector& nv, double mu) {
  const Complex off_minus{nv.lambda1, -nv.lambda2};  // S(0,1)
  const Complex off_plus{nv.lambda1, nv.lambda2};    // S(1,0)
  Eigen::Vector2cd from_row0(off_minus, mu - nv.lambda3);
  Eigen::Vector2cd from_row1(mu + nv.lambda3, off_plus);
  Eigen::Vector2cd v = from_row0.norm() >= from_row1.norm() ? from_row0 : from_row1;
  v.normalize();
  const Complex lead = std::abs(v(0)) > 1e-15 ? v(0) : v(1);
  v *= std::conj(lead) / std::abs(lead);
  // Remove the rounding residue left in the imaginary part of the lead entry.
  if (std::abs(v(0)) > 1e-15) {
    v(0) = std::abs(v(0));
  } else {
    v(0) = 0.0;
    v(1) = std::abs(v(1));
  }
  return v;
}

}  // namespace

SEigenbasis s_eigenbasis(const NoiseVector& nv) {
  nv.validate();
  const double a = nv.magnitude();
  SEigenbasis out;
  out.eigenvalue = a;
  out.rotation = Matrix(2, 2);
  out.rotation.col(0) = eigenvector(nv, a);
  out.rotation.col(1) = eigenvector(nv, -a);
  if (nv.lambda2 == 0.0) out.y_angle = std::atan2(nv.lambda1, nv.lambda3);
  return out;
}

Matrix tensor_power(const Matrix& single, int count) {
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < count; ++i) out = kron(out, single);
  return out;
}

}  // namespace qpair
