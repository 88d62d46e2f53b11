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

// Shared helpers for the unit tests. Oracles that the tests compare against
// live here too, written without calling into the library under test.

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "qpair/qops.hpp"

namespace qpair::testing {

inline Matrix sx() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix sy() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline Matrix sz() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
inline Matrix eye(Index n) { return Matrix::Identity(n, n); }

// Plain Kronecker product, entry by entry.
inline Matrix kron_ref(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Matrix kron_chain(const std::vector<Matrix>& ops) {
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& op : ops) out = kron_ref(out, op);
  return out;
}

inline Matrix annihilation(int dim) {
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline NoiseVector random_noise(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  NoiseVector nv{g(rng), g(rng), g(rng)};
  return nv;
}

inline Vector random_state(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = Complex(g(rng), g(rng));
  return v.normalized();
}

inline double maxabs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// exp(-i H t) for Hermitian H through Eigen's self-adjoint solver.
inline Matrix expm_hermitian(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases(h.rows());
  for (Index k = 0; k < h.rows(); ++k) phases(k) = std::exp(Complex(0, -es.eigenvalues()(k) * t));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace qpair::testing
