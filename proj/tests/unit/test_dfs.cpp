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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qpair/dfs.hpp"
#include "qpair/errors.hpp"
#include "qpair/model.hpp"
#include "qpair/tolerances.hpp"
#include "test_util.hpp"

namespace qpair {
namespace {

using testing::eye;
using testing::kron_chain;
using testing::maxabs;

const std::vector<NoiseVector> kNoises{{0, 0, 1}, {1, 0, 1}, {0.3, -0.7, 0.2}, {1, 1, 1}};

// Sum of S over n qubits, assembled from explicit Kronecker chains.
Matrix cluster_s_sum(const NoiseVector& nv, int n) {
  const Matrix s = nv.lambda1 * testing::sx() + nv.lambda2 * testing::sy() + nv.lambda3 * testing::sz();
  Matrix total = Matrix::Zero(Index{1} << n, Index{1} << n);
  for (int q = 0; q < n; ++q) {
    std::vector<Matrix> chain(static_cast<std::size_t>(n), eye(2));
    chain[static_cast<std::size_t>(q)] = s;
    total += kron_chain(chain);
  }
  return total;
}

Vector basis_state(Index dim, Index k) { return Vector::Unit(dim, k); }

TEST(Subspace, SinglePairPureDephasing) {
  const DfsSubspace sub = coherence_preserving_subspace({0, 0, 1}, 1);
  EXPECT_EQ(sub.logical_dim(), 2);
  EXPECT_EQ(sub.cluster_size, 2);
  Matrix expected = Matrix::Zero(4, 4);
  expected(1, 1) = 1.0;  // |+->
  expected(2, 2) = 1.0;  // |-+>
  EXPECT_LT(maxabs(sub.basis * sub.basis.adjoint() - expected), 1e-15);
}

// Brute-force oracle: diagonalize the cluster S-sum and count zero modes.
TEST(Subspace, DimensionsMatchDiagonalization) {
  for (const auto& nv : kNoises) {
    for (int m = 1; m <= 3; ++m) {
      const Matrix total = cluster_s_sum(nv, 2 * m);
      Eigen::SelfAdjointEigenSolver<Matrix> es(total);
      Matrix zero_vectors(total.rows(), 0);
      for (Index k = 0; k < total.rows(); ++k) {
        if (std::abs(es.eigenvalues()(k)) < 1e-8) {
          zero_vectors.conservativeResize(Eigen::NoChange, zero_vectors.cols() + 1);
          zero_vectors.col(zero_vectors.cols() - 1) = es.eigenvectors().col(k);
        }
      }
      const DfsSubspace sub = coherence_preserving_subspace(nv, m);
      ASSERT_EQ(sub.basis.cols(), zero_vectors.cols()) << "m = " << m;
      const Index expected[] = {2, 6, 20};
      EXPECT_EQ(sub.basis.cols(), expected[m - 1]);
      // Same subspace: equal projectors.
      EXPECT_LT(maxabs(sub.basis * sub.basis.adjoint() - zero_vectors * zero_vectors.adjoint()), 1e-9);
      EXPECT_LE(maxabs(total * sub.basis), tol::kSubspaceResidual);
      EXPECT_LE(maxabs(sub.basis.adjoint() * sub.basis - eye(sub.basis.cols())), 1e-12);
    }
  }
}

TEST(Subspace, LargerClustersHaveCentralBinomialDimension) {
  for (int m = 4; m <= 5; ++m) {
    const DfsSubspace sub = coherence_preserving_subspace({0.2, 0.5, -0.4}, m);
    EXPECT_EQ(static_cast<std::uint64_t>(sub.basis.cols()), central_binomial(m));
  }
}

TEST(Subspace, RejectsInfeasibleSize) {
  EXPECT_THROW(coherence_preserving_subspace({0, 0, 1}, 0), InvalidDimension);
  EXPECT_THROW(coherence_preserving_subspace({0, 0, 1}, kMaxClusterHalf + 1), InvalidDimension);
  EXPECT_THROW(coherence_preserving_subspace({0, 0, 0}, 1), InvalidNoise);
}

// Pascal's triangle, row by row.
std::vector<std::uint64_t> pascal_central(int m_max) {
  std::vector<std::uint64_t> row{1};
  std::vector<std::uint64_t> out{1};
  for (int n = 1; n <= 2 * m_max; ++n) {
    std::vector<std::uint64_t> next(row.size() + 1, 1);
    for (std::size_t k = 1; k < row.size(); ++k) next[k] = row[k - 1] + row[k];
    row = std::move(next);
    if (n % 2 == 0) out.push_back(row[static_cast<std::size_t>(n / 2)]);
  }
  return out;
}

TEST(Efficiency, CentralBinomialMatchesPascal) {
  const auto ref = pascal_central(33);
  for (int m = 0; m <= 33; ++m) EXPECT_EQ(central_binomial(m), ref[static_cast<std::size_t>(m)]) << m;
  EXPECT_THROW(central_binomial(34), std::overflow_error);
}

TEST(Efficiency, SinglePairIsOneHalf) { EXPECT_EQ(efficiency(1).eta_exact, 0.5); }

TEST(Efficiency, TwoPairs) { EXPECT_NEAR(efficiency(2).eta_exact, std::log2(6.0) / 4.0, 1e-15); }

TEST(Efficiency, TableMatchesPascalOracle) {
  const auto ref = pascal_central(6);
  for (int m = 1; m <= 6; ++m) {
    const double expected = std::log2(static_cast<double>(ref[static_cast<std::size_t>(m)])) / (2.0 * m);
    EXPECT_NEAR(efficiency(m).eta_exact, expected, tol::kEfficiencyTable);
    EXPECT_NEAR(efficiency(m).eta_approx, 1.0 - std::log2(std::numbers::pi * m) / (4.0 * m), 1e-15);
  }
}

TEST(Efficiency, LargeClustersAgreeWithProductFormula) {
  for (int m : {34, 64, 100, 500}) {
    double log2c = 0.0;
    for (int k = 1; k <= m; ++k) log2c += std::log2(static_cast<double>(m + k) / k);
    EXPECT_NEAR(log2_central_binomial(m), log2c, 1e-9 * log2c) << m;
  }
}

TEST(Efficiency, StirlingGapAtSixtyFour) {
  const Efficiency e = efficiency(tol::kStirlingCheckM);
  EXPECT_LE(std::abs(e.eta_exact - e.eta_approx), tol::kStirlingGap);
  EXPECT_THROW(efficiency(0), InvalidDimension);
}

// The plain-CNOT oracle: flip the ancilla when the data bit is 0 (|+1>).
Matrix plain_cnots(int pairs) {
  const int n = 2 * pairs;
  const Index dim = Index{1} << n;
  Matrix u = Matrix::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    Index j = i;
    for (int l = 0; l < pairs; ++l) {
      const int data_shift = n - 1 - 2 * l;
      if (((i >> data_shift) & 1) == 0) j ^= Index{1} << (data_shift - 1);
    }
    u(j, i) = 1.0;
  }
  return u;
}

TEST(EncodeCircuit, PureDephasingIsPlainCnots) {
  for (int pairs = 1; pairs <= 3; ++pairs) {
    const Circuit c = build_encode_circuit(pairs, {0, 0, 1});
    EXPECT_LT(maxabs(c.unitary() - plain_cnots(pairs)), 1e-15);
  }
}

TEST(EncodeCircuit, Unitary) {
  for (const auto& nv : kNoises) {
    EXPECT_LE(unitary_residual(build_encode_circuit(2, nv).unitary()), 1e-12);
  }
}

TEST(EncodeCircuit, TextRoundTrip) {
  const Circuit c = build_encode_circuit(2, {0.3, -0.7, 0.2});
  const Circuit back = Circuit::from_text(c.to_text());
  EXPECT_EQ(back.width(), c.width());
  EXPECT_EQ(back.gates().size(), c.gates().size());
  EXPECT_EQ(maxabs(back.unitary() - c.unitary()), 0.0);
  EXPECT_THROW(Circuit::from_text("qubits 2\nswap 0 1\n"), std::invalid_argument);
}

TEST(EncodeCircuit, LeavesTrailingFactorsAlone) {
  std::mt19937_64 rng(4);
  const Circuit c = build_encode_circuit(1, {1, 0, 1});
  const Vector reg = testing::random_state(4, rng);
  const Vector bath = testing::random_state(3, rng);
  const Vector out = c.apply(kron(reg, bath));
  EXPECT_LT(maxabs(out - kron(c.unitary() * reg, bath)), 1e-14);
}

// Direct construction of sum_k c_k (x)_l R|i_l> (x) R|-i_l>.
Vector direct_encoding(const Vector& amps, const NoiseVector& nv, int pairs) {
  const Matrix r = s_eigenbasis(nv).rotation;
  Vector out = Vector::Zero(Index{1} << (2 * pairs));
  for (Index k = 0; k < amps.size(); ++k) {
    Vector term = Vector::Ones(1);
    for (int l = 0; l < pairs; ++l) {
      const Index bit = (k >> (pairs - 1 - l)) & 1;
      term = kron(term, kron(Vector(r.col(bit)), Vector(r.col(1 - bit))));
    }
    out += amps(k) * term;
  }
  return out;
}

TEST(Encode, MatchesDirectConstruction) {
  std::mt19937_64 rng(8);
  for (int pairs = 1; pairs <= 2; ++pairs) {
    for (int trial = 0; trial < 20; ++trial) {
      const NoiseVector nv = testing::random_noise(rng);
      const LogicalState s = LogicalState::random(pairs, rng);
      const Vector enc = encode(s, nv, pairs);
      const Vector ref = direct_encoding(s.amplitudes, nv, pairs);
      EXPECT_GE(std::norm(ref.dot(enc)), 1.0 - 1e-12);
    }
  }
}

TEST(Encode, SingleTerm) {
  for (const auto& nv : kNoises) {
    const Matrix r = s_eigenbasis(nv).rotation;
    const Vector enc = encode(LogicalState{basis_state(2, 0)}, nv, 1);
    EXPECT_LT(maxabs(enc - kron(Vector(r.col(0)), Vector(r.col(1)))), 1e-14);
  }
}

TEST(Encode, SuperpositionUnderDephasing) {
  const Vector amps = Vector::Constant(2, 1.0 / std::sqrt(2.0));
  const Vector enc = encode(LogicalState{amps}, {0, 0, 1}, 1);
  Vector expected = Vector::Zero(4);
  expected(1) = expected(2) = 1.0 / std::sqrt(2.0);
  EXPECT_LT(maxabs(enc - expected), 1e-15);
}

TEST(Encode, IsLinear) {
  std::mt19937_64 rng(12);
  const NoiseVector nv{0.4, 0.1, -0.9};
  const Matrix basis = pair_dfs_basis(nv, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const LogicalState s = LogicalState::random(2, rng);
    EXPECT_LT(maxabs(encode(s, nv, 2) - basis * s.amplitudes), 1e-14);
  }
}

TEST(Encode, AnnihilatedByPairSums) {
  std::mt19937_64 rng(9);
  for (const auto& nv : kNoises) {
    for (int pairs = 1; pairs <= 3; ++pairs) {
      const Vector enc = encode(LogicalState::random(pairs, rng), nv, pairs);
      for (int l = 0; l < pairs; ++l) {
        EXPECT_LE(maxabs(pair_s_sum(nv, l, 2 * pairs) * enc), 1e-12);
      }
    }
  }
}

TEST(Encode, CircuitIsSelfInverse) {
  std::mt19937_64 rng(10);
  const NoiseVector nv{0.5, 0.5, 0.1};
  const Matrix r = s_eigenbasis(nv).rotation;
  const LogicalState s = LogicalState::random(2, rng);
  const Vector back = build_encode_circuit(2, nv).apply(encode(s, nv, 2));
  Vector expected = Vector::Zero(16);
  for (Index k = 0; k < 4; ++k) {
    Vector term = Vector::Ones(1);
    for (int l = 0; l < 2; ++l) {
      const Index bit = (k >> (1 - l)) & 1;
      term = kron(term, kron(Vector(r.col(bit)), Vector(r.col(0))));
    }
    expected += s.amplitudes(k) * term;
  }
  EXPECT_LT(maxabs(back - expected), 1e-13);
}

TEST(Decode, RoundTrip) {
  std::mt19937_64 rng(13);
  for (const auto& nv : kNoises) {
    for (int pairs = 1; pairs <= 2; ++pairs) {
      const LogicalState s = LogicalState::random(pairs, rng);
      const LogicalState back = decode(encode(s, nv, pairs), nv, pairs);
      EXPECT_GE(std::norm(s.amplitudes.dot(back.amplitudes)), 1.0 - 1e-12);
    }
  }
}

TEST(Decode, RejectsLeakedState) {
  const NoiseVector nv{1, 0, 1};
  const Matrix r = s_eigenbasis(nv).rotation;
  const Vector outside = kron(Vector(r.col(0)), Vector(r.col(0)));  // |+1,+1>
  try {
    decode(outside, nv, 1);
    FAIL() << "expected LeakageError";
  } catch (const LeakageError& e) {
    EXPECT_NEAR(e.leaked_norm(), 1.0, 1e-12);
  }
  EXPECT_NEAR(dfs_leakage(outside, pair_dfs_basis(nv, 1)), 1.0, 1e-12);
}

TEST(LogicalStateTest, Normalization) {
  Vector v(4);
  v << 1, 2, 3, 4;
  const LogicalState s = LogicalState::from_amplitudes(v);
  EXPECT_NEAR(s.amplitudes.norm(), 1.0, 1e-15);
  EXPECT_EQ(s.qubits(), 2);
  EXPECT_THROW(LogicalState::from_amplitudes(Vector::Ones(3)), InvalidDimension);
  EXPECT_THROW(LogicalState::from_amplitudes(Vector::Zero(2)), InvalidDimension);
}

TEST(LogicalStateTest, SeededDrawsRepeat) {
  std::mt19937_64 a(99);
  std::mt19937_64 b(99);
  EXPECT_EQ(maxabs(LogicalState::random(2, a).amplitudes - LogicalState::random(2, b).amplitudes), 0.0);
}

}  // namespace
}  // namespace qpair
