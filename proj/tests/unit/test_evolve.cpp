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

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <random>

#include "qpair/errors.hpp"
#include "qpair/evolve.hpp"
#include "qpair/tolerances.hpp"
#include "test_util.hpp"

namespace qpair {
namespace {

using testing::eye;
using testing::maxabs;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> t;
  for (int i = 0; i < n; ++i) t.push_back(a + (b - a) * i / (n - 1));
  return t;
}

BathSpec one_mode(double freq, int cutoff, double g, int sites) {
  BathSpec bath;
  const int m = bath.add_mode(freq, cutoff);
  for (int s = 0; s < sites; ++s) bath.couple(s, m, g);
  return bath;
}

StorageConfig storage(const NoiseModel& nm, BathSpec bath, BathInit init, int pairs = 1) {
  StorageConfig cfg;
  cfg.pairs = pairs;
  cfg.noise = nm;
  cfg.bath = std::move(bath);
  cfg.bath_init = std::move(init);
  cfg.logical = LogicalState::from_amplitudes(Vector::Ones(Index{1} << pairs));
  cfg.times = linspace(0.0, 20.0, 50);
  return cfg;
}

TEST(Propagator, RejectsNonHermitian) {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 1) = 1.0;
  EXPECT_THROW(SpectralPropagator{h}, NonHermitian);
}

TEST(EvolveExact, ZeroHamiltonianIsStatic) {
  std::mt19937_64 rng(1);
  const Vector psi = testing::random_state(6, rng);
  const std::vector<double> t{0.0, 1.0, 7.5};
  const EvolutionResult r = evolve_exact(Matrix::Zero(6, 6), psi, t);
  ASSERT_EQ(r.states.size(), 3u);
  for (const auto& s : r.states) EXPECT_LT(maxabs(s - psi), 1e-15);
}

TEST(EvolveExact, EigenstatePicksUpPhase) {
  const std::vector<double> t{std::numbers::pi};
  const EvolutionResult r = evolve_exact(testing::sz(), Vector::Unit(2, 0), t);
  EXPECT_LT(std::abs(r.states[0](0) - std::exp(Complex(0, -std::numbers::pi))), 1e-14);
  EXPECT_NEAR(std::norm(r.states[0](0)), 1.0, 1e-14);
}

// Oracle: Eigen's Pade/scaling-squaring exponential on a random Hermitian H.
TEST(EvolveExact, MatchesMatrixExponential) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  Matrix a(12, 12);
  for (Index i = 0; i < 12; ++i)
    for (Index j = 0; j < 12; ++j) a(i, j) = Complex(g(rng), g(rng));
  const Matrix h = 0.5 * (a + a.adjoint());
  const Vector psi = testing::random_state(12, rng);
  const std::vector<double> t{0.0, 0.3, 2.0, 11.0};
  const EvolutionResult r = evolve_exact(h, psi, t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Matrix u = (Complex(0, -t[i]) * h).exp();
    EXPECT_LT(maxabs(r.states[i] - u * psi), 1e-10) << t[i];
    EXPECT_NEAR(r.states[i].norm(), 1.0, tol::kStateNorm);
  }
}

// Resonant Jaynes-Cummings: |e,0> <-> |g,1> with P_e(t) = cos^2(g t).
TEST(EvolveExact, VacuumRabiOscillation) {
  const double w = 1.0;
  const double g = 0.05;
  const HilbertLayout layout(1, {3});
  const Matrix a = ladder(3);
  const Matrix h = 0.5 * w * embed(pauli(PauliAxis::z), 0, layout) +
                   w * embed(a.adjoint() * a, 1, layout) +
                   g * (kron(pauli(PauliAxis::plus), a) + kron(pauli(PauliAxis::minus), a.adjoint()));
  const Vector psi0 = Vector::Unit(6, 0);  // |+> (x) |0>
  const double period = 2.0 * std::numbers::pi / (2.0 * g);
  const auto t = linspace(0.0, period, 17);
  const EvolutionResult r = evolve_exact(h, psi0, t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Matrix rho = partial_trace(r.states[i], layout, std::vector<int>{0});
    const double c = std::cos(g * t[i]);
    EXPECT_NEAR(rho(0, 0).real(), c * c, 1e-10) << t[i];
  }
  EXPECT_NEAR(std::norm(r.states.back().dot(psi0)), 1.0, 1e-10);
}

TEST(EvolveExact, RejectsBadTimes) {
  const std::vector<double> unsorted{1.0, 0.5};
  const std::vector<double> negative{-1.0};
  EXPECT_THROW(evolve_exact(testing::sz(), Vector::Unit(2, 0), unsorted), std::invalid_argument);
  EXPECT_THROW(evolve_exact(testing::sz(), Vector::Unit(2, 0), negative), std::invalid_argument);
}

TEST(PartialTrace, ProductStateIsPure) {
  std::mt19937_64 rng(3);
  const Vector a = testing::random_state(2, rng);
  const Vector b = testing::random_state(3, rng);
  const HilbertLayout layout(1, {3});
  const Matrix rho = partial_trace(kron(a, b), layout, std::vector<int>{0});
  EXPECT_LT(maxabs(rho - a * a.adjoint()), 1e-15);
  EXPECT_NEAR(purity(rho), 1.0, 1e-14);
}

TEST(PartialTrace, BellPairGivesMaximallyMixed) {
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const HilbertLayout layout(2, {});
  EXPECT_LT(maxabs(partial_trace(bell, layout, std::vector<int>{0}) - 0.5 * eye(2)), 1e-15);
  EXPECT_LT(maxabs(partial_trace(bell, layout, std::vector<int>{1}) - 0.5 * eye(2)), 1e-15);
}

// Oracle: singular values of the 2 x 3 coefficient matrix.
TEST(PartialTrace, SchmidtSpectrumFromSvd) {
  std::mt19937_64 rng(4);
  const HilbertLayout layout(1, {3});
  for (int trial = 0; trial < 10; ++trial) {
    const Vector psi = testing::random_state(6, rng);
    Matrix coeff(2, 3);
    for (Index i = 0; i < 2; ++i)
      for (Index j = 0; j < 3; ++j) coeff(i, j) = psi(i * 3 + j);
    Eigen::JacobiSVD<Matrix> svd(coeff);
    Eigen::VectorXd sv2 = svd.singularValues().array().square();
    std::sort(sv2.data(), sv2.data() + sv2.size());

    Eigen::SelfAdjointEigenSolver<Matrix> left(partial_trace(psi, layout, std::vector<int>{0}));
    Eigen::SelfAdjointEigenSolver<Matrix> right(partial_trace(psi, layout, std::vector<int>{1}));
    EXPECT_NEAR(left.eigenvalues()(0), sv2(0), 1e-12);
    EXPECT_NEAR(left.eigenvalues()(1), sv2(1), 1e-12);
    EXPECT_NEAR(right.eigenvalues()(0), 0.0, 1e-12);
    EXPECT_NEAR(right.eigenvalues()(2), sv2(1), 1e-12);
  }
}

TEST(PartialTrace, DensityMatrixOverloadAgrees) {
  std::mt19937_64 rng(5);
  const HilbertLayout layout(2, {3});
  const Vector psi = testing::random_state(layout.dim(), rng);
  const Matrix rho = psi * psi.adjoint();
  for (const std::vector<int>& keep : {std::vector<int>{0}, std::vector<int>{1, 2}, std::vector<int>{0, 2}}) {
    const Matrix a = partial_trace(psi, layout, keep);
    const Matrix b = partial_trace(rho, layout, keep);
    EXPECT_LT(maxabs(a - b), 1e-14);
    EXPECT_NEAR(a.trace().real(), 1.0, 1e-14);
  }
  EXPECT_THROW(partial_trace(psi, layout, std::vector<int>{2, 0}), std::invalid_argument);
  EXPECT_THROW(partial_trace(psi, layout, std::vector<int>{3}), std::out_of_range);
}

TEST(BathEnsemble, Vacuum) {
  const auto c = bath_ensemble(one_mode(1.0, 4, 0.1, 1), BathInit::vacuum());
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].weight, 1.0);
  EXPECT_EQ(maxabs(c[0].state - Vector::Unit(4, 0)), 0.0);
}

TEST(BathEnsemble, ThermalWeightsAreGibbs) {
  BathSpec bath = one_mode(1.0, 3, 0.1, 1);
  bath.add_mode(2.0, 2);
  const double temp = 0.7;
  const auto c = bath_ensemble(bath, BathInit::thermal(temp));
  ASSERT_EQ(c.size(), 6u);
  double z = 0.0;
  for (int n0 = 0; n0 < 3; ++n0)
    for (int n1 = 0; n1 < 2; ++n1) z += std::exp(-(1.0 * n0 + 2.0 * n1) / temp);
  double total = 0.0;
  for (const auto& comp : c) {
    Index idx = 0;
    comp.state.cwiseAbs().maxCoeff(&idx);
    const int n0 = static_cast<int>(idx / 2);
    const int n1 = static_cast<int>(idx % 2);
    EXPECT_NEAR(comp.weight, std::exp(-(1.0 * n0 + 2.0 * n1) / temp) / z, 1e-14);
    total += comp.weight;
  }
  EXPECT_NEAR(total, 1.0, 1e-14);
}

TEST(BathEnsemble, CoherentAmplitudes) {
  const double alpha = 0.4;
  const auto c = bath_ensemble(one_mode(1.0, 5, 0.1, 1), BathInit::coherent({alpha}));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_NEAR(c[0].state.norm(), 1.0, 1e-15);
  for (int n = 1; n < 5; ++n) {
    const double ratio = (c[0].state(n) / c[0].state(n - 1)).real();
    EXPECT_NEAR(ratio, alpha / std::sqrt(static_cast<double>(n)), 1e-14);
  }
  EXPECT_THROW(bath_ensemble(one_mode(1.0, 5, 0.1, 1), BathInit::coherent({})), std::invalid_argument);
}

class StorageBaths : public ::testing::TestWithParam<int> {};

BathInit init_for(int kind) {
  switch (kind) {
    case 0:
      return BathInit::vacuum();
    case 1:
      return BathInit::thermal(0.3);
    default:
      return BathInit::coherent({0.3});
  }
}

TEST_P(StorageBaths, EncodedPairDoesNotDecohere) {
  for (const NoiseVector& nv : {NoiseVector{0, 0, 1}, NoiseVector{1, 0, 1}, NoiseVector{1, 1, 1}}) {
    const StorageResult r = run_storage_experiment(storage({nv, 1.0}, one_mode(1.0, 6, 0.2, 1), init_for(GetParam())));
    EXPECT_GE(r.encoded.min_fidelity(), 1.0 - tol::kStorageFidelity);
    EXPECT_LE(r.encoded.max_leakage(), tol::kDecodeLeakage);
    EXPECT_LT(r.bare.min_fidelity(), tol::kBareFidelityCeiling);
    EXPECT_TRUE(check_invariants(r.encoded, 1e-10).empty());
    EXPECT_TRUE(check_invariants(r.bare, 1e-10).empty());
    // Factorization witness: the register state does not move at all.
    const Matrix s_sum = pair_s_sum(nv, 0, 2);
    for (const auto& rho : r.encoded.reduced) {
      EXPECT_LE(maxabs(rho - r.encoded.reduced.front()), 1e-9);
      EXPECT_LE(maxabs(s_sum * rho), 1e-9);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllInitialBaths, StorageBaths, ::testing::Values(0, 1, 2));

TEST(Storage, DecoupledBathLeavesBareQubitAlone) {
  const StorageResult r = run_storage_experiment(storage({{1, 0, 1}, 1.0}, one_mode(1.0, 4, 0.0, 1), BathInit::thermal(0.5)));
  EXPECT_GE(r.bare.min_fidelity(), 1.0 - 1e-12);
  EXPECT_GE(r.encoded.min_fidelity(), 1.0 - 1e-12);
}

// Closed-form pure dephasing from vacuum: the off-diagonal magnitude decays
// as exp(-(2g/w)^2 (1 - cos wt)).
TEST(Storage, BareDephasingMatchesDisplacedOscillator) {
  const double w = 1.0;
  const double g = 0.2;
  const StorageResult r = run_storage_experiment(storage({{0, 0, 1}, 1.0}, one_mode(w, 14, g, 1), BathInit::vacuum()));
  double lowest = 1.0;
  for (const auto& m : r.bare.metrics) {
    const double expected = std::exp(-std::pow(2.0 * g / w, 2) * (1.0 - std::cos(w * m.time)));
    EXPECT_NEAR(m.coherence, expected, 1e-8) << m.time;
    lowest = std::min(lowest, m.coherence);
  }
  EXPECT_LT(lowest, 0.99 * r.bare.metrics.front().coherence);
}

TEST(Storage, AsymmetryLeaksAndDecoheres) {
  StorageConfig cfg = storage({{0, 0, 1}, 1.0}, one_mode(1.0, 6, 0.2, 1), BathInit::vacuum());
  double previous = -1.0;
  for (double eps : {0.0, 0.02, 0.05, 0.1}) {
    cfg.asymmetry.epsilon = eps;
    const double infid = run_storage_experiment(cfg).encoded.max_infidelity();
    EXPECT_GT(infid, previous) << eps;
    previous = infid;
  }
  EXPECT_GT(previous, 1e-4);
}

TEST(Storage, TwoPairsSharingAMode) {
  std::mt19937_64 rng(6);
  StorageConfig cfg = storage({{0.3, 0.2, 0.9}, 1.0}, one_mode(1.0, 3, 0.2, 2), BathInit::vacuum(), 2);
  cfg.logical = LogicalState::random(2, rng);
  cfg.times = linspace(0.0, 10.0, 11);
  const StorageResult r = run_storage_experiment(cfg);
  EXPECT_GE(r.encoded.min_fidelity(), 1.0 - tol::kStorageFidelity);
  EXPECT_LE(r.encoded.max_leakage(), tol::kDecodeLeakage);
}

GateConfig gate_config(const GateParams& p, double eps) {
  GateConfig cfg;
  cfg.storage = storage({{0.6, 0.3, 0.8}, 1.2}, one_mode(1.0, 3, 0.2, 2), BathInit::vacuum(), 2);
  std::mt19937_64 rng(7);
  cfg.storage.logical = LogicalState::random(2, rng);
  cfg.storage.times = linspace(0.0, 1.0, 5);
  cfg.storage.asymmetry.epsilon = eps;
  cfg.params = p;
  return cfg;
}

TEST(Gate, TrivialGateIsStorage) {
  const GateResult g = run_gate_experiment(gate_config({0, 0, 0}, 0.0));
  EXPECT_FALSE(g.branch_ambiguous);
  EXPECT_GE(g.logical_fidelity, 1.0 - 1e-12);
  EXPECT_GE(g.reference_fidelity, 1.0 - 1e-12);
  const StorageResult s = run_storage_experiment(gate_config({0, 0, 0}, 0.0).storage);
  for (std::size_t i = 0; i < s.encoded.reduced.size(); ++i) {
    EXPECT_LT(maxabs(g.run.reduced[i] - s.encoded.reduced[i]), 1e-10);
  }
}

TEST(Gate, RandomGatesDoNotDecohere) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int i = 0; i < 3; ++i) {
    const GateResult g = run_gate_experiment(gate_config({angle(rng), angle(rng), angle(rng)}, 0.0));
    EXPECT_GE(g.logical_fidelity, 1.0 - tol::kGateFidelity);
    EXPECT_LE(g.leakage, tol::kGateLeakage);
    EXPECT_LE(g.logical_action_error, tol::kLogicalAction);
    EXPECT_EQ(g.run.times.size(), 5u);
  }
}

TEST(Gate, AsymmetryDegradesMonotonically) {
  const GateParams p{0.3, 0.7, 0.2};
  double previous = -1.0;
  for (double eps : {0.0, 0.02, 0.05, 0.1}) {
    const double infid = 1.0 - run_gate_experiment(gate_config(p, eps)).logical_fidelity;
    EXPECT_GT(infid, previous) << eps;
    previous = infid;
  }
}

TEST(Gate, NeedsTwoPairs) {
  GateConfig cfg = gate_config({0.1, 0.2, 0.3}, 0.0);
  cfg.storage = storage({{0, 0, 1}, 1.0}, one_mode(1.0, 3, 0.2, 1), BathInit::vacuum());
  EXPECT_THROW(run_gate_experiment(cfg), InvalidDimension);
}

}  // namespace
}  // namespace qpair
