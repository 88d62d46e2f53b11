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

#include "qpair/evolve.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qpair/errors.hpp"
#include "qpair/tolerances.hpp"

namespace qpair {

namespace {

using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_times(std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0) {
      throw std::invalid_argument("evolution times must be finite and nonnegative");
    }
    if (i > 0 && times[i] < times[i - 1]) {
      throw std::invalid_argument("evolution times must be sorted ascending");
    }
  }
}

// Register density matrix when the register is the leading block of psi.
Matrix leading_reduced(const Vector& psi, Index system_dim) {
  Eigen::Map<const RowMajor> m(psi.data(), system_dim, psi.size() / system_dim);
  return m * m.adjoint();
}

std::vector<double> top_level_populations(const Vector& psi, const HilbertLayout& layout) {
  const int modes = layout.mode_count();
  std::vector<double> pops(static_cast<std::size_t>(modes), 0.0);
  if (modes == 0) return pops;
  const auto& dims = layout.mode_dims();
  const Index bath_dim = layout.bath_dim();
  for (Index i = 0; i < psi.size(); ++i) {
    const double p = std::norm(psi(i));
    if (p == 0.0) continue;
    Index rest = i % bath_dim;
    for (int k = modes - 1; k >= 0; --k) {
      const int d = dims[static_cast<std::size_t>(k)];
      if (rest % d == d - 1) pops[static_cast<std::size_t>(k)] += p;
      rest /= d;
    }
  }
  return pops;
}

// Flat index of every (kept, traced) digit combination.
std::vector<std::vector<Index>> split_indices(const HilbertLayout& layout,
                                              std::span<const int> keep, Index& keep_dim,
                                              Index& rest_dim) {
  const auto dims = layout.dims();
  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= n) throw std::out_of_range("partial_trace: factor out of range");
    if (i > 0 && keep[i] <= keep[i - 1]) {
      throw std::invalid_argument("partial_trace: keep must be strictly ascending");
    }
    kept[static_cast<std::size_t>(keep[i])] = true;
  }
  keep_dim = 1;
  rest_dim = 1;
  for (int f = 0; f < n; ++f) (kept[static_cast<std::size_t>(f)] ? keep_dim : rest_dim) *= dims[static_cast<std::size_t>(f)];

  std::vector<std::vector<Index>> map(static_cast<std::size_t>(keep_dim),
                                      std::vector<Index>(static_cast<std::size_t>(rest_dim)));
  const Index total = layout.dim();
  for (Index i = 0; i < total; ++i) {
    Index rem = i;
    Index k = 0, r = 0, kmul = 1, rmul = 1;
    for (int f = n - 1; f >= 0; --f) {
      const int d = dims[static_cast<std::size_t>(f)];
      const Index digit = rem % d;
      rem /= d;
      if (kept[static_cast<std::size_t>(f)]) {
        k += digit * kmul;
        kmul *= d;
      } else {
        r += digit * rmul;
        rmul *= d;
      }
    }
    map[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)] = i;
  }
  return map;
}

}  // namespace

SpectralPropagator::SpectralPropagator(const Matrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw InvalidDimension("propagator: Hamiltonian must be square and nonempty");
  }
  const double asym = hermitian_residual(h);
  if (asym > tol::kHermitianInput) {
    throw NonHermitian("propagator: Hamiltonian is not Hermitian (residual " +
                       std::to_string(asym) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()));
  if (solver.info() != Eigen::Success) throw Error("propagator: eigendecomposition failed");
  energies_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

Vector SpectralPropagator::evolve(const Vector& psi0, double t) const {
  if (psi0.size() != dim()) throw InvalidDimension("propagator: state dimension mismatch");
  Vector coeff = vectors_.adjoint() * psi0;
  for (Index i = 0; i < coeff.size(); ++i) coeff(i) *= std::polar(1.0, -energies_(i) * t);
  return vectors_ * coeff;
}

Matrix SpectralPropagator::unitary(double t) const {
  Vector phases(dim());
  for (Index i = 0; i < dim(); ++i) phases(i) = std::polar(1.0, -energies_(i) * t);
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

double EvolutionResult::min_fidelity() const {
  double f = std::numeric_limits<double>::infinity();
  for (const auto& m : metrics) f = std::min(f, m.fidelity);
  return f;
}

double EvolutionResult::max_leakage() const {
  double l = 0.0;
  for (const auto& m : metrics) l = std::max(l, m.leakage);
  return l;
}

double EvolutionResult::max_top_fock_population() const {
  double p = 0.0;
  for (const auto& m : metrics) {
    for (double x : m.top_fock_population) p = std::max(p, x);
  }
  return p;
}

bool EvolutionResult::truncation_flagged() const {
  return max_top_fock_population() > tol::kTruncationFlag;
}

EvolutionResult evolve_exact(const Matrix& h, const Vector& psi0, std::span<const double> times) {
  check_times(times);
  const SpectralPropagator prop(h);
  EvolutionResult out;
  out.times.assign(times.begin(), times.end());
  out.states.reserve(times.size());
  for (double t : times) out.states.push_back(prop.evolve(psi0, t));
  return out;
}

Matrix partial_trace(const Vector& psi, const HilbertLayout& layout, std::span<const int> keep) {
  if (psi.size() != layout.dim()) throw InvalidDimension("partial_trace: state dimension mismatch");
  Index keep_dim = 0, rest_dim = 0;
  const auto map = split_indices(layout, keep, keep_dim, rest_dim);
  Matrix m(keep_dim, rest_dim);
  for (Index k = 0; k < keep_dim; ++k) {
    for (Index r = 0; r < rest_dim; ++r) {
      m(k, r) = psi(map[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)]);
    }
  }
  return m * m.adjoint();
}

Matrix partial_trace(const Matrix& rho, const HilbertLayout& layout, std::span<const int> keep) {
  if (rho.rows() != layout.dim() || rho.cols() != layout.dim()) {
    throw InvalidDimension("partial_trace: density matrix dimension mismatch");
  }
  Index keep_dim = 0, rest_dim = 0;
  const auto map = split_indices(layout, keep, keep_dim, rest_dim);
  Matrix out = Matrix::Zero(keep_dim, keep_dim);
  for (Index a = 0; a < keep_dim; ++a) {
    for (Index b = 0; b < keep_dim; ++b) {
      Complex acc{0.0, 0.0};
      for (Index r = 0; r < rest_dim; ++r) {
        acc += rho(map[static_cast<std::size_t>(a)][static_cast<std::size_t>(r)],
                   map[static_cast<std::size_t>(b)][static_cast<std::size_t>(r)]);
      }
      out(a, b) = acc;
    }
  }
  return out;
}

double state_fidelity(const Matrix& rho, const Vector& reference) {
  if (rho.rows() != reference.size()) throw InvalidDimension("fidelity: dimension mismatch");
  return reference.dot(rho * reference).real();
}

double purity(const Matrix& rho) { return (rho * rho).trace().real(); }

std::vector<std::string> check_invariants(const EvolutionResult& result, double tol) {
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < result.states.size(); ++i) {
    const double err = std::abs(result.states[i].norm() - 1.0);
    if (err > tol) bad.push_back("state " + std::to_string(i) + " norm off by " + std::to_string(err));
  }
  for (std::size_t i = 0; i < result.reduced.size(); ++i) {
    const Matrix& rho = result.reduced[i];
    if (hermitian_residual(rho) > tol) bad.push_back("reduced " + std::to_string(i) + " not Hermitian");
    if (std::abs(rho.trace() - Complex(1.0)) > tol) {
      bad.push_back("reduced " + std::to_string(i) + " trace != 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) {
      bad.push_back("reduced " + std::to_string(i) + " has negative eigenvalue");
    }
  }
  return bad;
}

std::vector<BathComponent> bath_ensemble(const BathSpec& bath, const BathInit& init) {
  const auto dims = bath.mode_dims();
  const std::size_t modes = dims.size();

  // Per-mode amplitude (pure) or population (thermal) over Fock levels.
  std::vector<Eigen::VectorXd> level(modes);
  for (std::size_t k = 0; k < modes; ++k) {
    const int d = dims[k];
    Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
    switch (init.kind) {
      case BathInit::Kind::vacuum:
        v(0) = 1.0;
        break;
      case BathInit::Kind::thermal: {
        if (!(init.temperature > 0.0)) throw std::invalid_argument("thermal bath needs T > 0");
        const double beta_w = bath.modes[k].frequency / init.temperature;
        for (int n = 0; n < d; ++n) v(n) = std::exp(-beta_w * n);
        v /= v.sum();
        break;
      }
      case BathInit::Kind::coherent: {
        if (init.amplitudes.size() != modes) {
          throw std::invalid_argument("coherent bath needs one amplitude per mode");
        }
        const double alpha = init.amplitudes[k];
        double term = 1.0;  // alpha^n / sqrt(n!)
        for (int n = 0; n < d; ++n) {
          if (n > 0) term *= alpha / std::sqrt(static_cast<double>(n));
          v(n) = term;
        }
        v.normalize();  // also removes exp(-|alpha|^2 / 2)
        break;
      }
    }
    level[k] = v;
  }

  std::vector<BathComponent> out;
  if (init.kind != BathInit::Kind::thermal) {
    Vector state = Vector::Ones(1);
    for (const auto& v : level) state = kron(state, Vector(v.cast<Complex>()));
    out.push_back({1.0, std::move(state)});
    return out;
  }

  Index total = 1;
  for (int d : dims) total *= d;
  for (Index cfg = 0; cfg < total; ++cfg) {
    double w = 1.0;
    Index rem = cfg;
    for (std::size_t k = modes; k-- > 0;) {
      w *= level[k](rem % dims[k]);
      rem /= dims[k];
    }
    if (w == 0.0) continue;
    Vector state = Vector::Zero(total);
    state(cfg) = 1.0;
    out.push_back({w, std::move(state)});
  }
  return out;
}

EvolutionResult evolve_observed(const Matrix& h, const RunProbe& probe,
                                std::span<const BathComponent> bath,
                                std::span<const double> times) {
  check_times(times);
  const HilbertLayout& layout = probe.layout;
  const Index sys_dim = layout.system_dim();
  if (h.rows() != layout.dim()) throw InvalidDimension("evolve: Hamiltonian does not match layout");
  if (probe.system_hamiltonian.rows() != sys_dim || probe.system_initial.size() != sys_dim ||
      probe.logical_basis.rows() != sys_dim) {
    throw InvalidDimension("evolve: probe does not match the register dimension");
  }
  if (probe.dfs_basis && probe.dfs_basis->rows() != sys_dim) {
    throw InvalidDimension("evolve: DFS basis does not match the register dimension");
  }
  if (bath.empty()) throw std::invalid_argument("evolve: empty bath ensemble");

  const SpectralPropagator full(h);
  const SpectralPropagator sys(probe.system_hamiltonian);

  std::vector<Vector> initial;
  initial.reserve(bath.size());
  for (const auto& c : bath) {
    if (c.state.size() != layout.bath_dim()) {
      throw InvalidDimension("evolve: bath component does not match layout");
    }
    initial.push_back(kron(probe.system_initial, c.state));
  }

  EvolutionResult out;
  out.times.assign(times.begin(), times.end());
  const bool keep_states = bath.size() == 1;
  for (double t : times) {
    MetricRecord rec;
    rec.time = t;
    rec.top_fock_population.assign(static_cast<std::size_t>(layout.mode_count()), 0.0);
    Matrix rho = Matrix::Zero(sys_dim, sys_dim);
    double leak_sq = 0.0;
    for (std::size_t c = 0; c < bath.size(); ++c) {
      const double w = bath[c].weight;
      Vector psi = full.evolve(initial[c], t);
      rho += w * leading_reduced(psi, sys_dim);
      const auto pops = top_level_populations(psi, layout);
      for (std::size_t k = 0; k < pops.size(); ++k) rec.top_fock_population[k] += w * pops[k];
      if (probe.dfs_basis) {
        const double l = dfs_leakage(psi, *probe.dfs_basis);
        leak_sq += w * l * l;
      }
      if (keep_states) out.states.push_back(std::move(psi));
    }
    rec.leakage = std::sqrt(leak_sq);

    const Matrix u_sys = sys.unitary(t);
    rec.fidelity = state_fidelity(rho, u_sys * probe.system_initial);
    const Matrix logical = probe.logical_basis.adjoint() * (u_sys.adjoint() * rho * u_sys) *
                           probe.logical_basis;
    double coherence = 0.0;
    for (Index i = 0; i < logical.rows(); ++i) {
      for (Index j = 0; j < logical.cols(); ++j) {
        if (i != j) coherence += std::abs(logical(i, j));
      }
    }
    rec.coherence = coherence;
    out.reduced.push_back(std::move(rho));
    out.metrics.push_back(std::move(rec));
  }
  return out;
}

namespace {

void check_storage(const StorageConfig& cfg) {
  if (cfg.pairs < 1) throw InvalidDimension("storage experiment needs at least one pair");
  if (cfg.logical.amplitudes.size() != (Index{1} << cfg.pairs)) {
    throw InvalidDimension("logical state does not match the pair count");
  }
}

RunProbe encoded_probe(const StorageConfig& cfg) {
  RunProbe probe;
  probe.layout = pair_layout(cfg.pairs, cfg.bath);
  probe.system_hamiltonian = pair_system_hamiltonian(cfg.pairs, cfg.noise);
  probe.system_initial = encode(cfg.logical, cfg.noise.noise, cfg.pairs);
  probe.logical_basis = pair_dfs_basis(cfg.noise.noise, cfg.pairs);
  probe.dfs_basis = probe.logical_basis;
  return probe;
}

}  // namespace

StorageResult run_storage_experiment(const StorageConfig& cfg) {
  check_storage(cfg);
  const auto bath = bath_ensemble(cfg.bath, cfg.bath_init);

  StorageResult out;
  {
    const RunProbe probe = encoded_probe(cfg);
    const Matrix h = assemble_h_total(cfg.pairs, cfg.noise, cfg.bath, cfg.asymmetry, probe.layout);
    out.encoded = evolve_observed(h, probe, bath, cfg.times);
  }
  {
    // Data qubit l sees exactly the couplings of pair l.
    RunProbe probe;
    probe.layout = bare_layout(cfg.pairs, cfg.bath);
    probe.system_hamiltonian = bare_system_hamiltonian(cfg.pairs, cfg.noise);
    probe.logical_basis = tensor_power(s_eigenbasis(cfg.noise.noise).rotation, cfg.pairs);
    probe.system_initial = probe.logical_basis * cfg.logical.amplitudes;
    const Matrix h = assemble_h_bare(cfg.pairs, cfg.noise, cfg.bath, probe.layout);
    out.bare = evolve_observed(h, probe, bath, cfg.times);
  }
  return out;
}

GateResult run_gate_experiment(const GateConfig& cfg) {
  const StorageConfig& st = cfg.storage;
  if (st.pairs != 2) throw InvalidDimension("gate experiment acts on exactly two pairs");
  check_storage(st);
  if (!(cfg.duration > 0.0)) throw std::invalid_argument("gate duration must be > 0");

  const NoiseVector& nv = st.noise.noise;
  const Matrix u = u_pair_gate(cfg.params, nv);
  const GateHamiltonian gh = gate_hamiltonian(u);
  const Matrix h_gate = gh.hamiltonian / cfg.duration;

  RunProbe probe = encoded_probe(st);
  probe.system_hamiltonian += h_gate;
  const Matrix h = assemble_h_total(st.pairs, st.noise, st.bath, st.asymmetry, probe.layout) +
                   kron(h_gate, identity(probe.layout.bath_dim()));
  const auto bath = bath_ensemble(st.bath, st.bath_init);

  // Evaluate the requested grid and t = duration in a single pass.
  std::vector<double> times = st.times;
  auto at = std::lower_bound(times.begin(), times.end(), cfg.duration);
  const bool inserted = at == times.end() || *at != cfg.duration;
  const auto end_index = static_cast<std::size_t>(at - times.begin());
  if (inserted) times.insert(at, cfg.duration);

  GateResult out;
  out.branch_ambiguous = gh.branch_ambiguous;
  out.run = evolve_observed(h, probe, bath, times);
  const Matrix rho_end = out.run.reduced[end_index];
  out.reference_fidelity = out.run.metrics[end_index].fidelity;
  out.leakage = out.run.metrics[end_index].leakage;
  if (inserted) {
    const auto offset = static_cast<std::ptrdiff_t>(end_index);
    out.run.times.erase(out.run.times.begin() + offset);
    out.run.reduced.erase(out.run.reduced.begin() + offset);
    out.run.metrics.erase(out.run.metrics.begin() + offset);
    if (!out.run.states.empty()) out.run.states.erase(out.run.states.begin() + offset);
  }

  const Matrix bare = u_bare_gate(cfg.params);
  const Matrix basis = *probe.dfs_basis;
  const Matrix rho_logical = basis.adjoint() * rho_end * basis;
  out.logical_fidelity = state_fidelity(rho_logical, bare * st.logical.amplitudes);

  double err = 0.0;
  for (Index k = 0; k < bare.cols(); ++k) {
    Vector e = Vector::Zero(bare.cols());
    e(k) = 1.0;
    const LogicalState image = decode(u * encode(LogicalState{e}, nv, 2), nv, 2);
    err = std::max(err, max_abs(image.amplitudes - bare.col(k)));
  }
  out.logical_action_error = err;
  return out;
}

}  // namespace qpair
