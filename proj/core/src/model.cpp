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

#include "qpair/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qpair/errors.hpp"
#include "qpair/tolerances.hpp"

namespace qpair {

void NoiseModel::validate() const {
  noise.validate();
  if (!std::isfinite(omega0) || omega0 < 0.0) {
    throw InvalidNoise("omega0 must be finite and >= 0");
  }
}

int BathSpec::add_mode(double frequency, int fock_dim) {
  modes.push_back({frequency, fock_dim});
  return static_cast<int>(modes.size()) - 1;
}

void BathSpec::couple(int site, int mode, double g) { coupling[{site, mode}] = g; }

std::vector<int> BathSpec::mode_dims() const {
  std::vector<int> dims;
  dims.reserve(modes.size());
  for (const auto& m : modes) dims.push_back(m.fock_dim);
  return dims;
}

std::vector<std::pair<int, double>> BathSpec::couplings_of(int site) const {
  std::vector<std::pair<int, double>> out;
  for (auto it = coupling.lower_bound({site, 0});
       it != coupling.end() && it->first.first == site; ++it) {
    out.emplace_back(it->first.second, it->second);
  }
  return out;
}

void BathSpec::validate(int site_count) const {
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (!(modes[k].frequency > 0.0) || !std::isfinite(modes[k].frequency)) {
      throw LayoutMismatch("bath mode " + std::to_string(k) + " needs frequency > 0");
    }
    if (modes[k].fock_dim < 2) {
      throw InvalidDimension("bath mode " + std::to_string(k) + " needs Fock cutoff >= 2");
    }
  }
  for (const auto& [key, g] : coupling) {
    const auto [site, mode] = key;
    if (mode < 0 || mode >= static_cast<int>(modes.size())) {
      throw LayoutMismatch("coupling references unknown mode " + std::to_string(mode));
    }
    if (site < 0 || site >= site_count) {
      throw LayoutMismatch("coupling references site " + std::to_string(site) +
                           " but only " + std::to_string(site_count) + " exist");
    }
    if (!std::isfinite(g)) throw LayoutMismatch("coupling constant must be finite");
  }
}

HilbertLayout bare_layout(int qubits, const BathSpec& bath) {
  return HilbertLayout(qubits, bath.mode_dims());
}

HilbertLayout pair_layout(int pairs, const BathSpec& bath) {
  return HilbertLayout(2 * pairs, bath.mode_dims());
}

namespace {

void check_layout(const HilbertLayout& layout, int qubits, const BathSpec& bath) {
  if (layout.qubit_count() != qubits || layout.mode_dims() != bath.mode_dims()) {
    throw LayoutMismatch("layout does not match " + std::to_string(qubits) +
                         " qubits and the bath's " + std::to_string(bath.modes.size()) +
                         " modes");
  }
}

Matrix position(int dim) {
  const Matrix a = ladder(dim);
  return a + a.adjoint();
}

Matrix number(int dim) {
  const Matrix a = ladder(dim);
  return a.adjoint() * a;
}

Matrix free_bath(const BathSpec& bath, const HilbertLayout& layout) {
  Matrix h = Matrix::Zero(layout.dim(), layout.dim());
  for (int k = 0; k < static_cast<int>(bath.modes.size()); ++k) {
    h += bath.modes[k].frequency * embed(number(bath.modes[k].fock_dim),
                                         layout.mode_factor(k), layout);
  }
  return h;
}

Matrix zeeman(double omega0, const HilbertLayout& layout) {
  Matrix h = Matrix::Zero(layout.dim(), layout.dim());
  if (omega0 == 0.0) return h;
  const Matrix z = pauli(PauliAxis::z);
  for (int q = 0; q < layout.qubit_count(); ++q) h += omega0 * embed(z, q, layout);
  return h;
}

Matrix site_coupling(const Matrix& s, int qubit, int mode, double g, const BathSpec& bath,
                     const HilbertLayout& layout) {
  const FactorOp ops[] = {{qubit, s},
                          {layout.mode_factor(mode), position(bath.modes[mode].fock_dim)}};
  return g * embed_product(ops, layout);
}

}  // namespace

Matrix assemble_h_bare(int qubits, const NoiseModel& nm, const BathSpec& bath,
                       const HilbertLayout& layout) {
  nm.validate();
  bath.validate(qubits);
  check_layout(layout, qubits, bath);

  const Matrix s = build_s(nm.noise);
  Matrix h = zeeman(nm.omega0, layout) + free_bath(bath, layout);
  for (int q = 0; q < qubits; ++q) {
    for (const auto& [mode, g] : bath.couplings_of(q)) {
      h += site_coupling(s, q, mode, g, bath, layout);
    }
  }
  return h;
}

Matrix assemble_h_pairs(int pairs, const NoiseModel& nm, const BathSpec& bath,
                        AsymmetryKnob asym, const HilbertLayout& layout) {
  nm.validate();
  bath.validate(pairs);
  check_layout(layout, 2 * pairs, bath);

  const Matrix s = build_s(nm.noise);
  Matrix h = zeeman(nm.omega0, layout) + free_bath(bath, layout);
  for (int l = 0; l < pairs; ++l) {
    for (const auto& [mode, g] : bath.couplings_of(l)) {
      h += site_coupling(s, data_qubit(l), mode, g, bath, layout);
      h += site_coupling(s, ancilla_qubit(l), mode, g * (1.0 + asym.epsilon), bath, layout);
    }
  }
  return h;
}

DriveField drive_field(const NoiseModel& nm) {
  nm.validate();
  const NoiseVector& nv = nm.noise;
  if (nv.lambda3 == 0.0) {
    if (nm.omega0 != 0.0) {
      throw UndrivableModel(
          "no drive satisfies g1:g2:omega0 = lambda1:lambda2:lambda3 when lambda3 = 0 "
          "and omega0 != 0");
    }
    return {};
  }
  const double kappa = nm.omega0 / nv.lambda3;
  return {kappa * nv.lambda1, kappa * nv.lambda2, kappa};
}

Matrix assemble_h_drive(int pairs, const DriveField& df, const HilbertLayout& layout) {
  if (layout.qubit_count() != 2 * pairs) {
    throw LayoutMismatch("drive: layout does not hold " + std::to_string(pairs) + " pairs");
  }
  const Matrix single = df.g1 * pauli(PauliAxis::x) + df.g2 * pauli(PauliAxis::y);
  Matrix h = Matrix::Zero(layout.dim(), layout.dim());
  if (df.g1 == 0.0 && df.g2 == 0.0) return h;
  for (int q = 0; q < 2 * pairs; ++q) h += embed(single, q, layout);
  return h;
}

Matrix assemble_h_total(int pairs, const NoiseModel& nm, const BathSpec& bath,
                        AsymmetryKnob asym, const HilbertLayout& layout) {
  const DriveField df = drive_field(nm);
  Matrix h = assemble_h_pairs(pairs, nm, bath, asym, layout) +
             assemble_h_drive(pairs, df, layout);
  if (asym.epsilon == 0.0) {
    const double residual = max_abs(h - assemble_h_total_s_form(pairs, nm, bath, layout));
    if (residual > tol::kOperator) {
      throw std::logic_error("assemble_h_total: drive-eliminated form disagrees with the "
                             "S-form by " + std::to_string(residual));
    }
  }
  return h;
}

Matrix pair_s_sum(const NoiseVector& nv, int pair, int qubits) {
  const HilbertLayout reg(qubits, {});
  const Matrix s = build_s(nv);
  return embed(s, data_qubit(pair), reg) + embed(s, ancilla_qubit(pair), reg);
}

Matrix assemble_h_total_s_form(int pairs, const NoiseModel& nm, const BathSpec& bath,
                               const HilbertLayout& layout) {
  const DriveField df = drive_field(nm);
  bath.validate(pairs);
  check_layout(layout, 2 * pairs, bath);

  const HilbertLayout bath_only(0, bath.mode_dims());
  const Index bath_dim = bath_only.dim();
  const Index sys_dim = layout.system_dim();

  Matrix h = kron(identity(sys_dim), free_bath(bath, bath_only));
  for (int l = 0; l < pairs; ++l) {
    Matrix field = df.kappa * identity(bath_dim);
    for (const auto& [mode, g] : bath.couplings_of(l)) {
      field += g * embed(position(bath.modes[mode].fock_dim), bath_only.mode_factor(mode),
                         bath_only);
    }
    h += kron(pair_s_sum(nm.noise, l, 2 * pairs), field);
  }
  return h;
}

Matrix bare_system_hamiltonian(int qubits, const NoiseModel& nm) {
  nm.validate();
  return zeeman(nm.omega0, HilbertLayout(qubits, {}));
}

Matrix pair_system_hamiltonian(int pairs, const NoiseModel& nm) {
  const HilbertLayout reg(2 * pairs, {});
  return zeeman(nm.omega0, reg) + assemble_h_drive(pairs, drive_field(nm), reg);
}

}  // namespace qpair
