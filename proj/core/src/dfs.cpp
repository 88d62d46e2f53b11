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

#include "qpair/dfs.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qpair/errors.hpp"
#include "qpair/tolerances.hpp"

namespace qpair {

namespace {

Vector basis_vector(Index dim, Index k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return v;
}

// R^{(x) n} |bits>, most significant bit on qubit 0.
Vector rotated_product(const Matrix& rotation, std::uint64_t bits, int n) {
  Vector out = Vector::Ones(1);
  for (int q = 0; q < n; ++q) {
    const int b = static_cast<int>((bits >> (n - 1 - q)) & 1U);
    out = kron(out, Vector(rotation.col(b)));
  }
  return out;
}

std::string format_number(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view token) {
  double x = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), x);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw std::invalid_argument("circuit text: bad number '" + std::string(token) + "'");
  }
  return x;
}

int parse_int(const std::string& token) {
  int x = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), x);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw std::invalid_argument("circuit text: bad integer '" + token + "'");
  }
  return x;
}

}  // namespace

DfsSubspace coherence_preserving_subspace(const NoiseVector& nv, int m) {
  if (m < 1 || m > kMaxClusterHalf) {
    throw InvalidDimension("cluster half-size m must lie in [1, " +
                           std::to_string(kMaxClusterHalf) + "], got " + std::to_string(m));
  }
  const Matrix rotation = s_eigenbasis(nv).rotation;
  const int n = 2 * m;
  const std::uint64_t count = std::uint64_t{1} << n;

  DfsSubspace out;
  out.cluster_size = n;
  out.basis.resize(static_cast<Index>(count), static_cast<Index>(central_binomial(m)));
  Index col = 0;
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    if (std::popcount(bits) != m) continue;
    out.basis.col(col++) = rotated_product(rotation, bits, n);
  }
  return out;
}

std::uint64_t central_binomial(int m) {
  if (m < 0) throw std::invalid_argument("central_binomial: m must be >= 0");
  if (m > 33) throw std::overflow_error("central_binomial: C(2m, m) exceeds 64 bits");
  unsigned __int128 c = 1;
  for (int i = 1; i <= m; ++i) c = c * static_cast<unsigned>(m + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(c);
}

double log2_central_binomial(int m) {
  if (m <= 33) return std::log2(static_cast<double>(central_binomial(m)));
  return (std::lgamma(2.0 * m + 1.0) - 2.0 * std::lgamma(m + 1.0)) / std::numbers::ln2;
}

Efficiency efficiency(int m) {
  if (m < 1) throw InvalidDimension("efficiency: m must be >= 1");
  return {log2_central_binomial(m) / (2.0 * m),
          1.0 - std::log2(std::numbers::pi * m) / (4.0 * m)};
}

Circuit::Circuit(int width) : width_(width) {
  if (width < 1 || width > 20) throw InvalidDimension("circuit width out of range");
}

void Circuit::check_qubit(int q) const {
  if (q < 0 || q >= width_) {
    throw std::out_of_range("circuit: qubit " + std::to_string(q) + " outside width " +
                            std::to_string(width_));
  }
}

void Circuit::add_rotation(int qubit, const Matrix& u) {
  check_qubit(qubit);
  if (u.rows() != 2 || u.cols() != 2) throw InvalidDimension("rotation must be 2x2");
  if (unitary_residual(u) > tol::kOperator) throw NonUnitary("rotation is not unitary");
  gates_.push_back({Gate::Kind::rotation, {qubit}, u, 0});
}

void Circuit::add_cnot(int control, int target, int control_state) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw std::invalid_argument("cnot: control equals target");
  if (control_state != 0 && control_state != 1) {
    throw std::invalid_argument("cnot: control state must be 0 or 1");
  }
  gates_.push_back({Gate::Kind::cnot, {control, target}, Matrix(), control_state});
}

Vector Circuit::apply(Vector state) const {
  const Index reg = Index{1} << width_;
  if (state.size() % reg != 0) {
    throw InvalidDimension("circuit: state dimension is not a multiple of 2^width");
  }
  const Index trailing = state.size() / reg;
  // Stride of qubit q in the flat index.
  auto stride = [&](int q) { return (Index{1} << (width_ - 1 - q)) * trailing; };

  for (const auto& g : gates_) {
    if (g.kind == Gate::Kind::rotation) {
      const Index s = stride(g.targets[0]);
      for (Index i = 0; i < state.size(); ++i) {
        if ((i / s) % 2 != 0) continue;
        const Complex a0 = state(i);
        const Complex a1 = state(i + s);
        state(i) = g.matrix(0, 0) * a0 + g.matrix(0, 1) * a1;
        state(i + s) = g.matrix(1, 0) * a0 + g.matrix(1, 1) * a1;
      }
    } else {
      const Index sc = stride(g.targets[0]);
      const Index st = stride(g.targets[1]);
      for (Index i = 0; i < state.size(); ++i) {
        if ((i / st) % 2 != 0) continue;
        if ((i / sc) % 2 != g.control_state) continue;
        std::swap(state(i), state(i + st));
      }
    }
  }
  return state;
}

Matrix Circuit::unitary() const {
  const Index dim = Index{1} << width_;
  Matrix u(dim, dim);
  for (Index k = 0; k < dim; ++k) u.col(k) = apply(basis_vector(dim, k));
  return u;
}

std::string Circuit::to_text() const {
  std::ostringstream out;
  out << "qubits " << width_ << '\n';
  for (const auto& g : gates_) {
    if (g.kind == Gate::Kind::rotation) {
      out << "rotation " << g.targets[0];
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          out << ' ' << format_number(g.matrix(r, c).real()) << ' '
              << format_number(g.matrix(r, c).imag());
        }
      }
    } else {
      out << "cnot " << g.targets[0] << ' ' << g.targets[1] << ' ' << g.control_state;
    }
    out << '\n';
  }
  return out.str();
}

Circuit Circuit::from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Circuit> circuit;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& why) {
      return std::invalid_argument("circuit text line " + std::to_string(line_no) + ": " + why);
    };
    if (!circuit) {
      if (tok.size() != 2 || tok[0] != "qubits") throw fail("expected 'qubits <w>' header");
      circuit.emplace(parse_int(tok[1]));
      continue;
    }
    if (tok[0] == "rotation") {
      if (tok.size() != 10) throw fail("rotation needs a qubit and 8 numbers");
      Matrix u(2, 2);
      for (int k = 0; k < 4; ++k) {
        u(k / 2, k % 2) = Complex(parse_number(tok[2 + 2 * k]), parse_number(tok[3 + 2 * k]));
      }
      circuit->add_rotation(parse_int(tok[1]), u);
    } else if (tok[0] == "cnot") {
      if (tok.size() != 4) throw fail("cnot needs control, target, control_state");
      circuit->add_cnot(parse_int(tok[1]), parse_int(tok[2]), parse_int(tok[3]));
    } else {
      throw fail("unknown gate kind '" + tok[0] + "'");
    }
  }
  if (!circuit) throw std::invalid_argument("circuit text: missing header");
  return *circuit;
}

Circuit build_encode_circuit(int pairs, const NoiseVector& nv) {
  if (pairs < 1) throw InvalidDimension("encode circuit needs at least one pair");
  const Matrix r = s_eigenbasis(nv).rotation;
  const Matrix r_inv = r.adjoint();
  Circuit c(2 * pairs);
  for (int l = 0; l < pairs; ++l) {
    const int data = 2 * l;
    const int anc = 2 * l + 1;
    c.add_rotation(data, r_inv);
    c.add_rotation(anc, r_inv);
    c.add_cnot(data, anc, 0);  // fires on |+1>, i.e. S-frame index 0
    c.add_rotation(data, r);
    c.add_rotation(anc, r);
  }
  return c;
}

int LogicalState::qubits() const {
  return std::countr_zero(static_cast<std::uint64_t>(amplitudes.size()));
}

LogicalState LogicalState::from_amplitudes(Vector amplitudes) {
  const auto n = static_cast<std::uint64_t>(amplitudes.size());
  if (n < 2 || !std::has_single_bit(n)) {
    throw InvalidDimension("logical state length must be a power of two >= 2");
  }
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidDimension("logical state must have finite nonzero norm");
  }
  return LogicalState{amplitudes / norm};
}

LogicalState LogicalState::random(int qubits, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(Index{1} << qubits);
  for (Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return from_amplitudes(std::move(v));
}

Vector encode(const LogicalState& state, const NoiseVector& nv, int pairs) {
  if (state.amplitudes.size() != (Index{1} << pairs)) {
    throw InvalidDimension("encode: logical state has " +
                           std::to_string(state.amplitudes.size()) + " amplitudes, need 2^" +
                           std::to_string(pairs));
  }
  const Matrix r = s_eigenbasis(nv).rotation;
  const int n = 2 * pairs;
  Vector input = Vector::Zero(Index{1} << n);
  for (Index k = 0; k < state.amplitudes.size(); ++k) {
    if (state.amplitudes(k) == Complex(0.0)) continue;
    // Spread logical bit l onto data qubit 2l; ancilla bits stay 0 (|+1>).
    std::uint64_t bits = 0;
    for (int l = 0; l < pairs; ++l) {
      const std::uint64_t b = (static_cast<std::uint64_t>(k) >> (pairs - 1 - l)) & 1U;
      bits |= b << (n - 1 - 2 * l);
    }
    input += state.amplitudes(k) * rotated_product(r, bits, n);
  }
  return build_encode_circuit(pairs, nv).apply(std::move(input));
}

Matrix pair_dfs_basis(const NoiseVector& nv, int pairs) {
  const Index logical = Index{1} << pairs;
  Matrix basis(Index{1} << (2 * pairs), logical);
  for (Index k = 0; k < logical; ++k) {
    basis.col(k) = encode(LogicalState{basis_vector(logical, k)}, nv, pairs);
  }
  return basis;
}

double dfs_leakage(const Vector& state, const Matrix& basis) {
  if (basis.rows() == 0 || state.size() % basis.rows() != 0) {
    throw InvalidDimension("dfs_leakage: state dimension is not a multiple of the register");
  }
  const Index trailing = state.size() / basis.rows();
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> psi(state.data(), basis.rows(), trailing);
  const Matrix inside = basis * (basis.adjoint() * psi);
  return (psi - inside).norm();
}

LogicalState decode(const Vector& encoded, const NoiseVector& nv, int pairs) {
  const Index reg = Index{1} << (2 * pairs);
  if (encoded.size() != reg) {
    throw InvalidDimension("decode: expected a " + std::to_string(reg) +
                           "-dimensional register state");
  }
  const double leaked = dfs_leakage(encoded, pair_dfs_basis(nv, pairs));
  if (leaked > tol::kDecodeLeakage) {
    throw LeakageError("decode: state has norm " + std::to_string(leaked) +
                           " outside the coherence-preserving subspace",
                       leaked);
  }
  const Matrix r_inv = s_eigenbasis(nv).rotation.adjoint();
  const int n = 2 * pairs;
  Circuit to_frame(n);
  for (int q = 0; q < n; ++q) to_frame.add_rotation(q, r_inv);
  const Vector frame = to_frame.apply(build_encode_circuit(pairs, nv).apply(encoded));

  Vector logical(Index{1} << pairs);
  for (Index k = 0; k < logical.size(); ++k) {
    std::uint64_t bits = 0;
    for (int l = 0; l < pairs; ++l) {
      const std::uint64_t b = (static_cast<std::uint64_t>(k) >> (pairs - 1 - l)) & 1U;
      bits |= b << (n - 1 - 2 * l);
    }
    logical(k) = frame(static_cast<Index>(bits));
  }
  return LogicalState::from_amplitudes(std::move(logical));
}

}  // namespace qpair
