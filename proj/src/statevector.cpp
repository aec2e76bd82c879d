// Copyright 2026 The cpvqd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cpvqd/statevector.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "cpvqd/errors.hpp"

namespace cpvqd {

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 30) {
    throw DimensionError("Statevector: unsupported qubit count " +
                         std::to_string(n_qubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, cplx{});
  amps_[0] = 1.0;
}

Statevector Statevector::basis_state(int n_qubits, std::uint64_t index) {
  Statevector s(n_qubits);
  if (index >= s.dim()) throw DimensionError("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

Statevector Statevector::from_amplitudes(std::vector<cplx> amplitudes) {
  const std::size_t size = amplitudes.size();
  if (size < 2 || !std::has_single_bit(size)) {
    throw DimensionError("amplitude count must be a power of two >= 2");
  }
  Statevector s(std::countr_zero(size));
  s.amps_ = std::move(amplitudes);
  return s;
}

double Statevector::norm() const {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return std::sqrt(total);
}

void Statevector::normalize() {
  const double n = norm();
  if (n == 0.0) throw ContractError("cannot normalize the zero vector");
  for (auto& a : amps_) a /= n;
}

void Statevector::reset() {
  std::fill(amps_.begin(), amps_.end(), cplx{});
  amps_[0] = 1.0;
}

std::uint64_t Statevector::mask(int qubit) const {
  if (qubit < 0 || qubit >= n_qubits_) {
    throw DimensionError("qubit " + std::to_string(qubit) + " out of range");
  }
  return std::uint64_t{1} << (n_qubits_ - 1 - qubit);
}

void Statevector::apply_ry(int qubit, double theta) {
  const std::uint64_t m = mask(qubit);
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const std::uint64_t d = dim();
  for (std::uint64_t i = 0; i < d; ++i) {
    if (i & m) continue;
    const cplx a0 = amps_[i];
    const cplx a1 = amps_[i | m];
    amps_[i] = c * a0 - s * a1;
    amps_[i | m] = s * a0 + c * a1;
  }
}

void Statevector::apply_x(int qubit) {
  const std::uint64_t m = mask(qubit);
  for (std::uint64_t i = 0; i < dim(); ++i) {
    if (!(i & m)) std::swap(amps_[i], amps_[i | m]);
  }
}

void Statevector::apply_cx(int control, int target) {
  const std::uint64_t mc = mask(control);
  const std::uint64_t mt = mask(target);
  if (mc == mt) throw DimensionError("CX control equals target");
  for (std::uint64_t i = 0; i < dim(); ++i) {
    if ((i & mc) && !(i & mt)) std::swap(amps_[i], amps_[i | mt]);
  }
}

void Statevector::apply_cz(int a, int b) {
  const std::uint64_t both = mask(a) | mask(b);
  if (std::popcount(both) != 2) throw DimensionError("CZ on a single qubit");
  for (std::uint64_t i = 0; i < dim(); ++i) {
    if ((i & both) == both) amps_[i] = -amps_[i];
  }
}

void Statevector::apply_pauli(const PauliString& p) {
  if (p.width() != n_qubits_) throw DimensionError("apply_pauli: width mismatch");
  std::vector<cplx> out(amps_.size());
  for (std::uint64_t b = 0; b < dim(); ++b) {
    out[b ^ p.x_mask()] = p.apply_phase(b) * amps_[b];
  }
  amps_ = std::move(out);
}

// ---------------------------------------------------------------------------

void prepare_ansatz(const AnsatzSpec& spec, std::span<const double> params,
                    Statevector& out) {
  if (spec.layers < 0) throw DimensionError("negative layer count");
  if (static_cast<int>(params.size()) != spec.parameter_count()) {
    throw DimensionError("ansatz expects " +
                         std::to_string(spec.parameter_count()) +
                         " parameters, got " + std::to_string(params.size()));
  }
  const int n = spec.n_qubits;
  if (out.n_qubits() != n) {
    out = Statevector(n);
  } else {
    out.reset();
  }
  for (int layer = 0; layer <= spec.layers; ++layer) {
    for (int q = 0; q < n; ++q) out.apply_ry(q, params[layer * n + q]);
    if (layer == spec.layers) break;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (spec.entangler == Entangler::kCxAllPairs) {
          out.apply_cx(i, j);
        } else {
          out.apply_cz(i, j);
        }
      }
    }
  }
}

Statevector prepare_ansatz(const AnsatzSpec& spec, std::span<const double> params) {
  Statevector s(spec.n_qubits);
  prepare_ansatz(spec, params, s);
  return s;
}

double expectation_pauli(const Statevector& s, const PauliSum& h) {
  if (h.width() != s.n_qubits()) {
    throw DimensionError("expectation_pauli: width mismatch");
  }
  if (!h.is_hermitian()) {
    throw ContractError("expectation_pauli: observable is not Hermitian");
  }
  const auto amps = s.amplitudes();
  double total = 0.0;
  for (const auto& [p, c] : h.terms()) {
    cplx acc{};
    const std::uint64_t flip = p.x_mask();
    for (std::uint64_t b = 0; b < s.dim(); ++b) {
      acc += std::conj(amps[b ^ flip]) * p.apply_phase(b) * amps[b];
    }
    total += (c * acc).real();
  }
  return total;
}

double expectation_matrix(const Statevector& s, const Eigen::MatrixXcd& m) {
  if (m.rows() != static_cast<Eigen::Index>(s.dim()) || m.cols() != m.rows()) {
    throw DimensionError("expectation_matrix: matrix does not match state");
  }
  Eigen::Map<const Eigen::VectorXcd> v(s.amplitudes().data(), m.rows());
  return v.dot(m * v).real();
}

cplx inner_product(const Statevector& a, const Statevector& b) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionError("overlap: width mismatch");
  cplx acc{};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double overlap_sq(const Statevector& a, const Statevector& b) {
  return std::norm(inner_product(a, b));
}

}  // namespace cpvqd
