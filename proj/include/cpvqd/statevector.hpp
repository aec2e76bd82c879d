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

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

#include "cpvqd/pauli.hpp"

namespace cpvqd {

/// Dense 2^N amplitude vector. Qubit k is index bit N - 1 - k, matching
/// PauliString.
class Statevector {
 public:
  /// |0...0>.
  explicit Statevector(int n_qubits = 1);
  static Statevector basis_state(int n_qubits, std::uint64_t index);
  /// Length must be a power of two; amplitudes are taken as given.
  static Statevector from_amplitudes(std::vector<cplx> amplitudes);

  int n_qubits() const noexcept { return n_qubits_; }
  std::uint64_t dim() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  cplx operator[](std::uint64_t i) const { return amps_[i]; }

  double norm() const;
  void normalize();
  void reset();

  void apply_ry(int qubit, double theta);
  void apply_x(int qubit);
  void apply_cx(int control, int target);
  void apply_cz(int a, int b);
  void apply_pauli(const PauliString& p);

  friend bool operator==(const Statevector&, const Statevector&) = default;

 private:
  std::uint64_t mask(int qubit) const;

  int n_qubits_;
  std::vector<cplx> amps_;
};

enum class Entangler { kCxAllPairs, kCzAllPairs };

/**
 * Layered hardware-efficient ansatz: L repetitions of
 * [R_y on every qubit, then the entangler on every ordered pair i < j in
 * lexicographic order], followed by a closing R_y layer. Parameter p of
 * layer l acts on qubit p at index l * N + p, giving (L + 1) * N angles.
 */
struct AnsatzSpec {
  int n_qubits = 1;
  int layers = 4;
  Entangler entangler = Entangler::kCxAllPairs;

  int parameter_count() const { return (layers + 1) * n_qubits; }
};

/// Throws DimensionError when params.size() != spec.parameter_count().
Statevector prepare_ansatz(const AnsatzSpec& spec, std::span<const double> params);
/// Same, reusing `out` (resized as needed).
void prepare_ansatz(const AnsatzSpec& spec, std::span<const double> params,
                    Statevector& out);

/// <s|H|s>, term by term. Throws ContractError for non-Hermitian H.
double expectation_pauli(const Statevector& s, const PauliSum& h);
/// Real part of s^dagger M s.
double expectation_matrix(const Statevector& s, const Eigen::MatrixXcd& m);
cplx inner_product(const Statevector& a, const Statevector& b);
/// |<a|b>|^2.
double overlap_sq(const Statevector& a, const Statevector& b);

}  // namespace cpvqd
