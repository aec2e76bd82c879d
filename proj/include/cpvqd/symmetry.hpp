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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cpvqd/pauli.hpp"
#include "cpvqd/statevector.hpp"

namespace cpvqd {

/// Eigenvalue of (1/2) sum Z_i, stored as twice its value so half-integer
/// sectors stay exact. A basis state with n ones carries q = N/2 - n.
class Charge {
 public:
  constexpr Charge() = default;
  static constexpr Charge from_twice(int twice) { return Charge(twice); }
  /// Throws DomainError unless 2q is an integer.
  static Charge from_value(double q);

  constexpr int twice() const noexcept { return twice_; }
  constexpr double value() const noexcept { return twice_ / 2.0; }

  friend constexpr bool operator==(Charge, Charge) = default;

 private:
  constexpr explicit Charge(int twice) : twice_(twice) {}
  int twice_ = 0;
};

std::uint64_t binomial(int n, int k);

/// n = N/2 - q ones; throws DomainError when |q| > N/2 or N/2 - q is not
/// integral.
int occupation_for(int n_qubits, Charge q);

/// C(N, N/2 - q).
std::uint64_t sector_dimension(int n_qubits, Charge q);

/// Dimension of the charge-0, reflection-even sector:
/// (C(N, N/2) + C(N/2, N/4))/2 for N = 0 mod 4, C(N, N/2)/2 for N = 2 mod 4.
std::uint64_t charge_parity_dimension(int n_qubits);

/// Smallest N* with 2^N* >= dim, and at least one qubit.
int reduced_qubit_count(std::uint64_t dim);

/// N - log2(dim of the charge-0 reflection-even sector).
double parity_reduction_qubits(int n_qubits);

/// Reverses the N-bit pattern of `index` (site reflection).
std::uint64_t reverse_bits(std::uint64_t index, int n_qubits);

/// Either |i> or (|i> + s |reverse(i)>)/sqrt(2) with s = +1 or -1.
struct BasisElement {
  std::uint64_t index;
  std::optional<std::uint64_t> partner;
  double partner_sign = 1.0;

  /// (computational index, amplitude) pairs.
  std::vector<std::pair<std::uint64_t, double>> components() const;
};

struct SectorBasis {
  int n_qubits = 0;
  Charge charge;
  std::optional<int> parity;
  std::vector<BasisElement> elements;

  std::size_t dim() const noexcept { return elements.size(); }
};

/// All indices with N/2 - q ones, ascending.
SectorBasis enumerate_charge_sector(int n_qubits, Charge q);

/// Charge-0 states symmetrized under site reflection. parity = +1 keeps
/// self-reflecting indices as singletons and pairs the rest; parity = -1
/// keeps only antisymmetric pairs. Pairs are keyed by their smaller index.
SectorBasis enumerate_charge_parity_sector(int n_qubits, int parity = +1);

struct ReducedHamiltonian {
  SectorBasis basis;
  Eigen::MatrixXcd matrix;
  int n_star = 1;
  double pad_value = 0.0;
};

/// <b_i|H|b_j> assembled by applying each Pauli term to the basis elements.
/// Throws SectorLeakError when H does not commute with the charge operator
/// or maps any basis element outside the span of the basis.
ReducedHamiltonian project_hamiltonian(const PauliSum& h, const SectorBasis& basis);

/// 2^{n_star} square matrix: projected block top-left, pad_value on the
/// remaining diagonal.
Eigen::MatrixXcd embed_reduced(const ReducedHamiltonian& r);

/// Maps reduced-register amplitudes (first dim entries) back to the full
/// 2^N computational basis.
Statevector lift_to_full(const SectorBasis& basis, std::span<const cplx> reduced);

/// H + alpha (target I - S)^2. Throws ParameterError for alpha <= 0.
PauliSum penalty_hamiltonian(const PauliSum& h, const PauliSum& s, double target,
                             double alpha);

/// 2 * sum |c| of H.
double default_penalty_weight(const PauliSum& h);

}  // namespace cpvqd
