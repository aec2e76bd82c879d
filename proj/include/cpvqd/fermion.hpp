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

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "cpvqd/pauli.hpp"
#include "json.hpp"

namespace cpvqd {

/**
 * Spin-orbital integrals of a second-quantized electronic Hamiltonian
 *
 *   H = core + sum_ij h_ij a+_i a_j + 1/2 sum_ijkl h_ijkl a+_i a+_j a_k a_l
 *
 * in the physicist ordering shown. Spin orbitals are interleaved: mode 2p is
 * spatial orbital p with spin up, mode 2p+1 the same orbital with spin down.
 * All energies in Hartree.
 */
struct MolecularIntegrals {
  int n_modes = 0;
  int n_electrons = 0;
  int ms2 = 0;
  double core_energy = 0.0;
  std::vector<double> one_body;  // n_modes^2, row-major
  std::vector<double> two_body;  // n_modes^4, row-major

  MolecularIntegrals() = default;
  explicit MolecularIntegrals(int modes);

  double& h1(int i, int j) { return one_body[index(i, j)]; }
  double h1(int i, int j) const { return one_body[index(i, j)]; }
  double& h2(int i, int j, int k, int l) { return two_body[index(i, j, k, l)]; }
  double h2(int i, int j, int k, int l) const {
    return two_body[index(i, j, k, l)];
  }

  /// Throws ContractError unless h1 is symmetric and sizes are consistent.
  void validate(double tol = 1e-10) const;

  /// Sparse mirror: {"n_modes", "n_electrons", "ms2", "core_energy",
  /// "one_body": [[i, j, v], ...], "two_body": [[i, j, k, l, v], ...]}.
  nlohmann::json to_json() const;
  static MolecularIntegrals from_json(const nlohmann::json& j);

  friend bool operator==(const MolecularIntegrals&,
                         const MolecularIntegrals&) = default;

 private:
  std::size_t index(int i, int j) const;
  std::size_t index(int i, int j, int k, int l) const;
};

/// Reads an FCIDUMP stream (spatial-orbital chemist integrals (ij|kl),
/// 1-based indices, 8-fold permutational symmetry of real orbitals) and
/// expands it to interleaved spin orbitals in the physicist convention.
MolecularIntegrals parse_fcidump(std::istream& in);
MolecularIntegrals load_fcidump(const std::string& path);

struct LadderFactor {
  int mode;
  bool dagger;
  friend bool operator==(const LadderFactor&, const LadderFactor&) = default;
};

struct FermionTerm {
  cplx coeff;
  std::vector<LadderFactor> factors;  // applied right to left
};

/// Linear combination of normal- or arbitrarily-ordered ladder products.
class FermionOperator {
 public:
  explicit FermionOperator(int n_modes = 0) : n_modes_(n_modes) {}

  static FermionOperator identity(int n_modes, cplx coeff = 1.0);
  static FermionOperator creation(int n_modes, int mode);
  static FermionOperator annihilation(int n_modes, int mode);

  int n_modes() const noexcept { return n_modes_; }
  const std::vector<FermionTerm>& terms() const noexcept { return terms_; }

  void add_term(cplx coeff, std::vector<LadderFactor> factors);

  FermionOperator& operator+=(const FermionOperator& other);
  FermionOperator& operator*=(cplx c);
  friend FermionOperator operator*(const FermionOperator& a,
                                   const FermionOperator& b);
  FermionOperator adjoint() const;

 private:
  int n_modes_;
  std::vector<FermionTerm> terms_;
};

FermionOperator build_electronic_hamiltonian(const MolecularIntegrals& m);

/// a_j -> (prod_{k<j} Z_k)(X_j + iY_j)/2, a+_j its adjoint. Qubit value 1
/// means the mode is occupied.
PauliSum jordan_wigner(const FermionOperator& f, int n_qubits);

/// sum_i (I - Z_i)/2, the JW image of the particle-number operator.
PauliSum number_operator(int n_qubits);
/// (1/2) sum_i Z_i; eigenvalue N/2 - n on a basis state with n ones.
PauliSum z_charge_operator(int n_qubits);

}  // namespace cpvqd
