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

#include <cstdint>

#include "cpvqd/pauli.hpp"

namespace cpvqd {

class Statevector;

enum class Boundary { kOpen, kPeriodic };

/// Staggered-fermion chain. Sites are numbered 1..N; site n lives on qubit
/// n - 1 and the staggering sign is (-1)^n in the 1-based numbering. Energies
/// are in units of 1/a.
struct LatticeParams {
  int n_sites = 4;
  double mass = 0.0;
  double coupling = 1.0;
  double spacing = 1.0;
  Boundary boundary = Boundary::kOpen;

  /// Throws ModelError for odd N or negative m, g, a <= 0.
  void validate() const;
};

/**
 * Massive Dirac fermions with periodic wrap:
 *
 *   1/(4a) sum_{n<N} (X_n X_{n+1} + Y_n Y_{n+1}) + m/2 sum_n (-1)^n Z_n
 *   + (-1)^{N/2}/(4a) (X_N X_1 + Y_N Y_1) prod_{n=2}^{N-1} Z_n
 *
 * Requires Boundary::kPeriodic.
 */
PauliSum dirac_pbc_hamiltonian(const LatticeParams& p);

/**
 * Lattice Schwinger model
 *
 *   1/(8a) sum_n (X_n X_{n+1} + Y_n Y_{n+1}) + m/2 sum_n (-1)^n Z_n
 *   + (a g^2 / 2) sum_{n=1}^{N} L_n^2,
 *
 * with L_n = sum_{j<=n} (Z_j + (-1)^j)/2 expanded symbolically. For open
 * boundaries the hopping stops at n = N - 1; periodic chains wrap with the
 * same Z-string and sign as the Dirac model.
 */
PauliSum schwinger_hamiltonian(const LatticeParams& p);

/// Electric field operator L_n (1-based n; L_0 = 0).
PauliSum electric_field_operator(int n_sites, int n);
/// Q_n = (Z_n + (-1)^n)/(2a).
PauliSum charge_density_operator(int n_sites, int n, double spacing);

/// max_n |<L_n - L_{n-1} - a Q_n>| over n = 1..N.
double gauss_law_residual(const LatticeParams& p, const Statevector& state);

/// prod_j Z_j.
PauliSum z2_parity_operator(int n_qubits);

/// Dominant large-mass term m/2 sum_{n=0}^{N-1} (-1)^{n-1} Z_n (0-based n).
PauliSum mass_term_hamiltonian(int n_qubits, double mass);

/// |0101...01>: qubit k is set for odd k.
std::uint64_t neel_index(int n_qubits);

/// -m(N - 2n)/2, the energy of n flips on top of the Neel state.
double mass_term_excited_energy(int n_qubits, double mass, int n);

inline constexpr double kEulerGamma = 0.5772156649;

/// (E_2 - E_0)/g = 2m/g at large mass.
double large_mass_gap(double mass, double coupling);
/// Small-mass eta mass sqrt(g^2/pi - m <psibar psi>_0 / f^2) with
/// f = 1/sqrt(4 pi) and <psibar psi>_0 = -(e^gamma / 2 pi)(g / sqrt(pi)).
double eta_mass_small_m(double mass, double coupling);
/// m - a g^2 / 8.
double lattice_mass_shift(double mass, double spacing, double coupling);

}  // namespace cpvqd
