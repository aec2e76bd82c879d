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

#include "cpvqd/lattice.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cpvqd/errors.hpp"
#include "cpvqd/statevector.hpp"

namespace cpvqd {
namespace {

double stagger(int site) { return site % 2 == 0 ? 1.0 : -1.0; }

// Qubit index of 1-based site n.
int q(int site) { return site - 1; }

PauliSum hopping(int n_sites, int a, int b) {
  PauliString xx(n_sites), yy(n_sites);
  xx.set(q(a), 'X');
  xx.set(q(b), 'X');
  yy.set(q(a), 'Y');
  yy.set(q(b), 'Y');
  PauliSum out(n_sites);
  out.add_term(xx, 1.0);
  out.add_term(yy, 1.0);
  return out;
}

// (-1)^{N/2} (X_N X_1 + Y_N Y_1) prod_{n=2}^{N-1} Z_n
PauliSum wrap_hopping(int n_sites) {
  PauliString xx(n_sites), yy(n_sites);
  for (int site = 2; site <= n_sites - 1; ++site) {
    xx.set(q(site), 'Z');
    yy.set(q(site), 'Z');
  }
  xx.set(q(n_sites), 'X');
  xx.set(q(1), 'X');
  yy.set(q(n_sites), 'Y');
  yy.set(q(1), 'Y');
  const double sign = (n_sites / 2) % 2 == 0 ? 1.0 : -1.0;
  PauliSum out(n_sites);
  out.add_term(xx, sign);
  out.add_term(yy, sign);
  return out;
}

PauliSum staggered_mass(int n_sites, double mass) {
  PauliSum out(n_sites);
  if (mass == 0.0) return out;
  for (int site = 1; site <= n_sites; ++site) {
    out.add_term(PauliString::single(n_sites, q(site), 'Z'),
                 0.5 * mass * stagger(site));
  }
  return out;
}

PauliSum chain_hopping(const LatticeParams& p, double prefactor) {
  const int n = p.n_sites;
  PauliSum out(n);
  for (int site = 1; site < n; ++site) out += hopping(n, site, site + 1);
  if (p.boundary == Boundary::kPeriodic) out += wrap_hopping(n);
  out *= prefactor;
  return out;
}

}  // namespace

void LatticeParams::validate() const {
  if (n_sites < 2 || n_sites % 2 != 0) {
    throw ModelError("staggered lattice needs an even site count, got N = " +
                     std::to_string(n_sites));
  }
  if (n_sites > kMaxQubits) throw ModelError("lattice too large");
  if (!(spacing > 0.0)) throw ModelError("lattice spacing must be positive");
  if (coupling < 0.0) throw ModelError("gauge coupling must be non-negative");
  if (mass < 0.0) throw ModelError("fermion mass must be non-negative");
}

PauliSum dirac_pbc_hamiltonian(const LatticeParams& p) {
  p.validate();
  if (p.boundary != Boundary::kPeriodic) {
    throw ModelError("Dirac chain is defined with periodic boundaries");
  }
  PauliSum h = chain_hopping(p, 1.0 / (4.0 * p.spacing));
  h += staggered_mass(p.n_sites, p.mass);
  return h.simplify();
}

PauliSum electric_field_operator(int n_sites, int n) {
  if (n < 0 || n > n_sites) throw DomainError("electric field site out of range");
  PauliSum l(n_sites);
  double shift = 0.0;
  for (int j = 1; j <= n; ++j) {
    l.add_term(PauliString::single(n_sites, q(j), 'Z'), 0.5);
    shift += 0.5 * stagger(j);
  }
  if (shift != 0.0) l.add_term(PauliString(n_sites), shift);
  return l;
}

PauliSum charge_density_operator(int n_sites, int n, double spacing) {
  if (n < 1 || n > n_sites) throw DomainError("charge density site out of range");
  PauliSum out = PauliSum::single(n_sites, q(n), 'Z', 0.5 / spacing);
  out.add_term(PauliString(n_sites), 0.5 * stagger(n) / spacing);
  return out;
}

PauliSum schwinger_hamiltonian(const LatticeParams& p) {
  p.validate();
  const int n = p.n_sites;
  PauliSum h = chain_hopping(p, 1.0 / (8.0 * p.spacing));
  h += staggered_mass(n, p.mass);
  const double electric = 0.5 * p.spacing * p.coupling * p.coupling;
  if (electric != 0.0) {
    for (int site = 1; site <= n; ++site) {
      const PauliSum l = electric_field_operator(n, site);
      h += electric * mul_sums(l, l);
    }
  }
  return h.simplify();
}

double gauss_law_residual(const LatticeParams& p, const Statevector& state) {
  p.validate();
  if (state.n_qubits() != p.n_sites) {
    throw DimensionError("gauss_law_residual: state width does not match N");
  }
  double worst = 0.0;
  for (int site = 1; site <= p.n_sites; ++site) {
    PauliSum residual = electric_field_operator(p.n_sites, site) -
                        electric_field_operator(p.n_sites, site - 1) -
                        p.spacing * charge_density_operator(p.n_sites, site, p.spacing);
    residual = residual.simplify();
    if (residual.empty()) continue;
    worst = std::max(worst, std::abs(expectation_pauli(state, residual)));
  }
  return worst;
}

PauliSum z2_parity_operator(int n_qubits) {
  if (n_qubits < 1) throw DimensionError("parity operator needs N >= 1");
  PauliString s(n_qubits);
  for (int k = 0; k < n_qubits; ++k) s.set(k, 'Z');
  return PauliSum(s, 1.0);
}

PauliSum mass_term_hamiltonian(int n_qubits, double mass) {
  if (n_qubits < 1) throw DimensionError("mass term needs N >= 1");
  PauliSum h(n_qubits);
  for (int k = 0; k < n_qubits; ++k) {
    // (-1)^{k-1}: -1 on even k.
    h.add_term(PauliString::single(n_qubits, k, 'Z'),
               0.5 * mass * (k % 2 == 0 ? -1.0 : 1.0));
  }
  return h.simplify();
}

std::uint64_t neel_index(int n_qubits) {
  std::uint64_t idx = 0;
  for (int k = 1; k < n_qubits; k += 2) idx |= std::uint64_t{1} << (n_qubits - 1 - k);
  return idx;
}

double mass_term_excited_energy(int n_qubits, double mass, int n) {
  if (n < 0 || n > n_qubits) {
    throw DomainError("excitation count " + std::to_string(n) +
                      " outside [0, N]");
  }
  return -mass * (n_qubits - 2 * n) / 2.0;
}

double large_mass_gap(double mass, double coupling) {
  if (coupling == 0.0) throw DomainError("mass gap ratio needs g != 0");
  return 2.0 * mass / coupling;
}

double eta_mass_small_m(double mass, double coupling) {
  using std::numbers::pi;
  const double f_sq = 1.0 / (4.0 * pi);
  const double condensate =
      -(std::exp(kEulerGamma) / (2.0 * pi)) * (coupling / std::sqrt(pi));
  const double m_sq = coupling * coupling / pi - mass * condensate / f_sq;
  if (m_sq < 0.0) throw DomainError("negative squared eta mass");
  return std::sqrt(m_sq);
}

double lattice_mass_shift(double mass, double spacing, double coupling) {
  return mass - spacing * coupling * coupling / 8.0;
}

}  // namespace cpvqd
