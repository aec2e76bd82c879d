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

#include "cpvqd/symmetry.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_map>

#include "cpvqd/errors.hpp"
#include "cpvqd/fermion.hpp"

namespace cpvqd {

Charge Charge::from_value(double q) {
  const double twice = 2.0 * q;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-9) {
    throw DomainError("charge " + std::to_string(q) + " is not a half-integer");
  }
  return Charge(static_cast<int>(rounded));
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int occupation_for(int n_qubits, Charge q) {
  const int diff = n_qubits - q.twice();
  if (n_qubits < 1 || diff % 2 != 0 || diff < 0 || diff > 2 * n_qubits) {
    throw DomainError("charge " + std::to_string(q.value()) +
                      " is not a sector of " + std::to_string(n_qubits) +
                      " qubits");
  }
  return diff / 2;
}

std::uint64_t sector_dimension(int n_qubits, Charge q) {
  return binomial(n_qubits, occupation_for(n_qubits, q));
}

std::uint64_t charge_parity_dimension(int n_qubits) {
  if (n_qubits < 2 || n_qubits % 2 != 0) {
    throw DomainError("charge-parity sector needs even N");
  }
  const int half = n_qubits / 2;
  if (n_qubits % 4 == 0) {
    return (binomial(n_qubits, half) + binomial(half, n_qubits / 4)) / 2;
  }
  return binomial(n_qubits, half) / 2;
}

int reduced_qubit_count(std::uint64_t dim) {
  if (dim < 1) throw DomainError("sector dimension must be positive");
  if (dim == 1) return 1;
  return std::bit_width(dim - 1);
}

double parity_reduction_qubits(int n_qubits) {
  return n_qubits - std::log2(static_cast<double>(charge_parity_dimension(n_qubits)));
}

std::uint64_t reverse_bits(std::uint64_t index, int n_qubits) {
  std::uint64_t out = 0;
  for (int k = 0; k < n_qubits; ++k) {
    if (index & (std::uint64_t{1} << k)) out |= std::uint64_t{1} << (n_qubits - 1 - k);
  }
  return out;
}

std::vector<std::pair<std::uint64_t, double>> BasisElement::components() const {
  if (!partner) return {{index, 1.0}};
  const double a = std::numbers::sqrt2 / 2.0;
  return {{index, a}, {*partner, partner_sign * a}};
}

SectorBasis enumerate_charge_sector(int n_qubits, Charge q) {
  const int ones = occupation_for(n_qubits, q);
  if (n_qubits > kMaxQubits - 1) throw CapacityError("too many qubits to enumerate");
  SectorBasis basis{n_qubits, q, std::nullopt, {}};
  basis.elements.reserve(sector_dimension(n_qubits, q));
  const std::uint64_t limit = std::uint64_t{1} << n_qubits;
  if (ones == 0) {
    basis.elements.push_back({0, std::nullopt});
    return basis;
  }
  // Gosper's hack walks fixed-popcount integers in ascending order.
  std::uint64_t v = (std::uint64_t{1} << ones) - 1;
  while (v < limit) {
    basis.elements.push_back({v, std::nullopt});
    const std::uint64_t t = v | (v - 1);
    v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
  }
  return basis;
}

SectorBasis enumerate_charge_parity_sector(int n_qubits, int parity) {
  if (n_qubits < 2 || n_qubits % 2 != 0) {
    throw DomainError("charge-parity sector needs even N");
  }
  if (parity != 1 && parity != -1) throw DomainError("parity must be +1 or -1");
  const SectorBasis charge0 = enumerate_charge_sector(n_qubits, Charge{});
  SectorBasis basis{n_qubits, Charge{}, parity, {}};
  for (const auto& e : charge0.elements) {
    const std::uint64_t r = reverse_bits(e.index, n_qubits);
    if (r == e.index) {
      if (parity == 1) basis.elements.push_back({e.index, std::nullopt});
    } else if (r > e.index) {
      basis.elements.push_back({e.index, r, static_cast<double>(parity)});
    }
  }
  return basis;
}

ReducedHamiltonian project_hamiltonian(const PauliSum& h, const SectorBasis& basis) {
  if (h.width() != basis.n_qubits) {
    throw DimensionError("project_hamiltonian: H width does not match basis");
  }
  if (!commutator(h, z_charge_operator(basis.n_qubits)).empty()) {
    throw SectorLeakError("Hamiltonian does not conserve the charge");
  }
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  if (dim == 0) throw DomainError("empty sector basis");

  std::unordered_map<std::uint64_t, std::pair<Eigen::Index, double>> lookup;
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (const auto& [idx, amp] : basis.elements[i].components()) {
      lookup.emplace(idx, std::pair{i, amp});
    }
  }

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  std::unordered_map<std::uint64_t, cplx> image;
  for (Eigen::Index j = 0; j < dim; ++j) {
    image.clear();
    for (const auto& [idx, amp] : basis.elements[j].components()) {
      for (const auto& [p, c] : h.terms()) {
        image[idx ^ p.x_mask()] += c * p.apply_phase(idx) * amp;
      }
    }
    double image_norm = 0.0;
    for (const auto& [idx, v] : image) {
      image_norm += std::norm(v);
      auto it = lookup.find(idx);
      if (it == lookup.end()) continue;
      m(it->second.first, j) += it->second.second * v;
    }
    const double captured = m.col(j).squaredNorm();
    if (std::abs(image_norm - captured) > 1e-10 * std::max(1.0, image_norm)) {
      throw SectorLeakError("Hamiltonian maps basis element " + std::to_string(j) +
                            " outside the sector");
    }
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ContractError("projected Hamiltonian is not Hermitian");
  }
  m = 0.5 * (m + m.adjoint()).eval();

  ReducedHamiltonian r;
  r.basis = basis;
  r.n_star = reduced_qubit_count(basis.dim());
  r.pad_value = m.diagonal().real().maxCoeff() + 10.0 * h.one_norm();
  r.matrix = std::move(m);
  return r;
}

Eigen::MatrixXcd embed_reduced(const ReducedHamiltonian& r) {
  const Eigen::Index full = Eigen::Index{1} << r.n_star;
  const Eigen::Index dim = r.matrix.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(full, full);
  out.topLeftCorner(dim, dim) = r.matrix;
  for (Eigen::Index i = dim; i < full; ++i) out(i, i) = r.pad_value;
  return out;
}

Statevector lift_to_full(const SectorBasis& basis, std::span<const cplx> reduced) {
  if (reduced.size() < basis.dim()) {
    throw DimensionError("lift_to_full: reduced vector shorter than the basis");
  }
  std::vector<cplx> amps(std::size_t{1} << basis.n_qubits, cplx{});
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    for (const auto& [idx, amp] : basis.elements[i].components()) {
      amps[idx] += amp * reduced[i];
    }
  }
  return Statevector::from_amplitudes(std::move(amps));
}

PauliSum penalty_hamiltonian(const PauliSum& h, const PauliSum& s, double target,
                             double alpha) {
  if (!(alpha > 0.0)) throw ParameterError("penalty weight alpha must be positive");
  if (h.width() != s.width()) throw DimensionError("penalty: width mismatch");
  if (!s.is_hermitian()) throw ContractError("penalty: symmetry operator not Hermitian");
  const PauliSum d = PauliSum::identity(s.width(), target) - s;
  return (h + alpha * mul_sums(d, d)).simplify();
}

double default_penalty_weight(const PauliSum& h) { return 2.0 * h.one_norm(); }

}  // namespace cpvqd
