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

#include "cpvqd/fermion.hpp"

#include <cmath>

#include "cpvqd/errors.hpp"

namespace cpvqd {

MolecularIntegrals::MolecularIntegrals(int modes)
    : n_modes(modes),
      one_body(static_cast<std::size_t>(modes) * modes, 0.0),
      two_body(static_cast<std::size_t>(modes) * modes * modes * modes, 0.0) {
  if (modes < 0) throw DimensionError("negative mode count");
}

std::size_t MolecularIntegrals::index(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_modes || j >= n_modes) {
    throw DimensionError("one-body index out of range");
  }
  return static_cast<std::size_t>(i) * n_modes + j;
}

std::size_t MolecularIntegrals::index(int i, int j, int k, int l) const {
  if (i < 0 || j < 0 || k < 0 || l < 0 || i >= n_modes || j >= n_modes ||
      k >= n_modes || l >= n_modes) {
    throw DimensionError("two-body index out of range");
  }
  const std::size_t n = n_modes;
  return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
}

void MolecularIntegrals::validate(double tol) const {
  const std::size_t n = n_modes;
  if (one_body.size() != n * n || two_body.size() != n * n * n * n) {
    throw ContractError("integral arrays do not match n_modes");
  }
  for (int i = 0; i < n_modes; ++i) {
    for (int j = 0; j < i; ++j) {
      if (std::abs(h1(i, j) - h1(j, i)) > tol) {
        throw ContractError("one-body integrals are not symmetric");
      }
    }
  }
}

nlohmann::json MolecularIntegrals::to_json() const {
  nlohmann::json one = nlohmann::json::array();
  nlohmann::json two = nlohmann::json::array();
  for (int i = 0; i < n_modes; ++i) {
    for (int j = 0; j < n_modes; ++j) {
      if (h1(i, j) != 0.0) one.push_back({i, j, h1(i, j)});
    }
  }
  for (int i = 0; i < n_modes; ++i)
    for (int j = 0; j < n_modes; ++j)
      for (int k = 0; k < n_modes; ++k)
        for (int l = 0; l < n_modes; ++l)
          if (h2(i, j, k, l) != 0.0) two.push_back({i, j, k, l, h2(i, j, k, l)});
  return {{"n_modes", n_modes},       {"n_electrons", n_electrons},
          {"ms2", ms2},               {"core_energy", core_energy},
          {"one_body", std::move(one)}, {"two_body", std::move(two)}};
}

MolecularIntegrals MolecularIntegrals::from_json(const nlohmann::json& j) {
  try {
    MolecularIntegrals m(j.at("n_modes").get<int>());
    m.n_electrons = j.value("n_electrons", 0);
    m.ms2 = j.value("ms2", 0);
    m.core_energy = j.at("core_energy").get<double>();
    for (const auto& e : j.at("one_body")) {
      m.h1(e.at(0).get<int>(), e.at(1).get<int>()) = e.at(2).get<double>();
    }
    for (const auto& e : j.at("two_body")) {
      m.h2(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(),
           e.at(3).get<int>()) = e.at(4).get<double>();
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("integrals JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

FermionOperator FermionOperator::identity(int n_modes, cplx coeff) {
  FermionOperator f(n_modes);
  f.add_term(coeff, {});
  return f;
}

FermionOperator FermionOperator::creation(int n_modes, int mode) {
  FermionOperator f(n_modes);
  f.add_term(1.0, {{mode, true}});
  return f;
}

FermionOperator FermionOperator::annihilation(int n_modes, int mode) {
  FermionOperator f(n_modes);
  f.add_term(1.0, {{mode, false}});
  return f;
}

void FermionOperator::add_term(cplx coeff, std::vector<LadderFactor> factors) {
  for (const auto& f : factors) {
    if (f.mode < 0 || f.mode >= n_modes_) {
      throw DimensionError("fermion mode " + std::to_string(f.mode) +
                           " out of range for " + std::to_string(n_modes_) +
                           " modes");
    }
  }
  terms_.push_back({coeff, std::move(factors)});
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& other) {
  if (other.n_modes_ != n_modes_) throw DimensionError("mode count mismatch");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

FermionOperator& FermionOperator::operator*=(cplx c) {
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

FermionOperator operator*(const FermionOperator& a, const FermionOperator& b) {
  if (a.n_modes_ != b.n_modes_) throw DimensionError("mode count mismatch");
  FermionOperator out(a.n_modes_);
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      auto factors = ta.factors;
      factors.insert(factors.end(), tb.factors.begin(), tb.factors.end());
      out.terms_.push_back({ta.coeff * tb.coeff, std::move(factors)});
    }
  }
  return out;
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out(n_modes_);
  for (const auto& t : terms_) {
    std::vector<LadderFactor> factors(t.factors.rbegin(), t.factors.rend());
    for (auto& f : factors) f.dagger = !f.dagger;
    out.terms_.push_back({std::conj(t.coeff), std::move(factors)});
  }
  return out;
}

FermionOperator build_electronic_hamiltonian(const MolecularIntegrals& m) {
  m.validate();
  const int n = m.n_modes;
  FermionOperator h(n);
  if (m.core_energy != 0.0) h.add_term(m.core_energy, {});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (const double v = m.h1(i, j); v != 0.0) {
        h.add_term(v, {{i, true}, {j, false}});
      }
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          if (const double v = m.h2(i, j, k, l); v != 0.0) {
            h.add_term(0.5 * v, {{i, true}, {j, true}, {k, false}, {l, false}});
          }
  return h;
}

PauliSum jordan_wigner(const FermionOperator& f, int n_qubits) {
  if (f.n_modes() > n_qubits) {
    throw DimensionError("jordan_wigner: " + std::to_string(f.n_modes()) +
                         " modes do not fit in " + std::to_string(n_qubits) +
                         " qubits");
  }
  std::vector<PauliSum> lower, raise;
  lower.reserve(n_qubits);
  raise.reserve(n_qubits);
  for (int j = 0; j < n_qubits; ++j) {
    PauliString x(n_qubits), y(n_qubits);
    for (int k = 0; k < j; ++k) {
      x.set(k, 'Z');
      y.set(k, 'Z');
    }
    x.set(j, 'X');
    y.set(j, 'Y');
    PauliSum a(n_qubits);
    a.add_term(x, 0.5);
    a.add_term(y, cplx(0.0, 0.5));
    raise.push_back(a.adjoint());
    lower.push_back(std::move(a));
  }

  PauliSum out(n_qubits);
  for (const auto& term : f.terms()) {
    PauliSum product = PauliSum::identity(n_qubits, term.coeff);
    for (const auto& factor : term.factors) {
      product = mul_sums(product, factor.dagger ? raise[factor.mode]
                                                : lower[factor.mode]);
      if (product.empty()) break;
    }
    out += product;
  }
  return out.simplify();
}

PauliSum number_operator(int n_qubits) {
  if (n_qubits < 1) throw DimensionError("number_operator needs N >= 1");
  PauliSum out = PauliSum::identity(n_qubits, 0.5 * n_qubits);
  for (int i = 0; i < n_qubits; ++i) {
    out.add_term(PauliString::single(n_qubits, i, 'Z'), -0.5);
  }
  return out;
}

PauliSum z_charge_operator(int n_qubits) {
  if (n_qubits < 1) throw DimensionError("z_charge_operator needs N >= 1");
  PauliSum out(n_qubits);
  for (int i = 0; i < n_qubits; ++i) {
    out.add_term(PauliString::single(n_qubits, i, 'Z'), 0.5);
  }
  return out;
}

}  // namespace cpvqd
