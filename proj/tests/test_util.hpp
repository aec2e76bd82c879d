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

#include <random>
#include <string>
#include <vector>

#include "cpvqd/pauli.hpp"
#include "cpvqd/statevector.hpp"

namespace cpvqd::testutil {

// Dense reference built from explicit 2x2 matrices and Kronecker products,
// independent of PauliSum::to_matrix. Letter k is the leftmost factor.
inline Eigen::Matrix2cd letter_matrix(char c) {
  const cplx i(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

inline Eigen::MatrixXcd dense_string(const std::string& letters) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : letters) m = kron(m, letter_matrix(c));
  return m;
}

inline Eigen::MatrixXcd dense_sum(const PauliSum& h) {
  const auto dim = Eigen::Index{1} << h.width();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [s, c] : h.terms()) m += c * dense_string(s.to_string());
  return m;
}

inline std::string random_letters(std::mt19937_64& rng, int width) {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  std::uniform_int_distribution<int> pick(0, 3);
  std::string s;
  for (int k = 0; k < width; ++k) s += kLetters[pick(rng)];
  return s;
}

inline PauliSum random_sum(std::mt19937_64& rng, int width, int terms, bool hermitian) {
  std::normal_distribution<double> normal;
  PauliSum h(width);
  for (int t = 0; t < terms; ++t) {
    const cplx c = hermitian ? cplx(normal(rng), 0.0) : cplx(normal(rng), normal(rng));
    h.add_term(PauliString::from_string(random_letters(rng, width)), c);
  }
  return h;
}

/// Random Hermitian sum commuting with (1/2) sum Z: diagonal Z strings plus
/// number-conserving hops XX + YY and XY - YX with Z tails.
inline PauliSum random_charge_conserving(std::mt19937_64& rng, int width, int terms) {
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> site(0, width - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  PauliSum h(width);
  for (int t = 0; t < terms; ++t) {
    const double c = normal(rng);
    std::string diag(width, 'I');
    for (auto& ch : diag) ch = coin(rng) ? 'Z' : 'I';
    if (coin(rng)) {
      h.add_term(PauliString::from_string(diag), c);
      continue;
    }
    int a = site(rng), b = site(rng);
    while (b == a) b = site(rng);
    std::string xx = diag, yy = diag, xy = diag, yx = diag;
    xx[a] = 'X'; xx[b] = 'X';
    yy[a] = 'Y'; yy[b] = 'Y';
    xy[a] = 'X'; xy[b] = 'Y';
    yx[a] = 'Y'; yx[b] = 'X';
    if (coin(rng)) {
      h.add_term(PauliString::from_string(xx), c);
      h.add_term(PauliString::from_string(yy), c);
    } else {
      h.add_term(PauliString::from_string(xy), c);
      h.add_term(PauliString::from_string(yx), -c);
    }
  }
  return h.simplify();
}

inline Statevector random_state(std::mt19937_64& rng, int n_qubits) {
  std::normal_distribution<double> normal;
  std::vector<cplx> amps(std::size_t{1} << n_qubits);
  for (auto& a : amps) a = cplx(normal(rng), normal(rng));
  Statevector s = Statevector::from_amplitudes(std::move(amps));
  s.normalize();
  return s;
}

inline Eigen::VectorXcd as_vector(const Statevector& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
  for (std::uint64_t i = 0; i < s.dim(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
  return v;
}

}  // namespace cpvqd::testutil
