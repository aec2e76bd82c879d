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

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "json.hpp"

namespace cpvqd {

using cplx = std::complex<double>;

inline constexpr double kPruneTolerance = 1e-12;
inline constexpr int kDenseQubitCap = 14;
inline constexpr int kMaxQubits = 64;

/**
 * Tensor product of single-qubit Paulis on a fixed number of qubits.
 *
 * Stored as a pair of bit masks over computational-basis indices: a set
 * x-bit puts X on the qubit, a set z-bit puts Z, both put Y. Qubit k maps to
 * index bit (width - 1 - k), so a ket written "q0 q1 ... q(N-1)" reads as the
 * binary numeral of its index. With Y = i X Z the operator is
 * i^{|x & z|} X^x Z^z, which keeps string identity free of phases.
 */
class PauliString {
 public:
  explicit PauliString(int width = 0);

  /// Parses "XZIY..."; character k is the letter on qubit k.
  static PauliString from_string(std::string_view letters);
  static PauliString single(int width, int qubit, char letter);

  int width() const noexcept { return width_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }

  char letter(int qubit) const;
  void set(int qubit, char letter);
  std::string to_string() const;

  bool is_identity() const noexcept { return x_ == 0 && z_ == 0; }
  bool is_diagonal() const noexcept { return x_ == 0; }
  int weight() const noexcept;

  /// P|b> = phase * |b ^ x_mask>; returns the phase.
  cplx apply_phase(std::uint64_t basis_index) const noexcept;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    if (auto c = a.width_ <=> b.width_; c != 0) return c;
    if (auto c = a.x_ <=> b.x_; c != 0) return c;
    return a.z_ <=> b.z_;
  }

 private:
  PauliString(int width, std::uint64_t x, std::uint64_t z)
      : width_(width), x_(x), z_(z) {}
  std::uint64_t bit(int qubit) const;

  int width_;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;

  friend std::pair<cplx, PauliString> mul_strings(const PauliString&,
                                                  const PauliString&);
};

/// a * b == phase * product, with phase in {1, i, -1, -i}.
std::pair<cplx, PauliString> mul_strings(const PauliString& a,
                                         const PauliString& b);

/// Weighted sum of Pauli strings of a common width. Terms are kept in a
/// canonical ordered map so duplicate strings merge on insertion.
class PauliSum {
 public:
  using TermMap = std::map<PauliString, cplx>;

  explicit PauliSum(int width = 0) : width_(width) {}
  PauliSum(const PauliString& s, cplx coeff = 1.0);

  static PauliSum identity(int width, cplx coeff = 1.0);
  /// Single-letter operator on one qubit, e.g. single(4, 2, 'Z') = Z_2.
  static PauliSum single(int width, int qubit, char letter, cplx coeff = 1.0);
  static PauliSum from_string(std::string_view letters, cplx coeff = 1.0);

  int width() const noexcept { return width_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  cplx coefficient(const PauliString& s) const;

  void add_term(const PauliString& s, cplx coeff);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(cplx c);

  /// Drops terms with |c| < tol.
  PauliSum simplify(double tol = kPruneTolerance) const;

  /// True when every coefficient is real within tol.
  bool is_hermitian(double tol = kPruneTolerance) const;
  bool is_diagonal() const;
  /// Sum of |coefficient| over all terms; bounds the spectral radius.
  double one_norm() const;

  PauliSum adjoint() const;

  /// Dense 2^N x 2^N realization. Throws CapacityError above the cap.
  Eigen::MatrixXcd to_matrix(int qubit_cap = kDenseQubitCap) const;

  nlohmann::json to_json() const;
  static PauliSum from_json(const nlohmann::json& j);

  friend bool operator==(const PauliSum&, const PauliSum&) = default;

 private:
  int width_;
  TermMap terms_;
};

PauliSum add(const PauliSum& a, const PauliSum& b);
PauliSum scale(const PauliSum& a, cplx c);
PauliSum mul_sums(const PauliSum& a, const PauliSum& b);
PauliSum simplify(const PauliSum& a, double tol = kPruneTolerance);
/// ab - ba, simplified.
PauliSum commutator(const PauliSum& a, const PauliSum& b);
/// ab + ba, simplified.
PauliSum anticommutator(const PauliSum& a, const PauliSum& b);

PauliSum operator+(PauliSum a, const PauliSum& b);
PauliSum operator-(PauliSum a, const PauliSum& b);
PauliSum operator*(const PauliSum& a, const PauliSum& b);
PauliSum operator*(cplx c, PauliSum a);
PauliSum operator*(PauliSum a, cplx c);

/// In-place y += H x over 2^N amplitudes, term by term.
void apply_sum(const PauliSum& h, std::span<const cplx> x, std::span<cplx> y);

}  // namespace cpvqd
