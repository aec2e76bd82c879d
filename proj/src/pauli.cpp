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

#include "cpvqd/pauli.hpp"

#include <bit>
#include <cmath>

#include "cpvqd/errors.hpp"

namespace cpvqd {
namespace {

constexpr cplx kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void check_width(int a, int b, const char* op) {
  if (a != b) {
    throw DimensionError(std::string(op) + ": width mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

PauliString::PauliString(int width) : width_(width) {
  if (width < 0 || width > kMaxQubits) {
    throw DimensionError("PauliString width out of range: " +
                         std::to_string(width));
  }
}

std::uint64_t PauliString::bit(int qubit) const {
  if (qubit < 0 || qubit >= width_) {
    throw DimensionError("qubit " + std::to_string(qubit) +
                         " out of range for width " + std::to_string(width_));
  }
  return std::uint64_t{1} << (width_ - 1 - qubit);
}

PauliString PauliString::from_string(std::string_view letters) {
  PauliString s(static_cast<int>(letters.size()));
  for (int k = 0; k < s.width_; ++k) s.set(k, letters[k]);
  return s;
}

PauliString PauliString::single(int width, int qubit, char letter) {
  PauliString s(width);
  s.set(qubit, letter);
  return s;
}

char PauliString::letter(int qubit) const {
  const std::uint64_t b = bit(qubit);
  const bool x = x_ & b;
  const bool z = z_ & b;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

void PauliString::set(int qubit, char letter) {
  const std::uint64_t b = bit(qubit);
  x_ &= ~b;
  z_ &= ~b;
  switch (letter) {
    case 'I': break;
    case 'X': x_ |= b; break;
    case 'Y': x_ |= b; z_ |= b; break;
    case 'Z': z_ |= b; break;
    default:
      throw FormatError(std::string("invalid Pauli letter '") + letter + "'");
  }
}

std::string PauliString::to_string() const {
  std::string out(static_cast<std::size_t>(width_), 'I');
  for (int k = 0; k < width_; ++k) out[k] = letter(k);
  return out;
}

int PauliString::weight() const noexcept { return std::popcount(x_ | z_); }

cplx PauliString::apply_phase(std::uint64_t basis_index) const noexcept {
  // i^{|x&z|} X^x Z^z |b> = i^{|x&z|} (-1)^{|z&b|} |b^x>
  const int e = std::popcount(x_ & z_) + 2 * std::popcount(z_ & basis_index);
  return kPhases[e & 3];
}

std::pair<cplx, PauliString> mul_strings(const PauliString& a,
                                         const PauliString& b) {
  check_width(a.width_, b.width_, "mul_strings");
  const std::uint64_t x = a.x_ ^ b.x_;
  const std::uint64_t z = a.z_ ^ b.z_;
  // X^x1 Z^z1 X^x2 Z^z2 = (-1)^{|z1&x2|} X^{x1^x2} Z^{z1^z2}
  const int e = std::popcount(a.x_ & a.z_) + std::popcount(b.x_ & b.z_) -
                std::popcount(x & z) + 2 * std::popcount(a.z_ & b.x_);
  return {kPhases[((e % 4) + 4) % 4], PauliString(a.width_, x, z)};
}

// ---------------------------------------------------------------------------

PauliSum::PauliSum(const PauliString& s, cplx coeff) : width_(s.width()) {
  add_term(s, coeff);
}

PauliSum PauliSum::identity(int width, cplx coeff) {
  return PauliSum(PauliString(width), coeff);
}

PauliSum PauliSum::single(int width, int qubit, char letter, cplx coeff) {
  return PauliSum(PauliString::single(width, qubit, letter), coeff);
}

PauliSum PauliSum::from_string(std::string_view letters, cplx coeff) {
  return PauliSum(PauliString::from_string(letters), coeff);
}

cplx PauliSum::coefficient(const PauliString& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? cplx{} : it->second;
}

void PauliSum::add_term(const PauliString& s, cplx coeff) {
  check_width(width_, s.width(), "add_term");
  auto [it, inserted] = terms_.try_emplace(s, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  check_width(width_, other.width_, "add");
  for (const auto& [s, c] : other.terms_) add_term(s, c);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  check_width(width_, other.width_, "subtract");
  for (const auto& [s, c] : other.terms_) add_term(s, -c);
  return *this;
}

PauliSum& PauliSum::operator*=(cplx c) {
  for (auto& [s, v] : terms_) v *= c;
  return *this;
}

PauliSum PauliSum::simplify(double tol) const {
  PauliSum out(width_);
  for (const auto& [s, c] : terms_) {
    if (std::abs(c) >= tol) out.terms_.emplace_hint(out.terms_.end(), s, c);
  }
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& [s, c] : terms_) {
    if (std::abs(c.imag()) > tol) return false;
  }
  return true;
}

bool PauliSum::is_diagonal() const {
  for (const auto& [s, c] : terms_) {
    if (!s.is_diagonal()) return false;
  }
  return true;
}

double PauliSum::one_norm() const {
  double total = 0.0;
  for (const auto& [s, c] : terms_) total += std::abs(c);
  return total;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(width_);
  for (const auto& [s, c] : terms_) out.terms_.emplace(s, std::conj(c));
  return out;
}

Eigen::MatrixXcd PauliSum::to_matrix(int qubit_cap) const {
  if (width_ > qubit_cap) {
    throw CapacityError("to_matrix: " + std::to_string(width_) +
                        " qubits exceeds dense cap " +
                        std::to_string(qubit_cap));
  }
  const std::uint64_t dim = std::uint64_t{1} << width_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [s, c] : terms_) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      m(b ^ s.x_mask(), b) += c * s.apply_phase(b);
    }
  }
  return m;
}

nlohmann::json PauliSum::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [s, c] : terms_) {
    terms.push_back({{"pauli", s.to_string()}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"n_qubits", width_}, {"terms", std::move(terms)}};
}

PauliSum PauliSum::from_json(const nlohmann::json& j) {
  try {
    PauliSum out(j.at("n_qubits").get<int>());
    for (const auto& t : j.at("terms")) {
      const auto letters = t.at("pauli").get<std::string>();
      if (static_cast<int>(letters.size()) != out.width_) {
        throw DimensionError("term '" + letters + "' does not match n_qubits");
      }
      out.add_term(PauliString::from_string(letters),
                   {t.at("re").get<double>(), t.value("im", 0.0)});
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("PauliSum JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

PauliSum add(const PauliSum& a, const PauliSum& b) { return a + b; }

PauliSum scale(const PauliSum& a, cplx c) { return a * c; }

PauliSum mul_sums(const PauliSum& a, const PauliSum& b) {
  check_width(a.width(), b.width(), "mul_sums");
  PauliSum out(a.width());
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      auto [phase, s] = mul_strings(sa, sb);
      out.add_term(s, phase * ca * cb);
    }
  }
  return out;
}

PauliSum simplify(const PauliSum& a, double tol) { return a.simplify(tol); }

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  check_width(a.width(), b.width(), "commutator");
  PauliSum out(a.width());
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      auto [pab, s] = mul_strings(sa, sb);
      auto [pba, unused] = mul_strings(sb, sa);
      // Commuting strings give pab == pba and contribute nothing.
      if (pab != pba) out.add_term(s, (pab - pba) * ca * cb);
    }
  }
  return out.simplify();
}

PauliSum anticommutator(const PauliSum& a, const PauliSum& b) {
  return (mul_sums(a, b) + mul_sums(b, a)).simplify();
}

PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
PauliSum operator*(const PauliSum& a, const PauliSum& b) { return mul_sums(a, b); }
PauliSum operator*(cplx c, PauliSum a) { return a *= c; }
PauliSum operator*(PauliSum a, cplx c) { return a *= c; }

void apply_sum(const PauliSum& h, std::span<const cplx> x, std::span<cplx> y) {
  const std::uint64_t dim = std::uint64_t{1} << h.width();
  if (x.size() != dim || y.size() != dim) {
    throw DimensionError("apply_sum: vector length does not match 2^width");
  }
  for (const auto& [s, c] : h.terms()) {
    const std::uint64_t flip = s.x_mask();
    for (std::uint64_t b = 0; b < dim; ++b) {
      y[b ^ flip] += c * s.apply_phase(b) * x[b];
    }
  }
}

}  // namespace cpvqd
