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

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cpvqd/errors.hpp"
#include "cpvqd/optimizer.hpp"
#include "cpvqd/pauli.hpp"
#include "cpvqd/statevector.hpp"
#include "cpvqd/symmetry.hpp"

namespace cpvqd {

enum class VqdMode { kFull, kPenalty, kReduced };

std::string to_string(VqdMode m);
VqdMode parse_mode(const std::string& s);

/// Hermitian observable held either as a Pauli sum or as a dense matrix
/// (the embedded reduced Hamiltonian).
class Observable {
 public:
  explicit Observable(PauliSum h);
  explicit Observable(Eigen::MatrixXcd m);

  int n_qubits() const noexcept { return n_qubits_; }
  double expectation(const Statevector& s) const;
  /// Upper bound on the spectral radius: sum |c| or the max absolute row sum.
  double norm_bound() const;
  const PauliSum* pauli() const { return std::get_if<PauliSum>(&rep_); }
  const Eigen::MatrixXcd* matrix() const { return std::get_if<Eigen::MatrixXcd>(&rep_); }

 private:
  std::variant<PauliSum, Eigen::MatrixXcd> rep_;
  int n_qubits_;
};

struct VQDConfig {
  int k_max = 1;
  /// Deflation weights; empty selects 2 * sum |c| of H, one entry is
  /// broadcast to every state.
  std::vector<double> betas;
  /// n_qubits is overwritten with the width of the simulated register.
  AnsatzSpec ansatz;
  OptimizerConfig optimizer;
  VqdMode mode = VqdMode::kFull;
  /// Largest accepted |<psi_k|psi_i>|^2 for a converged state.
  double overlap_threshold = 1e-2;
  /// Largest change of the running best over the last 5% of evaluations,
  /// relative to max(1, |cost|), for a converged state.
  double stability_tolerance = 1e-5;

  void validate() const;
};

struct StateResult {
  double energy = 0.0;  // <H_rep> of the optimized state
  double cost = 0.0;    // deflated cost at the optimum
  std::vector<double> params;
  int evaluations = 0;
  int iterations = 0;
  double qc_seconds = 0.0;
  double cc_seconds = 0.0;
  bool converged = false;
  std::vector<std::string> flags;
  std::optional<double> h_expectation;  // penalty mode: <H>
  std::optional<double> s_expectation;  // penalty mode: <S>
  std::string stop;
};

struct VQDResult {
  VqdMode mode = VqdMode::kFull;
  int model_qubits = 0;   // N of the physical model
  int ansatz_qubits = 0;  // width of the simulated register
  std::optional<double> charge;
  std::optional<int> parity;
  std::optional<std::size_t> sector_dim;
  std::optional<double> pad_value;
  std::optional<double> alpha;
  std::vector<double> betas;
  AnsatzSpec ansatz;
  std::uint64_t seed = 0;
  std::vector<StateResult> states;
  /// overlaps[k][i] = |<psi_k|psi_i>|^2 for i < k.
  std::vector<std::vector<double>> overlaps;

  std::vector<double> energies() const;
  bool all_converged() const;
  Statevector state(std::size_t k) const;
};

/// Optimizer failure inside run_vqd; carries the states finished so far.
class VqdAbort : public OptimizationAbort {
 public:
  VqdAbort(const std::string& what, VQDResult partial)
      : OptimizationAbort(what), partial_(std::move(partial)) {}
  const VQDResult& partial() const noexcept { return partial_; }

 private:
  VQDResult partial_;
};

/// <psi(params)|H|psi(params)> + sum_i betas[i] |<psi(params)|psi_i>|^2.
double vqd_cost(std::span<const double> params, const Observable& h,
                std::span<const Statevector> previous, std::span<const double> betas,
                const AnsatzSpec& spec);

/// Sequential deflation over k = 0..k_max-1 on the register of `h`.
VQDResult run_vqd(const Observable& h, const VQDConfig& cfg);
VQDResult run_vqd(const PauliSum& h, const VQDConfig& cfg);

/// Method 1: enumerate the sector, project, embed on n_star qubits and run
/// VQD there. States whose energy reaches pad_value - 5 sum|c| are flagged.
VQDResult run_cpvqd_reduced(const PauliSum& h, Charge q, std::optional<int> parity,
                            const VQDConfig& cfg);

/// Method 2: VQD on H + alpha (target - S)^2 with <H> and <S> reported per
/// state.
VQDResult run_cpvqd_penalty(const PauliSum& h, const PauliSum& s, double target,
                            double alpha, const VQDConfig& cfg);

}  // namespace cpvqd
