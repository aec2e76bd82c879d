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
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace cpvqd {

struct OptimizerConfig {
  /// Initial trust-region radius (radians for ansatz angles).
  double rhobeg = 0.5;
  /// Cost-evaluation budget; 0 means 625 x N, with N the ansatz qubit
  /// count under VQD and the number of variables otherwise.
  int max_iters = 0;
  /// Final trust-region radius at which the run counts as converged. Unset
  /// means run until the budget is spent or the radius reaches kRhoFloor.
  std::optional<double> ftol;
  std::uint64_t seed = 0;
  /// Random starts for the ground state.
  int restarts_ground = 1;
  /// Random starts for each excited state, on top of the warm start.
  int restarts_excited = 2;

  void validate() const;
};

inline constexpr double kRhoFloor = 1e-10;

struct HistoryEntry {
  int evaluation;  // 1-based cost-call counter
  int iteration;   // outer iteration (0 = initial simplex)
  double value;
};

enum class StopReason { kMaxEvaluations, kConverged, kRhoFloor };

std::string to_string(StopReason r);

struct MinimizeResult {
  std::vector<double> x_best;
  double f_best = 0.0;
  std::vector<HistoryEntry> history;
  int evaluations = 0;
  int iterations = 0;
  double final_rho = 0.0;
  StopReason stop = StopReason::kMaxEvaluations;
};

using CostFunction = std::function<double(std::span<const double>)>;

/**
 * Derivative-free minimization with linear models on a simplex of n + 1
 * points and a shrinking trust region (the unconstrained case of COBYLA).
 *
 * Each outer iteration costs exactly one evaluation: either a trust-region
 * step of length rho along the model's descent direction, or a geometry
 * step that restores a well-conditioned simplex. rho halves when a step
 * fails on an acceptable simplex. The initial simplex costs n + 1
 * evaluations, so the total never exceeds max(max_iters, n + 1).
 *
 * Throws OptimizationAbort if the cost returns a non-finite value.
 */
MinimizeResult minimize(const CostFunction& cost, std::span<const double> x0,
                        const OptimizerConfig& cfg);

/// 625 x N.
int default_max_iters(int n);

/// Uniform reals built from the top 53 bits of mt19937_64, whose output
/// sequence is fixed by the standard (unlike std::uniform_real_distribution).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cpvqd
