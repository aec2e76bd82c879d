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

#include "cpvqd/vqd.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numbers>

namespace cpvqd {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Running best at the start of the final 5% of evaluations versus the end.
bool history_is_stable(const std::vector<HistoryEntry>& history, double tol) {
  if (history.empty()) return false;
  const std::size_t cut = history.size() - std::max<std::size_t>(1, history.size() / 20);
  double best_before = history.front().value;
  for (std::size_t i = 0; i <= cut && i < history.size(); ++i) {
    best_before = std::min(best_before, history[i].value);
  }
  double best = best_before;
  for (std::size_t i = cut; i < history.size(); ++i) best = std::min(best, history[i].value);
  return best_before - best <= tol * std::max(1.0, std::abs(best));
}

std::vector<double> resolve_betas(const VQDConfig& cfg, double norm_bound) {
  const auto needed = static_cast<std::size_t>(std::max(cfg.k_max - 1, 1));
  // A zero operator still needs a positive weight to separate its states.
  if (cfg.betas.empty()) {
    return std::vector<double>(needed, norm_bound > 0.0 ? 2.0 * norm_bound : 1.0);
  }
  if (cfg.betas.size() == 1) return std::vector<double>(needed, cfg.betas.front());
  if (cfg.betas.size() < needed) {
    throw ParameterError("need at least k_max - 1 deflation weights");
  }
  return cfg.betas;
}

}  // namespace

std::string to_string(VqdMode m) {
  switch (m) {
    case VqdMode::kFull: return "full";
    case VqdMode::kPenalty: return "penalty";
    case VqdMode::kReduced: return "reduced";
  }
  return "unknown";
}

VqdMode parse_mode(const std::string& s) {
  if (s == "full") return VqdMode::kFull;
  if (s == "penalty") return VqdMode::kPenalty;
  if (s == "reduced") return VqdMode::kReduced;
  throw ParameterError("unknown VQD mode '" + s + "'");
}

Observable::Observable(PauliSum h) : rep_(std::move(h)) {
  const auto& p = std::get<PauliSum>(rep_);
  if (!p.is_hermitian()) throw ContractError("observable is not Hermitian");
  n_qubits_ = p.width();
}

Observable::Observable(Eigen::MatrixXcd m) : rep_(std::move(m)) {
  const auto& mat = std::get<Eigen::MatrixXcd>(rep_);
  const auto rows = static_cast<std::uint64_t>(mat.rows());
  if (mat.rows() != mat.cols() || rows < 2 || (rows & (rows - 1)) != 0) {
    throw DimensionError("observable matrix must be square with power-of-two size");
  }
  const double scale = std::max(1.0, mat.cwiseAbs().maxCoeff());
  if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw ContractError("observable matrix is not Hermitian");
  }
  n_qubits_ = std::countr_zero(rows);
}

double Observable::expectation(const Statevector& s) const {
  if (const auto* p = pauli()) return expectation_pauli(s, *p);
  return expectation_matrix(s, *matrix());
}

double Observable::norm_bound() const {
  if (const auto* p = pauli()) return p->one_norm();
  return matrix()->cwiseAbs().rowwise().sum().maxCoeff();
}

void VQDConfig::validate() const {
  if (k_max < 1) throw ParameterError("k_max must be >= 1");
  for (double b : betas) {
    if (!(b > 0.0)) throw ParameterError("deflation weights must be positive");
  }
  if (ansatz.layers < 0) throw ParameterError("ansatz layers must be >= 0");
  if (!(overlap_threshold > 0.0)) throw ParameterError("overlap threshold must be positive");
  optimizer.validate();
}

std::vector<double> VQDResult::energies() const {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s.energy);
  return out;
}

bool VQDResult::all_converged() const {
  return std::all_of(states.begin(), states.end(),
                     [](const StateResult& s) { return s.converged; });
}

Statevector VQDResult::state(std::size_t k) const {
  return prepare_ansatz(ansatz, states.at(k).params);
}

double vqd_cost(std::span<const double> params, const Observable& h,
                std::span<const Statevector> previous, std::span<const double> betas,
                const AnsatzSpec& spec) {
  if (spec.n_qubits != h.n_qubits()) throw DimensionError("vqd_cost: ansatz width mismatch");
  if (betas.size() < previous.size()) {
    throw ParameterError("vqd_cost: fewer deflation weights than previous states");
  }
  const Statevector psi = prepare_ansatz(spec, params);
  double cost = h.expectation(psi);
  for (std::size_t i = 0; i < previous.size(); ++i) {
    if (previous[i].n_qubits() != psi.n_qubits()) {
      throw DimensionError("vqd_cost: previous state width mismatch");
    }
    cost += betas[i] * overlap_sq(psi, previous[i]);
  }
  if (!std::isfinite(cost)) throw OptimizationAbort("vqd_cost: non-finite cost");
  return cost;
}

VQDResult run_vqd(const PauliSum& h, const VQDConfig& cfg) {
  return run_vqd(Observable(h), cfg);
}

VQDResult run_vqd(const Observable& h, const VQDConfig& cfg) {
  cfg.validate();
  VQDResult result;
  result.mode = cfg.mode;
  result.model_qubits = h.n_qubits();
  result.ansatz_qubits = h.n_qubits();
  result.ansatz = cfg.ansatz;
  result.ansatz.n_qubits = h.n_qubits();
  result.seed = cfg.optimizer.seed;
  result.betas = resolve_betas(cfg, h.norm_bound());

  const AnsatzSpec& spec = result.ansatz;
  OptimizerConfig opt = cfg.optimizer;
  if (opt.max_iters == 0) opt.max_iters = default_max_iters(spec.n_qubits);
  const int n_params = spec.parameter_count();
  Rng rng(cfg.optimizer.seed);
  std::vector<Statevector> found;

  for (int k = 0; k < cfg.k_max; ++k) {
    std::vector<std::vector<double>> starts;
    if (k > 0) {
      std::vector<double> warm = result.states.back().params;
      for (double& v : warm) v += opt.rhobeg * rng.uniform(-1.0, 1.0);
      starts.push_back(std::move(warm));
    }
    const int randoms = k == 0 ? opt.restarts_ground : opt.restarts_excited;
    for (int r = 0; r < randoms; ++r) {
      std::vector<double> x(n_params);
      for (double& v : x) v = rng.uniform(0.0, 2.0 * std::numbers::pi);
      starts.push_back(std::move(x));
    }

    double qc = 0.0;
    double total = 0.0;
    Statevector psi(spec.n_qubits);
    const std::span<const double> betas(result.betas.data(),
                                        std::min<std::size_t>(k, result.betas.size()));
    auto cost = [&](std::span<const double> x) {
      const auto t0 = Clock::now();
      prepare_ansatz(spec, x, psi);
      double c = h.expectation(psi);
      for (std::size_t i = 0; i < found.size(); ++i) c += betas[i] * overlap_sq(psi, found[i]);
      qc += seconds_since(t0);
      return c;
    };

    std::optional<MinimizeResult> best;
    for (const auto& x0 : starts) {
      const auto t0 = Clock::now();
      try {
        MinimizeResult run = minimize(cost, x0, opt);
        total += seconds_since(t0);
        if (!best || run.f_best < best->f_best) best = std::move(run);
      } catch (const OptimizationAbort& e) {
        total += seconds_since(t0);
        StateResult failed;
        failed.flags.push_back(std::string("optimizer abort: ") + e.what());
        failed.qc_seconds = qc;
        failed.cc_seconds = std::max(0.0, total - qc);
        result.states.push_back(std::move(failed));
        throw VqdAbort(e.what(), result);
      }
    }

    StateResult state;
    state.params = best->x_best;
    state.cost = best->f_best;
    state.evaluations = best->evaluations;
    state.iterations = best->iterations;
    state.stop = to_string(best->stop);
    psi = prepare_ansatz(spec, state.params);
    state.energy = h.expectation(psi);
    state.qc_seconds = qc;
    state.cc_seconds = std::max(0.0, total - qc);

    std::vector<double> row;
    double worst_overlap = 0.0;
    for (const auto& prev : found) {
      row.push_back(overlap_sq(psi, prev));
      worst_overlap = std::max(worst_overlap, row.back());
    }
    if (best->iterations == 0) {
      state.flags.push_back("budget spent on the initial simplex");
    } else if (!history_is_stable(best->history, cfg.stability_tolerance)) {
      state.flags.push_back("cost still decreasing at budget exhaustion");
    }
    if (worst_overlap >= cfg.overlap_threshold) {
      state.flags.push_back("overlap with a previous state above threshold");
    }
    state.converged = state.flags.empty();
    result.overlaps.push_back(std::move(row));
    result.states.push_back(std::move(state));
    found.push_back(std::move(psi));
    psi = Statevector(spec.n_qubits);
  }
  return result;
}

VQDResult run_cpvqd_reduced(const PauliSum& h, Charge q, std::optional<int> parity,
                            const VQDConfig& cfg) {
  const int n = h.width();
  const SectorBasis basis = parity ? [&] {
    if (q != Charge{}) throw DomainError("parity sectors are defined for charge 0");
    return enumerate_charge_parity_sector(n, *parity);
  }()
                                   : enumerate_charge_sector(n, q);
  if (static_cast<std::size_t>(cfg.k_max) > basis.dim()) {
    throw ParameterError("k_max = " + std::to_string(cfg.k_max) +
                         " exceeds the sector dimension " + std::to_string(basis.dim()));
  }
  const ReducedHamiltonian reduced = project_hamiltonian(h, basis);
  VQDConfig inner = cfg;
  inner.mode = VqdMode::kReduced;
  if (inner.betas.empty() && h.one_norm() > 0.0) inner.betas = {2.0 * h.one_norm()};

  VQDResult result = run_vqd(Observable(embed_reduced(reduced)), inner);
  result.model_qubits = n;
  result.charge = q.value();
  result.parity = parity;
  result.sector_dim = basis.dim();
  result.pad_value = reduced.pad_value;
  const double margin = 5.0 * h.one_norm();
  for (auto& s : result.states) {
    if (s.energy >= reduced.pad_value - margin) {
      s.flags.push_back("converged onto a padding state");
      s.converged = false;
    }
  }
  return result;
}

VQDResult run_cpvqd_penalty(const PauliSum& h, const PauliSum& s, double target,
                            double alpha, const VQDConfig& cfg) {
  const PauliSum penalized = penalty_hamiltonian(h, s, target, alpha);
  VQDConfig inner = cfg;
  inner.mode = VqdMode::kPenalty;
  if (inner.betas.empty() && h.one_norm() > 0.0) inner.betas = {2.0 * h.one_norm()};
  VQDResult result = run_vqd(Observable(penalized), inner);
  result.alpha = alpha;
  for (std::size_t k = 0; k < result.states.size(); ++k) {
    const Statevector psi = result.state(k);
    result.states[k].h_expectation = expectation_pauli(psi, h);
    result.states[k].s_expectation = expectation_pauli(psi, s);
  }
  return result;
}

}  // namespace cpvqd
