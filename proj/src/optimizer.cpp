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

#include "cpvqd/optimizer.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cpvqd/errors.hpp"

namespace cpvqd {
namespace {

// Simplex acceptability constants from Powell's COBYLA.
constexpr double kSigmaBound = 0.25;  // min distance of a vertex from its face
constexpr double kEtaBound = 2.1;     // max distance of a vertex from the pivot
constexpr double kGeometryStep = 0.5;
constexpr double kSuccessRatio = 0.1;

class Evaluator {
 public:
  Evaluator(const CostFunction& cost, int budget, MinimizeResult& out)
      : cost_(cost), budget_(budget), out_(out) {}

  bool exhausted() const { return out_.evaluations >= budget_; }

  double operator()(const Eigen::VectorXd& x, int iteration) {
    const double f = cost_(std::span<const double>(x.data(), x.size()));
    ++out_.evaluations;
    if (!std::isfinite(f)) {
      std::ostringstream msg;
      msg << "cost returned " << f << " at evaluation " << out_.evaluations
          << " (x = [";
      for (Eigen::Index i = 0; i < x.size(); ++i) msg << (i ? ", " : "") << x(i);
      msg << "])";
      throw OptimizationAbort(msg.str());
    }
    out_.history.push_back({out_.evaluations, iteration, f});
    if (f < out_.f_best || out_.x_best.empty()) {
      out_.f_best = f;
      out_.x_best.assign(x.data(), x.data() + x.size());
    }
    return f;
  }

 private:
  const CostFunction& cost_;
  int budget_;
  MinimizeResult& out_;
};

}  // namespace

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::kMaxEvaluations: return "max_evaluations";
    case StopReason::kConverged: return "converged";
    case StopReason::kRhoFloor: return "rho_floor";
  }
  return "unknown";
}

void OptimizerConfig::validate() const {
  if (!(rhobeg > 0.0)) throw ParameterError("rhobeg must be positive");
  if (max_iters < 0) throw ParameterError("max_iters must be >= 1 (or 0 for default)");
  if (ftol && !(*ftol > 0.0 && *ftol <= rhobeg)) {
    throw ParameterError("ftol must lie in (0, rhobeg]");
  }
  if (restarts_ground < 1 || restarts_excited < 0) {
    throw ParameterError("restart counts must be >= 1 (ground) and >= 0 (excited)");
  }
}

int default_max_iters(int n) { return 625 * n; }

MinimizeResult minimize(const CostFunction& cost, std::span<const double> x0,
                        const OptimizerConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<Eigen::Index>(x0.size());
  if (n == 0) throw DimensionError("minimize: empty parameter vector");
  for (double v : x0) {
    if (!std::isfinite(v)) throw ParameterError("minimize: x0 is not finite");
  }
  const int budget = cfg.max_iters > 0 ? cfg.max_iters
                                       : default_max_iters(static_cast<int>(n));
  const double rho_end = cfg.ftol.value_or(kRhoFloor);

  MinimizeResult out;
  out.f_best = std::numeric_limits<double>::infinity();
  Evaluator evaluate(cost, budget, out);

  // vertices.col(0..n); values(j) = f(vertices.col(j)).
  Eigen::MatrixXd vertices(n, n + 1);
  Eigen::VectorXd values(n + 1);
  double rho = cfg.rhobeg;
  vertices.col(0) = Eigen::Map<const Eigen::VectorXd>(x0.data(), n);
  values(0) = evaluate(vertices.col(0), 0);
  for (Eigen::Index j = 1; j <= n; ++j) {
    vertices.col(j) = vertices.col(0);
    vertices(j - 1, j) += rho;
    values(j) = evaluate(vertices.col(j), 0);
  }

  int iteration = 0;
  bool last_step_failed = false;
  Eigen::MatrixXd d(n, n);
  Eigen::VectorXd df(n);
  std::vector<Eigen::Index> others(n);

  for (;;) {
    if (evaluate.exhausted()) {
      out.stop = StopReason::kMaxEvaluations;
      break;
    }

    Eigen::Index pivot = 0;
    values.minCoeff(&pivot);
    for (Eigen::Index j = 0, k = 0; j <= n; ++j) {
      if (j != pivot) others[k++] = j;
    }
    const Eigen::VectorXd xp = vertices.col(pivot);
    const double fp = values(pivot);
    for (Eigen::Index k = 0; k < n; ++k) {
      d.row(k) = (vertices.col(others[k]) - xp).transpose();
      df(k) = values(others[k]) - fp;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(d);
    const Eigen::MatrixXd dinv = lu.inverse();
    // Rows of d are edge vectors, so d * g = df gives the model gradient and
    // column k of dinv is the normal of the face opposite vertex k, scaled so
    // the vertex sits at distance 1/|col|.
    const Eigen::VectorXd g = dinv * df;

    Eigen::Index worst_eta = 0, worst_sigma = 0;
    double max_eta = 0.0, min_sigma = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < n; ++k) {
      const double eta = d.row(k).norm();
      const double cn = dinv.col(k).norm();
      const double sigma = cn > 0.0 ? 1.0 / cn : 0.0;
      if (eta > max_eta) { max_eta = eta; worst_eta = k; }
      if (sigma < min_sigma) { min_sigma = sigma; worst_sigma = k; }
    }
    const bool acceptable = std::isfinite(dinv.sum()) &&
                            max_eta <= kEtaBound * rho &&
                            min_sigma >= kSigmaBound * rho;

    if (last_step_failed && acceptable) {
      if (rho <= rho_end) {
        out.stop = cfg.ftol ? StopReason::kConverged : StopReason::kRhoFloor;
        break;
      }
      rho *= 0.5;
      if (rho <= 1.5 * rho_end) rho = rho_end;
      last_step_failed = false;
      continue;
    }

    ++iteration;
    if (last_step_failed && !acceptable) {
      // Replace the vertex that spoils the geometry with a point moved off
      // its opposite face, on the side where the model decreases.
      const Eigen::Index k = max_eta > kEtaBound * rho ? worst_eta : worst_sigma;
      Eigen::VectorXd dir = dinv.col(k);
      const double norm = dir.norm();
      if (!(norm > 0.0) || !std::isfinite(norm)) {
        dir = Eigen::VectorXd::Unit(n, k);
      } else {
        dir /= norm;
      }
      if (g.dot(dir) > 0.0) dir = -dir;
      const Eigen::VectorXd xn = xp + kGeometryStep * rho * dir;
      vertices.col(others[k]) = xn;
      values(others[k]) = evaluate(xn, iteration);
      // A geometry step never counts as a failure of the model; the next
      // iteration retries the trust-region step on the repaired simplex.
      last_step_failed = false;
      continue;
    }

    const double gnorm = g.norm();
    if (!(gnorm > 0.0) || !std::isfinite(gnorm)) {
      // Flat or broken model: shrink rho or repair geometry next time round.
      --iteration;
      last_step_failed = true;
      continue;
    }
    const Eigen::VectorXd step = -(rho / gnorm) * g;
    const Eigen::VectorXd xn = xp + step;
    const double fn = evaluate(xn, iteration);
    const double predicted = rho * gnorm;
    const double ratio = (fp - fn) / predicted;

    // Barycentric weight of the step on each edge; replacing vertex k scales
    // the simplex volume by |t_k|. Favour far vertices to keep it compact.
    const Eigen::VectorXd t = dinv.transpose() * step;
    Eigen::Index drop = 0;
    double best_score = -1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double dist = (vertices.col(others[k]) - xn).norm();
      const double far = std::max(1.0, dist / (1.1 * rho));
      const double score = std::abs(t(k)) * far * far;
      if (score > best_score) { best_score = score; drop = k; }
    }
    if (fn < fp) {
      vertices.col(others[drop]) = xn;
      values(others[drop]) = fn;
    } else if (std::abs(t(drop)) > 1e-3) {
      // Keep the information from a failed step only if the simplex stays
      // well conditioned; the pivot is untouched.
      vertices.col(others[drop]) = xn;
      values(others[drop]) = fn;
    }
    last_step_failed = ratio <= kSuccessRatio;
  }

  out.iterations = iteration;
  out.final_rho = rho;
  return out;
}

}  // namespace cpvqd
