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

#include "cpvqd/exact.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>
#include <vector>

#include "cpvqd/errors.hpp"

namespace cpvqd {
namespace {

constexpr double kLabelTolerance = 1e-6;

std::vector<double> distinct_sorted(std::vector<double> v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v) {
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  return out;
}

}  // namespace

EigenSystem eigensolve(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw DimensionError("eigensolve: matrix not square");
  if (m.rows() > (Eigen::Index{1} << kDenseQubitCap)) {
    throw CapacityError("eigensolve: matrix exceeds dense cap");
  }
  EigenSystem out;
  if (m.rows() == 0) return out;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw ContractError("eigensolve: matrix is not Hermitian");
  }
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.real());
    if (solver.info() != Eigen::Success) throw Error("eigensolve failed");
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors().cast<cplx>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) throw Error("eigensolve failed");
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
  }
  return out;
}

std::vector<LabeledLevel> labeled_spectrum(const PauliSum& h, const PauliSum& q) {
  if (h.width() != q.width()) throw DimensionError("labeled_spectrum: width mismatch");
  if (!commutator(h, q).empty()) {
    throw ContractError("labeled_spectrum: H does not commute with Q");
  }
  const Eigen::MatrixXcd hm = h.to_matrix();
  const Eigen::MatrixXcd qm = q.to_matrix();
  const EigenSystem sys = eigensolve(hm);

  std::vector<double> q_values;
  if (q.is_diagonal()) {
    const Eigen::VectorXd d = qm.diagonal().real();
    q_values.assign(d.data(), d.data() + d.size());
  } else {
    const Eigen::VectorXd e = eigensolve(qm).values;
    q_values.assign(e.data(), e.data() + e.size());
  }
  q_values = distinct_sorted(std::move(q_values), kLabelTolerance);

  const Eigen::Index dim = sys.values.size();
  const double deg_tol = 1e-8 * std::max(1.0, sys.values.cwiseAbs().maxCoeff());
  std::vector<LabeledLevel> out;
  out.reserve(dim);
  for (Eigen::Index start = 0; start < dim;) {
    Eigen::Index end = start + 1;
    while (end < dim && sys.values(end) - sys.values(end - 1) < deg_tol) ++end;
    const Eigen::MatrixXcd block = sys.vectors.middleCols(start, end - start);
    Eigen::MatrixXcd projected = block.adjoint() * qm * block;
    projected = 0.5 * (projected + projected.adjoint()).eval();
    const EigenSystem rotated = eigensolve(projected);
    // Group the rotated vectors by symmetry label, then diagonalize H inside
    // each group. The block spans an H-invariant subspace, so this recovers
    // the exact levels even when the block lumps near-degenerate energies.
    std::vector<std::pair<double, std::vector<Eigen::Index>>> groups;
    for (Eigen::Index k = 0; k < rotated.values.size(); ++k) {
      const double label = rotated.values(k);
      auto nearest = std::min_element(
          q_values.begin(), q_values.end(),
          [&](double a, double b) { return std::abs(a - label) < std::abs(b - label); });
      if (nearest == q_values.end() || std::abs(*nearest - label) > kLabelTolerance) {
        throw DegeneracyError("eigenvector label " + std::to_string(label) +
                              " is not a symmetry eigenvalue");
      }
      auto g = std::find_if(groups.begin(), groups.end(),
                            [&](const auto& e) { return e.first == *nearest; });
      if (g == groups.end()) {
        groups.push_back({*nearest, {}});
        g = std::prev(groups.end());
      }
      g->second.push_back(k);
    }
    for (const auto& [label, cols] : groups) {
      Eigen::MatrixXcd w(block.rows(), static_cast<Eigen::Index>(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c) {
        w.col(static_cast<Eigen::Index>(c)) = block * rotated.vectors.col(cols[c]);
      }
      Eigen::MatrixXcd sub = w.adjoint() * hm * w;
      sub = 0.5 * (sub + sub.adjoint()).eval();
      const Eigen::VectorXd e = eigensolve(sub).values;
      for (Eigen::Index i = 0; i < e.size(); ++i) out.push_back({e(i), label});
    }
    start = end;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const LabeledLevel& a, const LabeledLevel& b) {
                     return a.energy < b.energy;
                   });
  return out;
}

std::vector<double> sector_energies(const std::vector<LabeledLevel>& levels,
                                    double charge) {
  std::vector<double> out;
  for (const auto& l : levels) {
    if (std::abs(l.charge - charge) < kLabelTolerance) out.push_back(l.energy);
  }
  return out;
}

}  // namespace cpvqd
