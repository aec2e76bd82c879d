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

#include <vector>

#include "cpvqd/pauli.hpp"

namespace cpvqd {

struct EigenSystem {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // column i pairs with values(i)
};

/// Dense Hermitian eigensolver. Throws ContractError when M deviates from
/// Hermitian by more than 1e-10 (relative to its largest entry) and
/// CapacityError above 2^kDenseQubitCap rows.
EigenSystem eigensolve(const Eigen::MatrixXcd& m);

struct LabeledLevel {
  double energy;
  double charge;
};

/// Full spectrum of H with each eigenvector labelled by its Q eigenvalue.
/// Degenerate blocks are rotated to diagonalize Q before labelling; throws
/// DegeneracyError if a label sits further than 1e-6 from Q's spectrum.
std::vector<LabeledLevel> labeled_spectrum(const PauliSum& h, const PauliSum& q);

/// Energies of the levels whose label equals `charge` (within 1e-6).
std::vector<double> sector_energies(const std::vector<LabeledLevel>& levels,
                                    double charge);

}  // namespace cpvqd
