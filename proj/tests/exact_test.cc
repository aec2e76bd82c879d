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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "cpvqd/errors.hpp"
#include "cpvqd/fermion.hpp"
#include "cpvqd/lattice.hpp"
#include "cpvqd/symmetry.hpp"
#include "test_util.hpp"

using namespace cpvqd;
using cpvqd::testutil::dense_sum;
using cpvqd::testutil::random_charge_conserving;

TEST(Eigensolve, DiagonalIsSorted) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(0, 0) = 3.0;
  m(1, 1) = 1.0;
  m(2, 2) = 2.0;
  const EigenSystem s = eigensolve(m);
  ASSERT_EQ(s.values.size(), 3);
  EXPECT_NEAR(s.values(0), 1.0, 1e-14);
  EXPECT_NEAR(s.values(1), 2.0, 1e-14);
  EXPECT_NEAR(s.values(2), 3.0, 1e-14);
}

TEST(Eigensolve, PauliX) {
  const EigenSystem s = eigensolve(PauliSum::from_string("X").to_matrix());
  EXPECT_NEAR(s.values(0), -1.0, 1e-14);
  EXPECT_NEAR(s.values(1), 1.0, 1e-14);
  // ground vector is (|0> - |1>)/sqrt2 up to phase
  EXPECT_NEAR(std::abs(s.vectors(0, 0) + s.vectors(1, 0)), 0.0, 1e-12);
}

TEST(Eigensolve, RejectsNonHermitian) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(eigensolve(m), ContractError);
}

TEST(Eigensolve, ReconstructsRandomHermitian) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const PauliSum h = cpvqd::testutil::random_sum(rng, 4, 12, true);
    const Eigen::MatrixXcd m = h.to_matrix();
    const EigenSystem s = eigensolve(m);
    const Eigen::MatrixXcd v = s.vectors;
    EXPECT_LT((v.adjoint() * v - Eigen::MatrixXcd::Identity(16, 16)).norm(), 1e-10);
    const Eigen::MatrixXcd back = v * s.values.cast<cplx>().asDiagonal() * v.adjoint();
    EXPECT_LT((back - m).norm(), 1e-10);
    for (Eigen::Index i = 1; i < s.values.size(); ++i) EXPECT_LE(s.values(i - 1), s.values(i));
  }
}

TEST(MassTerm, SpectrumIsBinomialLadder) {
  for (int n = 2; n <= 10; ++n) {
    const double m = 1.7;
    const EigenSystem s = eigensolve(mass_term_hamiltonian(n, m).to_matrix());
    std::vector<double> expected;
    for (int flips = 0; flips <= n; ++flips) {
      for (std::uint64_t c = 0; c < binomial(n, flips); ++c) {
        expected.push_back(mass_term_excited_energy(n, m, flips));
      }
    }
    std::sort(expected.begin(), expected.end());
    ASSERT_EQ(static_cast<std::size_t>(s.values.size()), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      EXPECT_NEAR(s.values(static_cast<Eigen::Index>(i)), expected[i], 1e-12) << "N=" << n;
    }
  }
}

TEST(LabeledSpectrum, MassTermFirstExcitedCarriesUnitCharge) {
  const int n = 4;
  const auto levels = labeled_spectrum(mass_term_hamiltonian(n, 1.0), z_charge_operator(n));
  ASSERT_EQ(levels.size(), 16u);
  EXPECT_NEAR(levels[0].charge, 0.0, 1e-9);
  int plus = 0, minus = 0;
  for (int i = 1; i <= n; ++i) {
    EXPECT_NEAR(levels[i].energy, mass_term_excited_energy(n, 1.0, 1), 1e-12);
    EXPECT_NEAR(std::abs(levels[i].charge), 1.0, 1e-9);
    (levels[i].charge > 0 ? plus : minus)++;
  }
  EXPECT_EQ(plus, n / 2);
  EXPECT_EQ(minus, n / 2);
  // the second excitation band contains charge-0 states
  EXPECT_NEAR(levels[n + 1].energy, mass_term_excited_energy(n, 1.0, 2), 1e-12);
}

TEST(LabeledSpectrum, ChargeOperatorLabelsItsOwnSpectrum) {
  const PauliSum q = z_charge_operator(2);
  const auto levels = labeled_spectrum(q, q);
  std::vector<double> charges;
  for (const auto& l : levels) {
    EXPECT_NEAR(l.energy, l.charge, 1e-12);
    charges.push_back(l.charge);
  }
  EXPECT_EQ(charges, (std::vector<double>{-1.0, 0.0, 0.0, 1.0}));
}

TEST(LabeledSpectrum, DegenerateBlocksAreSplitByCharge) {
  // Identity is maximally degenerate; labels must still be the Q spectrum.
  const auto levels = labeled_spectrum(PauliSum::identity(3), z_charge_operator(3));
  std::map<double, int> counts;
  for (const auto& l : levels) counts[l.charge]++;
  EXPECT_EQ(counts[-1.5], 1);
  EXPECT_EQ(counts[-0.5], 3);
  EXPECT_EQ(counts[0.5], 3);
  EXPECT_EQ(counts[1.5], 1);
}

TEST(LabeledSpectrum, MatchesSectorProjectionForSchwinger) {
  for (int n : {4, 6}) {
    LatticeParams p;
    p.n_sites = n;
    p.mass = 0.5;
    const PauliSum h = schwinger_hamiltonian(p);
    const auto levels = labeled_spectrum(h, z_charge_operator(n));
    for (int twice = -n; twice <= n; twice += 2) {
      const Charge q = Charge::from_twice(twice);
      const auto red = project_hamiltonian(h, enumerate_charge_sector(n, q));
      const Eigen::VectorXd e = eigensolve(red.matrix).values;
      const auto labeled = sector_energies(levels, q.value());
      ASSERT_EQ(static_cast<Eigen::Index>(labeled.size()), e.size());
      for (Eigen::Index i = 0; i < e.size(); ++i) EXPECT_NEAR(labeled[i], e(i), 1e-10);
    }
  }
}

TEST(LabeledSpectrum, SectorMultiplicities) {
  std::mt19937_64 rng(8);
  const int n = 6;
  const PauliSum h = random_charge_conserving(rng, n, 15);
  const auto levels = labeled_spectrum(h, z_charge_operator(n));
  for (int twice = -n; twice <= n; twice += 2) {
    const Charge q = Charge::from_twice(twice);
    EXPECT_EQ(sector_energies(levels, q.value()).size(), sector_dimension(n, q));
  }
}

TEST(LabeledSpectrum, RejectsNonCommutingSymmetry) {
  EXPECT_THROW(labeled_spectrum(PauliSum::from_string("XI"), z_charge_operator(2)), ContractError);
  EXPECT_THROW(labeled_spectrum(PauliSum::from_string("X"), z_charge_operator(2)), DimensionError);
}
