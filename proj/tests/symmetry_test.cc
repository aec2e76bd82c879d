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

#include "cpvqd/symmetry.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>

#include "cpvqd/errors.hpp"
#include "cpvqd/exact.hpp"
#include "cpvqd/fermion.hpp"
#include "cpvqd/lattice.hpp"
#include "test_util.hpp"

using namespace cpvqd;

namespace {

std::vector<std::uint64_t> indices(const SectorBasis& b) {
  std::vector<std::uint64_t> out;
  for (const auto& e : b.elements) out.push_back(e.index);
  return out;
}

// Brute-force count of reflection classes among the charge-0 states.
std::pair<std::uint64_t, std::uint64_t> brute_parity_dims(int n) {
  std::uint64_t even = 0, odd = 0;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
    if (std::popcount(b) != n / 2) continue;
    const std::uint64_t r = reverse_bits(b, n);
    if (r == b) {
      ++even;
    } else if (b < r) {
      ++even;
      ++odd;
    }
  }
  return {even, odd};
}

LatticeParams schwinger(int n, double m) {
  LatticeParams p;
  p.n_sites = n;
  p.mass = m;
  return p;
}

}  // namespace

TEST(Charge, Values) {
  EXPECT_EQ(Charge::from_value(1.5).twice(), 3);
  EXPECT_DOUBLE_EQ(Charge::from_twice(-1).value(), -0.5);
  EXPECT_THROW(Charge::from_value(0.25), DomainError);
}

TEST(SectorDimension, Examples) {
  EXPECT_EQ(sector_dimension(4, Charge{}), 6u);
  EXPECT_EQ(sector_dimension(4, Charge::from_value(1)), 4u);
  for (int n = 1; n <= 12; ++n) {
    EXPECT_EQ(sector_dimension(n, Charge::from_twice(n)), 1u);
    EXPECT_EQ(sector_dimension(n, Charge::from_twice(-n)), 1u);
  }
  EXPECT_THROW(sector_dimension(4, Charge::from_value(3)), DomainError);
  EXPECT_THROW(sector_dimension(4, Charge::from_value(0.5)), DomainError);
}

TEST(SectorDimension, SectorsPartitionTheHilbertSpace) {
  for (int n = 1; n <= 20; ++n) {
    std::uint64_t total = 0;
    for (int twice = -n; twice <= n; twice += 2) total += sector_dimension(n, Charge::from_twice(twice));
    EXPECT_EQ(total, std::uint64_t{1} << n);
  }
}

TEST(SectorDimension, MatchesBruteForceEnumeration) {
  for (int n = 1; n <= 16; ++n) {
    std::vector<std::uint64_t> counts(n + 1, 0);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) ++counts[std::popcount(b)];
    for (int ones = 0; ones <= n; ++ones) {
      EXPECT_EQ(sector_dimension(n, Charge::from_twice(n - 2 * ones)), counts[ones]);
    }
  }
}

TEST(ChargeParityDimension, BranchesAndBruteForce) {
  EXPECT_EQ(charge_parity_dimension(4), 4u);
  EXPECT_EQ(charge_parity_dimension(6), 10u);
  EXPECT_EQ(charge_parity_dimension(8), 38u);
  EXPECT_THROW(charge_parity_dimension(5), DomainError);
  for (int n = 2; n <= 12; n += 2) {
    const auto [even, odd] = brute_parity_dims(n);
    EXPECT_EQ(charge_parity_dimension(n), even) << n;
    EXPECT_EQ(even + odd, binomial(n, n / 2));
  }
}

TEST(ReducedQubitCount, Examples) {
  EXPECT_EQ(reduced_qubit_count(6), 3);
  EXPECT_EQ(reduced_qubit_count(4), 2);
  EXPECT_EQ(reduced_qubit_count(1), 1);
  EXPECT_EQ(reduced_qubit_count(2), 1);
  EXPECT_EQ(reduced_qubit_count(5), 3);
  EXPECT_EQ(reduced_qubit_count(70), 7);
  EXPECT_THROW(reduced_qubit_count(0), DomainError);
}

TEST(ParityReduction, GrowsWithN) {
  double prev = -1.0;
  for (int n = 4; n <= 24; n += 2) {
    const double saved = parity_reduction_qubits(n);
    EXPECT_GT(saved, prev);
    prev = saved;
  }
}

TEST(EnumerateChargeSector, Examples) {
  EXPECT_EQ(indices(enumerate_charge_sector(4, Charge{})),
            (std::vector<std::uint64_t>{3, 5, 6, 9, 10, 12}));
  EXPECT_EQ(indices(enumerate_charge_sector(4, Charge::from_value(1))),
            (std::vector<std::uint64_t>{1, 2, 4, 8}));
  EXPECT_EQ(indices(enumerate_charge_sector(2, Charge::from_value(-1))),
            (std::vector<std::uint64_t>{3}));
  for (int n = 1; n <= 10; ++n) {
    for (int twice = -n; twice <= n; twice += 2) {
      const auto b = enumerate_charge_sector(n, Charge::from_twice(twice));
      EXPECT_EQ(b.dim(), sector_dimension(n, Charge::from_twice(twice)));
      const auto idx = indices(b);
      EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
      for (auto i : idx) EXPECT_EQ(std::popcount(i), (n - twice) / 2);
    }
  }
}

TEST(EnumerateChargeParitySector, FourSites) {
  const auto b = enumerate_charge_parity_sector(4, +1);
  ASSERT_EQ(b.dim(), 4u);
  std::set<std::uint64_t> singles;
  std::set<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (const auto& e : b.elements) {
    if (e.partner) {
      pairs.insert({e.index, *e.partner});
      EXPECT_LT(e.index, *e.partner);
    } else {
      singles.insert(e.index);
    }
  }
  EXPECT_EQ(singles, (std::set<std::uint64_t>{0b0110, 0b1001}));
  EXPECT_EQ(pairs, (std::set<std::pair<std::uint64_t, std::uint64_t>>{{0b0011, 0b1100},
                                                                       {0b0101, 0b1010}}));
}

TEST(EnumerateChargeParitySector, SmallAndSingletonFree) {
  const auto two = enumerate_charge_parity_sector(2, +1);
  ASSERT_EQ(two.dim(), 1u);
  EXPECT_EQ(two.elements[0].index, 0b01u);
  EXPECT_EQ(*two.elements[0].partner, 0b10u);
  const auto six = enumerate_charge_parity_sector(6, +1);
  EXPECT_EQ(six.dim(), 10u);
  EXPECT_TRUE(std::all_of(six.elements.begin(), six.elements.end(),
                          [](const BasisElement& e) { return e.partner.has_value(); }));
  EXPECT_THROW(enumerate_charge_parity_sector(5, +1), DomainError);
  const auto odd = enumerate_charge_parity_sector(4, -1);
  EXPECT_EQ(odd.dim(), 2u);
}

TEST(ProjectHamiltonian, ChargeOperatorProjectsToZero) {
  const auto r = project_hamiltonian(z_charge_operator(4), enumerate_charge_sector(4, Charge{}));
  EXPECT_EQ(r.matrix.rows(), 6);
  EXPECT_EQ(r.matrix.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(r.n_star, 3);
}

TEST(ProjectHamiltonian, RejectsChargeViolation) {
  EXPECT_THROW(project_hamiltonian(PauliSum::single(4, 0, 'X'), enumerate_charge_sector(4, Charge{})),
               SectorLeakError);
  EXPECT_THROW(project_hamiltonian(PauliSum::single(3, 0, 'Z'), enumerate_charge_sector(4, Charge{})),
               DimensionError);
}

TEST(ProjectHamiltonian, ParityLeakDetected) {
  // Charge conserving but not reflection symmetric.
  const PauliSum h = PauliSum::single(4, 0, 'Z');
  EXPECT_THROW(project_hamiltonian(h, enumerate_charge_parity_sector(4, +1)), SectorLeakError);
}

TEST(ProjectHamiltonian, SchwingerMatchesLabeledFullSpectrum) {
  const PauliSum h = schwinger_hamiltonian(schwinger(4, 1.0));
  const auto r = project_hamiltonian(h, enumerate_charge_sector(4, Charge{}));
  const Eigen::VectorXd reduced = eigensolve(r.matrix).values;
  const auto full = sector_energies(labeled_spectrum(h, z_charge_operator(4)), 0.0);
  ASSERT_EQ(static_cast<std::size_t>(reduced.size()), full.size());
  for (std::size_t i = 0; i < full.size(); ++i) EXPECT_NEAR(reduced(i), full[i], 1e-10);
  EXPECT_GT(r.pad_value, reduced.maxCoeff());
}

TEST(ProjectHamiltonian, RandomChargeConservingSums) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 4;
    const PauliSum h = testutil::random_charge_conserving(rng, n, 12);
    ASSERT_TRUE(commutator(h, z_charge_operator(n)).empty());
    const Eigen::VectorXd full = eigensolve(testutil::dense_sum(h)).values;
    for (int twice = -n; twice <= n; twice += 2) {
      const auto r = project_hamiltonian(h, enumerate_charge_sector(n, Charge::from_twice(twice)));
      const Eigen::VectorXd part = eigensolve(r.matrix).values;
      for (Eigen::Index i = 0; i < part.size(); ++i) {
        EXPECT_LT((full.array() - part(i)).abs().minCoeff(), 1e-10);
      }
    }
  }
}

TEST(ProjectHamiltonian, ParitySectorsSplitChargeZero) {
  // Reflection about the chain centre maps site n to N + 1 - n and flips
  // the staggering for even N, so it is a symmetry of the mass-free
  // hopping chain only; use that.
  LatticeParams p = schwinger(4, 0.0);
  p.coupling = 0.0;
  const PauliSum h = schwinger_hamiltonian(p);
  const auto even = project_hamiltonian(h, enumerate_charge_parity_sector(4, +1));
  const auto odd = project_hamiltonian(h, enumerate_charge_parity_sector(4, -1));
  std::vector<double> merged;
  for (auto v : eigensolve(even.matrix).values) merged.push_back(v);
  for (auto v : eigensolve(odd.matrix).values) merged.push_back(v);
  std::sort(merged.begin(), merged.end());
  const Eigen::VectorXd full =
      eigensolve(project_hamiltonian(h, enumerate_charge_sector(4, Charge{})).matrix).values;
  ASSERT_EQ(merged.size(), 6u);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(merged[i], full(i), 1e-12);
}

TEST(EmbedReduced, Padding) {
  const PauliSum h = schwinger_hamiltonian(schwinger(4, 1.0));
  const auto r6 = project_hamiltonian(h, enumerate_charge_sector(4, Charge{}));
  const Eigen::MatrixXcd e6 = embed_reduced(r6);
  ASSERT_EQ(e6.rows(), 8);
  EXPECT_EQ(e6(6, 6), cplx(r6.pad_value));
  EXPECT_EQ(e6(7, 7), cplx(r6.pad_value));
  EXPECT_EQ(e6.block(0, 6, 6, 2).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((e6.topLeftCorner(6, 6) - r6.matrix).cwiseAbs().maxCoeff(), 0.0);

  const auto r4 = project_hamiltonian(h, enumerate_charge_sector(4, Charge::from_value(1)));
  EXPECT_EQ(embed_reduced(r4).rows(), 4);

  const auto r1 = project_hamiltonian(h, enumerate_charge_sector(4, Charge::from_value(2)));
  const Eigen::MatrixXcd e1 = embed_reduced(r1);
  ASSERT_EQ(e1.rows(), 2);
  EXPECT_EQ(e1(1, 1), cplx(r1.pad_value));
  EXPECT_NEAR(e1(0, 0).real(), expectation_pauli(Statevector::basis_state(4, 0), h), 1e-12);
}

TEST(EmbedReduced, PadValueRule) {
  const PauliSum h = schwinger_hamiltonian(schwinger(4, 2.0));
  const auto r = project_hamiltonian(h, enumerate_charge_sector(4, Charge{}));
  EXPECT_DOUBLE_EQ(r.pad_value, r.matrix.diagonal().real().maxCoeff() + 10.0 * h.one_norm());
}

TEST(LiftToFull, RoundTripsParityElements) {
  const auto b = enumerate_charge_parity_sector(4, -1);
  std::vector<cplx> reduced(b.dim(), 0.0);
  reduced[0] = 1.0;
  const Statevector s = lift_to_full(b, reduced);
  EXPECT_NEAR(s.norm(), 1.0, 1e-15);
  const auto& e = b.elements[0];
  EXPECT_NEAR(std::abs(s[e.index]), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR((s[e.index] + s[*e.partner]).real(), 0.0, 1e-15);
}

TEST(PenaltyHamiltonian, Examples) {
  const PauliSum z0 = PauliSum::single(1, 0, 'Z');
  const PauliSum pen = penalty_hamiltonian(PauliSum(1), z0, 1.0, 1.0);
  EXPECT_EQ(pen, PauliSum::identity(1, 2.0) - 2.0 * z0);  // (I - Z)^2 = 2(I - Z)
  EXPECT_DOUBLE_EQ(expectation_pauli(Statevector::basis_state(1, 1), pen), 4.0);

  const PauliSum h = dirac_pbc_hamiltonian([] {
    LatticeParams p;
    p.boundary = Boundary::kPeriodic;
    p.mass = 0.5;
    return p;
  }());
  const PauliSum parity = z2_parity_operator(4);
  const PauliSum a = penalty_hamiltonian(h, parity, 1.0, 0.7);
  EXPECT_EQ(a, (h + 1.4 * (PauliSum::identity(4) - parity)).simplify());

  EXPECT_THROW(penalty_hamiltonian(h, parity, 1.0, 0.0), ParameterError);
  EXPECT_THROW(penalty_hamiltonian(h, parity, 1.0, -2.0), ParameterError);
  EXPECT_THROW(penalty_hamiltonian(h, PauliSum::identity(4, cplx(0, 1)), 1.0, 1.0), ContractError);
}

TEST(PenaltyHamiltonian, LowSpectrumIsSectorSpectrum) {
  for (int n : {4, 6, 8}) {
    const PauliSum h = schwinger_hamiltonian(schwinger(n, 0.5));
    const double alpha = default_penalty_weight(h);
    EXPECT_DOUBLE_EQ(alpha, 2.0 * h.one_norm());
    const Eigen::VectorXd pen =
        eigensolve(penalty_hamiltonian(h, z_charge_operator(n), 0.0, alpha).to_matrix()).values;
    const Eigen::VectorXd sec =
        eigensolve(project_hamiltonian(h, enumerate_charge_sector(n, Charge{})).matrix).values;
    for (Eigen::Index i = 0; i < sec.size(); ++i) EXPECT_NEAR(pen(i), sec(i), 1e-8) << n;
  }
}
