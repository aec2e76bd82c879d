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

#include "cpvqd/fermion.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cpvqd/errors.hpp"
#include "cpvqd/exact.hpp"
#include "cpvqd/statevector.hpp"
#include "test_util.hpp"

using namespace cpvqd;

namespace {

std::string fixture(const std::string& name) { return std::string(CPVQD_FIXTURE_DIR) + "/" + name; }

MolecularIntegrals parse(const std::string& text) {
  std::istringstream in(text);
  return parse_fcidump(in);
}

PauliSum molecule(const std::string& file) {
  const MolecularIntegrals m = load_fcidump(fixture(file));
  return jordan_wigner(build_electronic_hamiltonian(m), m.n_modes);
}

double eigenvalue_of(const PauliSum& h, std::uint64_t basis_index) {
  const Statevector s = Statevector::basis_state(h.width(), basis_index);
  return expectation_pauli(s, h);
}

}  // namespace

TEST(Fcidump, CoreEnergyOnly) {
  const auto m = parse(" &FCI NORB=2,NELEC=2,MS2=0,\n &END\n 0.75 0 0 0 0\n");
  EXPECT_EQ(m.n_modes, 4);
  EXPECT_EQ(m.n_electrons, 2);
  EXPECT_DOUBLE_EQ(m.core_energy, 0.75);
  EXPECT_TRUE(std::all_of(m.one_body.begin(), m.one_body.end(), [](double v) { return v == 0.0; }));
  EXPECT_TRUE(std::all_of(m.two_body.begin(), m.two_body.end(), [](double v) { return v == 0.0; }));
}

TEST(Fcidump, SlashTerminatorAndFortranExponent) {
  const auto m = parse("&FCI NORB=1, NELEC=1,\n/\n -0.5D+00 1 1 0 0\n");
  EXPECT_EQ(m.n_modes, 2);
  EXPECT_DOUBLE_EQ(m.h1(0, 0), -0.5);
  EXPECT_DOUBLE_EQ(m.h1(1, 1), -0.5);
  EXPECT_DOUBLE_EQ(m.h1(0, 1), 0.0);
}

TEST(Fcidump, ChemistToPhysicistWithSpin) {
  // Only the exchange integral (12|21) is present; h_ijkl = (il|jk) with
  // spin(i) = spin(l) and spin(j) = spin(k).
  const auto m = parse("&FCI NORB=2,NELEC=2\n&END\n 0.25 1 2 2 1\n");
  EXPECT_DOUBLE_EQ(m.h2(0, 2, 0, 2), 0.25);  // all spin up
  EXPECT_DOUBLE_EQ(m.h2(0, 3, 1, 2), 0.25);  // opposite spins
  EXPECT_DOUBLE_EQ(m.h2(2, 0, 2, 0), 0.25);  // (21|12) by symmetry
  EXPECT_DOUBLE_EQ(m.h2(0, 2, 2, 0), 0.0);   // (11|22) absent
  EXPECT_DOUBLE_EQ(m.h2(0, 3, 0, 3), 0.0);   // spin of i and l differ
}

TEST(Fcidump, MissingHeaderIsFormatError) {
  EXPECT_THROW(parse(" 0.5 1 1 1 1\n"), FormatError);
  EXPECT_THROW(parse("&FCI NELEC=2\n&END\n"), FormatError);
}

TEST(Fcidump, MalformedRecordCarriesLineNumber) {
  try {
    parse("&FCI NORB=2\n&END\n 0.5 1 1 1 1\n 0.3 1 1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_THROW(parse("&FCI NORB=2\n&END\n abc 1 1 1 1\n"), ParseError);
  EXPECT_THROW(parse("&FCI NORB=2\n&END\n 0.1 3 1 1 1\n"), ParseError);
}

TEST(Fcidump, MissingFileIsIoError) {
  EXPECT_THROW(load_fcidump("/nonexistent/h2.fcidump"), IoError);
}

TEST(Fcidump, H2FixtureHasFourModes) {
  const auto m = load_fcidump(fixture("h2_0.7414.fcidump"));
  EXPECT_EQ(m.n_modes, 4);
  EXPECT_EQ(m.n_electrons, 2);
  EXPECT_NO_THROW(m.validate());
}

TEST(MolecularIntegrals, JsonRoundTrip) {
  const auto m = load_fcidump(fixture("hehp_1.0.fcidump"));
  const auto back = MolecularIntegrals::from_json(nlohmann::json::parse(m.to_json().dump()));
  EXPECT_EQ(back, m);
}

TEST(ElectronicHamiltonian, ZeroIntegralsGiveCoreIdentity) {
  MolecularIntegrals m(2);
  m.core_energy = 1.5;
  const PauliSum h = jordan_wigner(build_electronic_hamiltonian(m), 2);
  EXPECT_EQ(h, PauliSum::identity(2, 1.5));
}

TEST(ElectronicHamiltonian, SingleOrbitalEnergy) {
  MolecularIntegrals m(2);
  m.h1(0, 0) = 0.7;
  const FermionOperator f = build_electronic_hamiltonian(m);
  ASSERT_EQ(f.terms().size(), 1u);
  EXPECT_EQ(f.terms()[0].coeff, cplx(0.7));
  const std::vector<LadderFactor> expect{{0, true}, {0, false}};
  EXPECT_EQ(f.terms()[0].factors, expect);
}

TEST(JordanWigner, NumberOperatorOnOneQubit) {
  const PauliSum n = jordan_wigner(
      FermionOperator::creation(1, 0) * FermionOperator::annihilation(1, 0), 1);
  const PauliSum expect = PauliSum::identity(1, 0.5) + PauliSum::single(1, 0, 'Z', -0.5);
  EXPECT_EQ(n, expect);
}

TEST(JordanWigner, CanonicalAnticommutation) {
  constexpr int kModes = 4;
  for (int i = 0; i < kModes; ++i) {
    for (int j = 0; j < kModes; ++j) {
      const PauliSum ai = jordan_wigner(FermionOperator::annihilation(kModes, i), kModes);
      const PauliSum aj = jordan_wigner(FermionOperator::annihilation(kModes, j), kModes);
      const PauliSum cj = jordan_wigner(FermionOperator::creation(kModes, j), kModes);
      EXPECT_TRUE(anticommutator(ai, aj).empty()) << i << "," << j;
      const PauliSum expect = i == j ? PauliSum::identity(kModes) : PauliSum(kModes);
      EXPECT_EQ(anticommutator(ai, cj), expect) << i << "," << j;
    }
  }
}

TEST(JordanWigner, RejectsTooFewQubits) {
  EXPECT_THROW(jordan_wigner(FermionOperator::annihilation(3, 2), 2), DimensionError);
  FermionOperator f(2);
  EXPECT_THROW(f.add_term(1.0, {{2, true}}), DimensionError);
}

TEST(JordanWigner, H2SpectrumMatchesDenseReference) {
  const PauliSum h = molecule("h2_0.7414.fcidump");
  EXPECT_TRUE(h.is_hermitian(0.0));
  const Eigen::VectorXd ours = eigensolve(h.to_matrix()).values;
  const Eigen::VectorXd ref =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(testutil::dense_sum(h)).eigenvalues();
  EXPECT_LT((ours - ref).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(JordanWigner, MolecularHamiltoniansConserveCharge) {
  for (const char* file : {"h2_0.7414.fcidump", "h2_2.0.fcidump", "hehp_1.0.fcidump"}) {
    const PauliSum h = molecule(file);
    EXPECT_TRUE(commutator(h, z_charge_operator(4)).empty()) << file;
  }
}

// Sector spectra against FCI eigenvalues frozen from an independent
// electronic-structure code when the fixtures were generated.
TEST(JordanWigner, SectorSpectraMatchFrozenFci) {
  std::ifstream in(fixture("fci_reference.json"));
  ASSERT_TRUE(in.good());
  const auto ref = nlohmann::json::parse(in);
  for (const auto& [file, entry] : ref.items()) {
    const PauliSum h = molecule(file);
    const int electrons = entry.at("electrons");
    const double q = 2.0 - electrons;
    const auto levels = labeled_spectrum(h, z_charge_operator(4));
    const auto ours = sector_energies(levels, q);
    const auto expect = entry.at("levels").get<std::vector<double>>();
    ASSERT_EQ(ours.size(), expect.size()) << file;
    for (std::size_t i = 0; i < ours.size(); ++i) EXPECT_NEAR(ours[i], expect[i], 1e-9) << file;
  }
}

TEST(ChargeOperators, Eigenvalues) {
  EXPECT_DOUBLE_EQ(eigenvalue_of(z_charge_operator(2), 0b00), 1.0);
  EXPECT_DOUBLE_EQ(eigenvalue_of(z_charge_operator(4), 0b1010), 0.0);
  EXPECT_DOUBLE_EQ(eigenvalue_of(number_operator(4), 0b1111), 4.0);
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(z_charge_operator(n), PauliSum::identity(n, n / 2.0) - number_operator(n));
  }
  for (std::uint64_t b = 0; b < 64; ++b) {
    EXPECT_DOUBLE_EQ(eigenvalue_of(z_charge_operator(6), b), 3.0 - std::popcount(b));
  }
}
