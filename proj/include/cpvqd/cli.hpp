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

#include <iosfwd>
#include <optional>
#include <string>

#include "cpvqd/pauli.hpp"
#include "cpvqd/symmetry.hpp"

namespace cpvqd {

/// Model selection as accepted on the command line.
struct ModelOptions {
  std::string model = "schwinger";
  int n = 4;
  double m = 0.0;
  double g = 1.0;
  double a = 1.0;
  std::string boundary = "open";
  std::string fcidump;
  std::string bond;
};

struct BuiltModel {
  std::string name;
  PauliSum h;
  int n_qubits = 0;
  /// Sector used when no charge is requested explicitly.
  Charge default_charge;
};

/// CPVQD_FIXTURES if set, otherwise the directory compiled into the binary.
std::string fixture_directory();

/// Resolves an integral file path: as given if it exists, otherwise inside
/// the fixture directory. Throws IoError when neither exists.
std::string resolve_fixture(const std::string& name);

BuiltModel build_model(const ModelOptions& opts);

/// Entry point of the cpvqd executable. Exit codes: 0 success, 1 a VQD
/// state failed to converge, 2 usage error, 3 I/O error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cpvqd
