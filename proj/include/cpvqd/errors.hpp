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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cpvqd {

/// Root of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand widths or vector lengths disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A dense representation was requested beyond the configured qubit cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

/// Malformed record in an integral file; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Lattice model constructed with invalid parameters (e.g. odd site count).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Hamiltonian does not preserve the requested symmetry sector.
class SectorLeakError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition (e.g. non-Hermitian observable).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Degenerate eigenspace could not be resolved into symmetry eigenvectors.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// The cost function produced a non-finite value.
class OptimizationAbort : public Error {
 public:
  using Error::Error;
};

}  // namespace cpvqd
