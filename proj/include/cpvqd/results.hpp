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
#include <vector>

#include "json.hpp"

#include "cpvqd/vqd.hpp"

namespace cpvqd {

using json = nlohmann::json;

/// One CSV row; a spectrum level or one VQD state.
struct CsvRow {
  std::string model;
  std::string mode;
  int n_qubits = 0;
  std::optional<double> charge;
  int state = 0;
  double energy = 0.0;
  bool converged = true;
  double qc_seconds = 0.0;
  double cc_seconds = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr const char* kCsvHeader =
    "model,mode,n_qubits,charge,state,energy,converged,qc_seconds,cc_seconds,seed";

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

std::string csv_line(const CsvRow& row);
void write_csv(std::ostream& os, const std::vector<CsvRow>& rows);
std::vector<CsvRow> csv_rows(const VQDResult& r, const std::string& model);

json result_to_json(const VQDResult& r, const std::string& model);

/// Per-state timings read back from a result record.
struct TimingRecord {
  std::string label;
  std::vector<double> qc_seconds;
  std::vector<double> cc_seconds;
};

/// Throws FormatError when the timing arrays are missing or inconsistent.
TimingRecord timing_from_json(const json& j);

struct TimingColumn {
  std::string label;
  std::optional<double> qc;
  std::optional<double> cc;

  std::optional<double> total() const;
  std::optional<double> qc_percent() const;
  std::optional<double> cc_percent() const;
};

/// Ground state in the GS column; every excited state summed into ES.
std::vector<TimingColumn> timing_columns(const std::vector<TimingRecord>& records);
std::string format_timing_table(const std::vector<TimingColumn>& columns);

/// Writes through a sibling temporary file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace cpvqd
